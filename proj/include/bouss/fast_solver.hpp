#pragma once

/// @file fast_solver.hpp
/// Direct solution of the per-step linear systems by eigen-transform along the
/// uniform y-direction and LDL^T tridiagonal solves along x.
///
/// Each node family diagonalizes in y with its own trigonometric basis:
///   u            sin((j+1/2)(m+1)pi/M)   ghost-reflected rows
///   v, theta     sin((j+1)(m+1)pi/M)     Dirichlet node rows
///   theta_walls  cos(j m pi/M)           zero-flux wall rows
///   pressure     cos((j+1/2) m pi/M)     no-flux faces, null mode m=0
/// The transforms run through a vectorized mixed-radix (2,3,4,5) FFT across
/// grid columns when the length factors allow it, and through a precomputed
/// dense basis multiply otherwise. Both paths produce identical results to
/// roundoff.

#include <memory>
#include <vector>

#include "bouss/field.hpp"

namespace bouss {

/// Crank-Nicolson Helmholtz coefficients c in (I + c*A)x = rhs.
struct HelmholtzShift {
    double c = 0.0;

    static HelmholtzShift velocity(double dt, double Ra, double Pr);
    static HelmholtzShift temperature(double dt, double Ra, double Pr);
};

/// Precomputed transform + factored per-mode tridiagonals for one operator.
class SolverPlan {
public:
    /// (I + c*A_family) solver for u, v(theta) or theta_walls fields.
    static SolverPlan helmholtz(const StaggeredGrid& grid, Family family, HelmholtzShift shift);

    /// Pure-operator solver for the pressure system A_p = -(D1 G1 + D2 G2),
    /// positive semidefinite with the constant null mode recorded.
    static SolverPlan pressure(const StaggeredGrid& grid);

    /// Pure-operator solver for -Laplace with Dirichlet corners (streamfunction).
    static SolverPlan poisson_corner(const StaggeredGrid& grid);

    /// Solves the planned system; rhs must carry boundary contributions already.
    ScalarField solve(const ScalarField& rhs) const;

    /// y-eigenbasis coefficients of a field (modes as rows, columns preserved).
    ScalarField forward(const ScalarField& f) const;
    /// Reassembles a field from coefficients; inverse of forward to roundoff.
    ScalarField inverse(const ScalarField& coef) const;

    const std::vector<double>& eigenvalues() const;
    Family family() const;
    bool has_null_mode() const;
    bool uses_fft() const;

    SolverPlan(SolverPlan&&) noexcept;
    SolverPlan& operator=(SolverPlan&&) noexcept;
    ~SolverPlan();

private:
    SolverPlan();
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// (I + c*A)x = rhs through the plan; relative residual at direct-solver level.
ScalarField solve_helmholtz(const SolverPlan& plan, const ScalarField& rhs);

/// Pressure solve with the zero-mode convention: the area-weighted mean of rhs
/// is removed (IncompatibleRHS when it exceeds 1e-6 * max|rhs|) and the
/// returned potential has zero area-weighted mean. When max|rhs| is below
/// noise_floor the rhs is cancellation residue of an already divergence-free
/// field and the compatibility check is skipped.
ScalarField solve_pressure(const SolverPlan& plan, const ScalarField& rhs,
                           double noise_floor = 0.0);

} // namespace bouss
