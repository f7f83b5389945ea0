#pragma once

/// @file diagnostics.hpp
/// Scalar and field diagnostics of the stationary solutions: extrema with
/// locations, Nusselt number, vorticity, streamfunction, domain-convergence
/// error and the symmetry defect.

#include <string>

#include "bouss/fast_solver.hpp"
#include "bouss/operators.hpp"

namespace bouss {

struct Extremum {
    double value = 0;
    double x = 0, y = 0;
    int r = 0, c = 0;
};

struct FieldExtrema {
    Extremum min, max;
};

/// Node-wise extrema; ties resolved toward the smallest row, then column.
FieldExtrema extrema(const ScalarField& f);

/// Sub-cell extremum estimate: quadratic fit through the discrete extremum and
/// its neighbors, used where location quantization would pollute convergence
/// fits. Falls back to the node value on boundaries.
FieldExtrema extrema_refined(const ScalarField& f);

/// Ground Nusselt number -(1/L) * integral of dtheta/dy at y=0, one-sided
/// second-order wall derivative per column, composite ell-weighted sum.
double nusselt_ground(const ScalarField& theta, const ThetaBC& bc);

/// Same integral without the 1/L normalization.
double nusselt_ground_integral(const ScalarField& theta, const ThetaBC& bc);

/// Cavity wall Nusselt number -(1/H) * integral of dtheta/dx on a vertical
/// wall (left = hot). One-sided three-point derivative, trapezoid in y.
double nusselt_wall_x(const ScalarField& theta, const ThetaBC& bc, bool left);

/// Cavity Nusselt number measured as the total (convective + conductive)
/// heat flux through the vertical mid-plane; interior stencils only, so it
/// reaches its asymptotic order earlier than the wall-derivative form.
/// Requires the uniform cavity layout with even N.
double nusselt_midplane_x(const ScalarField& u, const ScalarField& theta, double Ra,
                          double Pr);

/// Largest value of u along the vertical midline x=0 / of v along the
/// horizontal midline y=H/2, refined by a quadratic through the discrete
/// peak. These are the classical cavity characteristic values; the midlines
/// are node lines of the staggered families (even N, M).
double centerline_umax(const ScalarField& u);
double centerline_vmax(const ScalarField& v);

/// omega = dv/dx - du/dy at all cell corners including the no-slip walls,
/// one-sided wall derivatives by odd reflection.
ScalarField vorticity(const ScalarField& u, const ScalarField& v);

/// Streamfunction from -Laplace(psi) = omega with psi = 0 on the boundary
/// (exact for no-penetration walls); plan must be a poisson_corner plan.
ScalarField streamfunction(const ScalarField& u, const ScalarField& v,
                           const SolverPlan& corner_plan);

/// Relative domain-convergence error |tmin - tref| / |tref|.
double epsilon_LH(double theta_min, double theta_min_ref);

/// max over fields of ||f - parity*mirror(f)||_inf / ||f||_inf,
/// even parity for v, theta, P and odd for u.
double symmetry_defect(const State& s);

/// One row of the characteristic-value table of a steady solution.
struct CharacteristicValues {
    Extremum theta_min, u_max, v_max, v_min, omega_max, psi_max;
    double nu = 0;
};

CharacteristicValues characteristic_values(const State& s, const ThetaBC& bc);

/// CSV schema used by the run driver, one row per converged run.
std::string characteristic_csv_header();
std::string characteristic_csv_row(const CharacteristicValues& cv, double Ra, double h,
                                   double L, double H, int gamma, long steps,
                                   double t_stat);

} // namespace bouss
