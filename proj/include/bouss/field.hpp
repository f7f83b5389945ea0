#pragma once

/// @file field.hpp
/// Storage for the staggered unknown families and the two-level time history.
///
/// Node families on an N x M cell grid (storage is row-major, j outer):
///   u           (M)   x (N-1)  rows, at (x[c+1],      y_half[r])
///   v / theta   (M-1) x  N     rows, at (x_half[c],   y[r+1])
///   pressure    (M)   x  N     rows, at (x_half[c],   y_half[r])
///   theta_walls (M+1) x  N     rows, at (x_half[c],   y[r])      cavity theta,
///                                    wall rows r=0 and r=M are unknowns
///   corner      (M+1) x (N+1)  rows, at (x[c],        y[r])      vorticity
///   corner_in   (M-1) x (N-1)  rows, at (x[c+1],      y[r+1])    streamfunction

#include <cstdint>
#include <vector>

#include "bouss/grid.hpp"

namespace bouss {

enum class Family : std::uint8_t { u, v, pressure, theta_walls, corner, corner_in };

const char* family_name(Family f);

/// Dense 2D value array bound to one node family of one grid.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(Family family, const StaggeredGrid& grid);

    double& operator()(int r, int c) { return vals_[std::size_t(r) * cols_ + c]; }
    double operator()(int r, int c) const { return vals_[std::size_t(r) * cols_ + c]; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return vals_.size(); }
    Family family() const { return family_; }
    const StaggeredGrid& grid() const { return *grid_; }

    double* data() { return vals_.data(); }
    const double* data() const { return vals_.data(); }

    double x_of(int c) const;
    double y_of(int r) const;

    void fill(double v);
    double max_abs() const;
    bool all_finite() const;

private:
    Family family_ = Family::pressure;
    const StaggeredGrid* grid_ = nullptr;
    int rows_ = 0, cols_ = 0;
    std::vector<double> vals_;
};

/// Throws ShapeMismatch unless the field has the expected family (and grid).
void require_family(const ScalarField& f, Family expected, const char* where);
void require_same_grid(const ScalarField& a, const ScalarField& b, const char* where);

/// Visits every node once in storage order (row-major, j outer).
template <typename Fn> // Fn(int r, int c, double x, double y, double value)
void for_each_node(const ScalarField& f, Fn&& fn) {
    for (int r = 0; r < f.rows(); ++r)
        for (int c = 0; c < f.cols(); ++c) fn(r, c, f.x_of(c), f.y_of(r), f(r, c));
}

enum class Parity { even, odd };

/// Reflection about x = 0 on a symmetric grid; even parity keeps the sign
/// (v, theta, P), odd flips it (u). An involution for both parities.
/// Throws AsymmetricGrid when the grid is not symmetric about x = 0.
ScalarField mirror_x(const ScalarField& f, Parity parity);

/// The four unknowns at one time level.
struct State {
    ScalarField u, v, p, theta;
    double t = 0.0;
    long k = 0;
    bool projected = true; ///< discrete divergence is at solver tolerance

    State() = default;
    State(const StaggeredGrid& grid, Family theta_family);
};

/// Previous time level plus cached convective terms (recomputable from prev;
/// kept to avoid evaluating each nonlinear term twice per step).
struct History {
    State prev;
    ScalarField conv_u, conv_v, conv_theta; ///< N1, N2, psi*(N3 + alpha*v) at level k-1
};

} // namespace bouss
