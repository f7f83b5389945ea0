#include "bouss/field.hpp"

#include <cmath>
#include <string>

namespace bouss {

const char* family_name(Family f) {
    switch (f) {
        case Family::u: return "u";
        case Family::v: return "v";
        case Family::pressure: return "pressure";
        case Family::theta_walls: return "theta_walls";
        case Family::corner: return "corner";
        case Family::corner_in: return "corner_in";
    }
    return "?";
}

ScalarField::ScalarField(Family family, const StaggeredGrid& grid)
    : family_(family), grid_(&grid) {
    const int N = grid.N, M = grid.M;
    switch (family) {
        case Family::u: rows_ = M; cols_ = N - 1; break;
        case Family::v: rows_ = M - 1; cols_ = N; break;
        case Family::pressure: rows_ = M; cols_ = N; break;
        case Family::theta_walls: rows_ = M + 1; cols_ = N; break;
        case Family::corner: rows_ = M + 1; cols_ = N + 1; break;
        case Family::corner_in: rows_ = M - 1; cols_ = N - 1; break;
    }
    vals_.assign(std::size_t(rows_) * cols_, 0.0);
}

double ScalarField::x_of(int c) const {
    switch (family_) {
        case Family::u: return grid_->x[c + 1];
        case Family::v:
        case Family::pressure:
        case Family::theta_walls: return grid_->x_half[c];
        case Family::corner: return grid_->x[c];
        case Family::corner_in: return grid_->x[c + 1];
    }
    return 0.0;
}

double ScalarField::y_of(int r) const {
    switch (family_) {
        case Family::u:
        case Family::pressure: return grid_->y_half[r];
        case Family::v:
        case Family::corner_in: return grid_->y[r + 1];
        case Family::theta_walls:
        case Family::corner: return grid_->y[r];
    }
    return 0.0;
}

void ScalarField::fill(double v) {
    for (auto& e : vals_) e = v;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double e : vals_) m = std::max(m, std::abs(e));
    return m;
}

bool ScalarField::all_finite() const {
    for (double e : vals_)
        if (!std::isfinite(e)) return false;
    return true;
}

void require_family(const ScalarField& f, Family expected, const char* where) {
    if (f.family() != expected)
        throw ShapeMismatch(std::string(where) + ": expected " + family_name(expected) +
                            " field, got " + family_name(f.family()));
}

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* where) {
    if (&a.grid() != &b.grid())
        throw ShapeMismatch(std::string(where) + ": fields bound to different grids");
}

ScalarField mirror_x(const ScalarField& f, Parity parity) {
    const StaggeredGrid& g = f.grid();
    if (!g.symmetric_x()) throw AsymmetricGrid("mirror_x needs a grid symmetric about x=0");
    ScalarField out(f.family(), g);
    const double sign = (parity == Parity::even) ? 1.0 : -1.0;
    const int last = f.cols() - 1;
    for (int r = 0; r < f.rows(); ++r)
        for (int c = 0; c < f.cols(); ++c) out(r, c) = sign * f(r, last - c);
    return out;
}

State::State(const StaggeredGrid& grid, Family theta_family)
    : u(Family::u, grid),
      v(Family::v, grid),
      p(Family::pressure, grid),
      theta(theta_family, grid) {
    if (theta_family != Family::v && theta_family != Family::theta_walls)
        throw ShapeMismatch("theta must live on v nodes or v nodes plus wall rows");
}

} // namespace bouss
