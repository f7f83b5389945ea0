#pragma once

/// @file grid.hpp
/// Computational rectangle (-L/2, L/2) x (0, H): uniform subdivision in y,
/// optionally tanh-graded subdivision in x that concentrates cells around x=0.
///
/// Index conventions used throughout the code (0-based storage):
///   x[i], i=0..N   cell edges, x[0] = -L/2, x[N] = +L/2
///   y[j], j=0..M   cell edges, y[j] = j*h
///   x_half[i] = (x[i]+x[i+1])/2, i=0..N-1
///   y_half[j] = (j+1/2)*h,       j=0..M-1
///   ell[i] = x[i+1]-x[i],        i=0..N-1   horizontal cell widths
///   dxu[i] = x_half[i+1]-x_half[i], i=0..N-2  u-cell widths (x-distance
///            between adjacent pressure-cell centers)

#include <vector>

#include "bouss/errors.hpp"

namespace bouss {

/// How to build a grid: sizes, cell counts and mapping parameters.
struct GridSpec {
    double L = 1.0;      ///< horizontal extent (plate width = 1 in these units)
    double H = 1.0;      ///< vertical extent
    int N = 4;           ///< horizontal cell count
    int M = 4;           ///< vertical cell count
    double gamma1 = 0.0; ///< mapping amplitude (0 degenerates to uniform)
    double gamma2 = 1.0; ///< mapping steepness (1/length)
    bool uniform_x = false;

    /// Throws InvalidSpec when a field violates its admissible range.
    void validate() const;
};

/// Coordinates of all staggered node families, immutable after construction.
struct StaggeredGrid {
    double L = 0, H = 0, h = 0;
    int N = 0, M = 0;
    std::vector<double> x, y, x_half, y_half, ell, dxu;

    /// True when x[i] == -x[N-i] to within tol*L (needs even N).
    bool symmetric_x(double tol = 1e-12) const;
};

/// The grading map phi: (0,L) -> (-1,1),
///   phi(s) = (2s - L + g1*tanh(g2*s) - g1*tanh(g2*(L-s))) / (L + g1*tanh(g2*L)).
/// Strictly increasing, phi(0) = -1, phi(L/2) = 0, phi(L) = +1.
double phi_map(double s, const GridSpec& spec);

/// Mapping parameters produced by fit_mapping.
struct MappingFit {
    double gamma1 = 0;
    double gamma2 = 1;
};

/// Calibrates (gamma1, gamma2) so that the smallest cell width lands in
/// [0.8, 1.2] * target_center_width and the distortion ratios
/// r_i = ell_i/ell_{i-1} grow monotonically away from x = 0.
///
/// Outer bisection drives gamma2 down to the smallest steepness at which the
/// target width is reachable; an inner scan-plus-bisection on gamma1 then
/// meets the width. Deterministic for given (L, N, target).
/// Throws NoFit when the search range cannot reach the band.
MappingFit fit_mapping(const GridSpec& spec, double target_center_width);

/// Evaluates the node arrays from the analytic map (uniform when requested).
/// Every coordinate comes straight from phi_map; widths are never accumulated.
StaggeredGrid build_grid(const GridSpec& spec);

/// Smallest and largest horizontal cell width of a hypothetical grid,
/// evaluated directly from the map without building coordinate arrays.
std::pair<double, double> width_extremes(const GridSpec& spec);

/// Cell count heuristic for heat-island grids: enough cells that the smallest
/// width equals target_dx and cells stay below 1.25*target_dx over the plate
/// neighborhood |x| <= 1. Returned N is a multiple of 4.
int pick_horizontal_cells(double L, double target_dx);

} // namespace bouss
