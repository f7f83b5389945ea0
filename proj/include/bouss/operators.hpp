#pragma once

/// @file operators.hpp
/// Matrix-free finite-volume operators on the staggered grid: Laplacians,
/// gradient, divergence, conservative convection, the sponge profile and the
/// ground temperature profile.
///
/// All Laplacians return the cell average of -Laplace(f) (area-divided flux
/// balance), so they are positive (semi)definite under cell-area weights.
/// Dirichlet data enters as known values folded into the result; assembled
/// operators act on interior unknowns only.

#include <utility>
#include <vector>

#include "bouss/field.hpp"

namespace bouss {

/// Sponge filter psi_gamma(x) = exp(-gamma*(2|x|/(sigma*L))^p).
struct SpongeParams {
    int gamma = 0;      ///< 0 = standard heat equation, 1 = truncated
    double sigma = 0.85;
    double p = 8.0;

    void validate() const;
};

/// Temperature boundary data. Velocity walls are always no-slip (zero) and
/// need no spec. The y closure selects the theta family: Dirichlet rows at
/// y=0,H (heat island, Family::v) or zero-flux wall rows (cavity,
/// Family::theta_walls).
struct ThetaBC {
    enum class YWalls { dirichlet, neumann };
    YWalls ywalls = YWalls::dirichlet;
    std::vector<double> bottom, top;  ///< per column, Dirichlet y walls only
    std::vector<double> left, right;  ///< per row, Dirichlet x walls

    Family theta_family() const {
        return ywalls == YWalls::dirichlet ? Family::v : Family::theta_walls;
    }
};

/// Ground profile theta(x, y=0) = (1 - tanh((2|x| - 1)/(2 zeta)))/2:
/// about 1 on the heated plate |x| < 1/2, exactly 1/2 at |x| = 1/2 and
/// decaying to 0 outside. zeta sets the sharpness at the plate edges.
double ground_theta(double x, double zeta);

/// psi_gamma sampled at the v/theta abscissae x_half[i]; all ones for gamma=0.
std::vector<double> sponge_profile(const StaggeredGrid& grid, const SpongeParams& params);

/// -Laplace(u) on u nodes. Dirichlet u=0 at the vertical walls (edge nodes),
/// ghost-row reflection (ghost = -first interior row) at the horizontal walls.
ScalarField laplacian_u(const ScalarField& u);

/// -Laplace(f) on v/theta nodes. Vertical walls: Dirichlet at the grid points
/// x0, xN with the one-sided half-width stencil in the first and last cell.
/// Horizontal walls per bc: Dirichlet node rows, or half-cell zero-flux rows.
/// bc == nullptr means homogeneous Dirichlet everywhere (velocity v).
ScalarField laplacian_vtheta(const ScalarField& f, const ThetaBC* bc);

/// Pure boundary load: laplacian_vtheta applied to the zero field.
ScalarField theta_boundary_load(const StaggeredGrid& grid, const ThetaBC& bc);

/// (G1 P on u nodes, G2 P on v nodes), centered over adjacent pressure cells.
std::pair<ScalarField, ScalarField> gradient(const ScalarField& P);

/// Per-cell flux balance of (u, v) over pressure cells; boundary faces carry
/// the no-penetration value zero.
ScalarField divergence(const ScalarField& u, const ScalarField& v);

/// Conservative convection (N1, N2) = cell averages of div(u (x) u) using the
/// arithmetic mean of squares for like-component faces and width-weighted
/// interpolation for the cross term at cell corners.
std::pair<ScalarField, ScalarField> nonlinear_momentum(const ScalarField& u,
                                                       const ScalarField& v);

/// Conservative convection N3 = cell average of div(u theta) on theta cells,
/// same interpolation rules; Dirichlet theta values from bc enter the face
/// fluxes next to the walls. Does not include the stratification term.
ScalarField nonlinear_theta(const ScalarField& u, const ScalarField& v,
                            const ScalarField& theta, const ThetaBC& bc);

} // namespace bouss
