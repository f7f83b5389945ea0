#pragma once

/// @file problems.hpp
/// Problem configurations: the heat island in an open (truncated) domain and
/// the differentially heated square cavity used for code validation.

#include <memory>
#include <string>

#include "bouss/operators.hpp"

namespace bouss {

enum class ProblemKind { heat_island, cavity };

const char* problem_kind_name(ProblemKind k);

/// Nondimensional groups of the governing equations.
struct PhysParams {
    double Ra = 1e3;
    double Pr = 0.71;
    double alpha = 1.0;   ///< stratification coefficient: 1 heat island, 0 cavity
    double zeta = 2.5e-2; ///< plate-edge sharpness of the ground profile

    void validate() const;
};

/// A fully specified run: problem binding, physics, grid and sponge.
struct ProblemConfig {
    ProblemKind kind = ProblemKind::heat_island;
    PhysParams phys;
    GridSpec grid;
    SpongeParams sponge;
    double dt = 0.1;
    double tol = 1e-9;
    long max_steps = 500000;

    /// Full invariant check; the cavity forces alpha=0, gamma=0, uniform unit
    /// square, the heat island forces alpha=1. Throws InvalidSpec.
    void validate() const;
};

/// Minimal admissible domain (L_c, H_c) for the standard heat equation at the
/// tabulated resolutions 1/h in {16, 32, 64}; these are the smallest sizes at
/// which the theta_min error stays within h^2 of the converged value.
std::pair<double, double> min_domain(double Ra, int inv_h);

/// Reference domain (L_ref, H_ref) ensuring a converged theta_min at 0.1 h^2.
std::pair<double, double> ref_domain(double Ra, int inv_h);

/// Minimal domain length with the sponge layer active (about 3x smaller).
double sponge_min_length(double Ra, int inv_h);

/// Time step defaults by Rayleigh number: 0.1 / 0.05 / 0.025 for 1e3/1e4/1e5.
double default_dt(double Ra);

/// Heat-island configuration. L, H <= 0 pick the tabulated defaults for the
/// given resolution and sponge setting. The horizontal grid is tanh-graded
/// with the smallest cells equal to h around the plate.
ProblemConfig make_heat_island(double Ra, double h, double L = 0, double H = 0,
                               bool sponge_on = true);

/// Unit-square differentially heated cavity on a uniform n x n grid,
/// theta = +1/2 on the left wall, -1/2 on the right, adiabatic top and bottom.
ProblemConfig make_cavity(double Ra, int n);

/// Table II presets for the fine (h = 1/128) production runs; name is one of
/// ra1e3-fine, ra1e4-fine, ra1e5-fine. Throws InvalidSpec for unknown names.
ProblemConfig preset_config(const std::string& name);

/// Everything the stepper needs, built once per run. Grid address is stable;
/// fields keep pointers into it, so the setup is not movable.
struct ProblemSetup {
    ProblemKind kind = ProblemKind::heat_island;
    PhysParams phys;
    SpongeParams sponge;
    StaggeredGrid grid;
    ThetaBC theta_bc;
    std::vector<double> psi; ///< sponge profile on theta columns

    ProblemSetup() = default;
    ProblemSetup(const ProblemSetup&) = delete;
    ProblemSetup& operator=(const ProblemSetup&) = delete;

    Family theta_family() const { return theta_bc.theta_family(); }
    State initial_state() const;
};

std::unique_ptr<ProblemSetup> build_setup(const ProblemConfig& config);

} // namespace bouss
