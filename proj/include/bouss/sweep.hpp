#pragma once

/// @file sweep.hpp
/// Domain-size convergence sweeps: run a family of heat-island domains,
/// tabulate the relative theta_min error against the largest-domain
/// reference, and fit the decay exponents of the small-L and large-L regimes.

#include <functional>
#include <vector>

#include "bouss/problems.hpp"
#include "bouss/timestepper.hpp"

namespace bouss {

struct SweepEntry {
    double L = 0, H = 0;
    int gamma = 0;
    double theta_min = 0;
    double eps = 0; ///< relative error against the sweep reference
    long steps = 0;
    bool converged = false;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    double theta_min_ref = 0;
    double L_ref = 0, H_ref = 0;
    double slope_small = 0; ///< log-log slope over the three smallest L
    double slope_large = 0; ///< log-log slope over the three largest L
};

/// Least-squares slope of log(eps) vs log(L).
double loglog_slope(const std::vector<std::pair<double, double>>& pts);

struct SweepSpec {
    double Ra = 1e4;
    double h = 1.0 / 16.0;
    std::vector<double> lengths;
    std::vector<double> heights; ///< crossed with lengths; often a single H
    int gamma = 0;
    double dt = 0;       ///< 0 picks the Ra default
    double tol = 1e-9;
    long max_steps = 500000;
    double ref_L = 0;    ///< 0 uses max length; otherwise a larger reference run
    double ref_H = 0;
};

/// Runs every (L, H) pair plus the reference domain and fills the table.
/// progress (optional) is called once per finished run.
SweepResult sweep_domains(
    const SweepSpec& spec,
    const std::function<void(const SweepEntry&)>& progress = {});

/// theta_min of one steady heat-island run (helper shared with the sweep).
SweepEntry run_heat_island_entry(double Ra, double h, double L, double H, int gamma,
                                 double dt, double tol, long max_steps);

} // namespace bouss
