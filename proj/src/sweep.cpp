#include "bouss/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "bouss/diagnostics.hpp"

namespace bouss {

double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [x, y] : pts) {
        if (!(x > 0.0) || !(y > 0.0)) continue;
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepEntry run_heat_island_entry(double Ra, double h, double L, double H, int gamma,
                                 double dt, double tol, long max_steps) {
    ProblemConfig cfg = make_heat_island(Ra, h, L, H, gamma == 1);
    if (dt > 0) cfg.dt = dt;
    cfg.tol = tol;
    cfg.max_steps = max_steps;
    auto setup = build_setup(cfg);
    StepConfig sc{cfg.dt, cfg.tol, cfg.max_steps};
    Stepper stepper(*setup, sc);
    State s = stepper.initial_state();
    History hist = stepper.bootstrap(s);
    const RunResult rr = stepper.run_to_steady(s, hist);

    SweepEntry e;
    e.L = L;
    e.H = H;
    e.gamma = gamma;
    e.steps = rr.steps;
    e.converged = rr.status == RunStatus::converged;
    e.theta_min = extrema(s.theta).min.value;
    return e;
}

SweepResult sweep_domains(const SweepSpec& spec,
                          const std::function<void(const SweepEntry&)>& progress) {
    if (spec.lengths.empty() || spec.heights.empty())
        throw InvalidSpec("sweep needs at least one length and one height");

    SweepResult result;
    result.L_ref = spec.ref_L > 0 ? spec.ref_L
                                  : *std::max_element(spec.lengths.begin(), spec.lengths.end());
    result.H_ref = spec.ref_H > 0 ? spec.ref_H
                                  : *std::max_element(spec.heights.begin(), spec.heights.end());

    SweepEntry ref = run_heat_island_entry(spec.Ra, spec.h, result.L_ref, result.H_ref,
                                           spec.gamma, spec.dt, spec.tol, spec.max_steps);
    if (!ref.converged)
        throw NonFinite("sweep reference run did not converge; raise max_steps");
    result.theta_min_ref = ref.theta_min;
    if (progress) progress(ref);

    for (double H : spec.heights) {
        for (double L : spec.lengths) {
            SweepEntry e;
            if (L == result.L_ref && H == result.H_ref) {
                e = ref;
                e.eps = 0.0;
            } else {
                e = run_heat_island_entry(spec.Ra, spec.h, L, H, spec.gamma, spec.dt,
                                          spec.tol, spec.max_steps);
                e.eps = e.converged ? epsilon_LH(e.theta_min, result.theta_min_ref) : -1.0;
            }
            result.entries.push_back(e);
            if (progress) progress(e);
        }
    }

    // decay exponents from the converged positive-eps entries, sorted in L
    std::vector<std::pair<double, double>> pts;
    for (const auto& e : result.entries)
        if (e.converged && e.eps > 0.0) pts.emplace_back(e.L, e.eps);
    std::sort(pts.begin(), pts.end());
    if (pts.size() >= 3) {
        std::vector<std::pair<double, double>> small(pts.begin(), pts.begin() + 3);
        std::vector<std::pair<double, double>> large(pts.end() - 3, pts.end());
        result.slope_small = loglog_slope(small);
        result.slope_large = loglog_slope(large);
    }
    return result;
}

} // namespace bouss
