#pragma once

/// @file timestepper.hpp
/// Second-order projection scheme: Crank-Nicolson diffusion, Adams-Bashforth
/// convection and buoyancy extrapolation, pressure-correction projection, then
/// the temperature update from the projected velocity. First step bootstraps
/// with forward-Euler weights by seeding the history with the initial state.

#include <functional>
#include <vector>

#include "bouss/fast_solver.hpp"
#include "bouss/operators.hpp"
#include "bouss/problems.hpp"

namespace bouss {

/// Time-step driver parameters.
struct StepConfig {
    double dt = 0.1;
    double tol = 1e-9;      ///< stationarity tolerance on max |df/dt|
    long max_steps = 500000;

    void validate() const;
};

struct Residuals {
    double u = 0, v = 0, theta = 0;
    double max() const { return std::max(u, std::max(v, theta)); }
};

enum class RunStatus { converged, not_converged };

struct RunResult {
    RunStatus status = RunStatus::not_converged;
    long steps = 0;
    double t = 0.0;
    std::vector<Residuals> residual_history; ///< one entry per step
};

class Stepper {
public:
    Stepper(const ProblemSetup& setup, const StepConfig& cfg);

    State initial_state() const;
    History bootstrap(const State& s0) const;

    /// Helmholtz predictor solves for both velocity components.
    std::pair<ScalarField, ScalarField> predictor(const State& s, const History& h) const;

    /// Pressure correction: returns phi and overwrites (ut, vt) with the
    /// divergence-free velocity. P update is phi added by the caller.
    ScalarField project(ScalarField& ut, ScalarField& vt) const;

    /// Crank-Nicolson/AB2 temperature update from level-k convective data.
    ScalarField temperature_step(const State& s, const ScalarField& conv_k,
                                 const ScalarField& conv_km1) const;

    /// One full step; state and history advance, residuals returned.
    Residuals advance(State& s, History& h) const;

    /// Iterates advance until the stationarity criterion or max_steps.
    /// on_step (optional) sees every step; on_snapshot (optional) is invoked
    /// every snapshot_every steps and at the end.
    RunResult run_to_steady(
        State& s, History& h,
        const std::function<void(long, double, const Residuals&)>& on_step = {},
        const std::function<void(const State&, const History&)>& on_snapshot = {},
        long snapshot_every = 0) const;

    /// psi * (N3 + alpha v) at theta nodes, the sponge-filtered convective term.
    ScalarField theta_convection(const State& s) const;

    const ProblemSetup& setup() const { return setup_; }
    const StepConfig& config() const { return cfg_; }

private:
    const ProblemSetup& setup_;
    StepConfig cfg_;
    SolverPlan plan_u_, plan_v_, plan_theta_, plan_p_;
    ScalarField theta_load_; ///< boundary load of the theta Laplacian
};

} // namespace bouss
