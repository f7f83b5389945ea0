#include "bouss/timestepper.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace bouss {

void StepConfig::validate() const {
    if (!(dt > 0.0)) throw InvalidSpec("dt must be > 0");
    if (!(tol > 0.0)) throw InvalidSpec("tol must be > 0");
    if (max_steps < 1) throw InvalidSpec("max_steps must be >= 1");
}

Stepper::Stepper(const ProblemSetup& setup, const StepConfig& cfg)
    : setup_(setup),
      cfg_(cfg),
      plan_u_(SolverPlan::helmholtz(setup.grid, Family::u,
                                    HelmholtzShift::velocity(cfg.dt, setup.phys.Ra,
                                                             setup.phys.Pr))),
      plan_v_(SolverPlan::helmholtz(setup.grid, Family::v,
                                    HelmholtzShift::velocity(cfg.dt, setup.phys.Ra,
                                                             setup.phys.Pr))),
      plan_theta_(SolverPlan::helmholtz(setup.grid, setup.theta_family(),
                                        HelmholtzShift::temperature(cfg.dt, setup.phys.Ra,
                                                                    setup.phys.Pr))),
      plan_p_(SolverPlan::pressure(setup.grid)),
      theta_load_(theta_boundary_load(setup.grid, setup.theta_bc)) {
    cfg.validate();
}

State Stepper::initial_state() const { return setup_.initial_state(); }

ScalarField Stepper::theta_convection(const State& s) const {
    const StaggeredGrid& g = setup_.grid;
    ScalarField conv = nonlinear_theta(s.u, s.v, s.theta, setup_.theta_bc);
    const double alpha = setup_.phys.alpha;
    const bool walls = s.theta.family() == Family::theta_walls;
    for (int r = 0; r < conv.rows(); ++r) {
        for (int c = 0; c < conv.cols(); ++c) {
            double vtheta = 0.0;
            if (!walls) {
                vtheta = s.v(r, c);
            } else if (r > 0 && r < g.M) {
                vtheta = s.v(r - 1, c); // wall rows have v = 0
            }
            conv(r, c) = setup_.psi[c] * (conv(r, c) + alpha * vtheta);
        }
    }
    return conv;
}

History Stepper::bootstrap(const State& s0) const {
    History h;
    h.prev = s0;
    auto [n1, n2] = nonlinear_momentum(s0.u, s0.v);
    h.conv_u = std::move(n1);
    h.conv_v = std::move(n2);
    h.conv_theta = theta_convection(s0);
    return h;
}

std::pair<ScalarField, ScalarField> Stepper::predictor(const State& s,
                                                       const History& h) const {
    const double dt = cfg_.dt;
    const double a = HelmholtzShift::velocity(dt, setup_.phys.Ra, setup_.phys.Pr).c;
    auto [n1, n2] = nonlinear_momentum(s.u, s.v);
    auto [g1, g2] = gradient(s.p);
    const ScalarField lap_u = laplacian_u(s.u);
    const ScalarField lap_v = laplacian_vtheta(s.v, nullptr);

    ScalarField rhs_u(Family::u, setup_.grid);
    for (int r = 0; r < rhs_u.rows(); ++r)
        for (int c = 0; c < rhs_u.cols(); ++c)
            rhs_u(r, c) = s.u(r, c) - a * lap_u(r, c) - dt * g1(r, c) -
                          0.5 * dt * (3.0 * n1(r, c) - h.conv_u(r, c));

    const bool walls = s.theta.family() == Family::theta_walls;
    ScalarField rhs_v(Family::v, setup_.grid);
    for (int r = 0; r < rhs_v.rows(); ++r) {
        for (int c = 0; c < rhs_v.cols(); ++c) {
            const int tr = walls ? r + 1 : r; // v row r sits at y[r+1]
            const double buoy = 3.0 * s.theta(tr, c) - h.prev.theta(tr, c);
            rhs_v(r, c) = s.v(r, c) - a * lap_v(r, c) - dt * g2(r, c) -
                          0.5 * dt * (3.0 * n2(r, c) - h.conv_v(r, c)) + 0.5 * dt * buoy;
        }
    }
    return {plan_u_.solve(rhs_u), plan_v_.solve(rhs_v)};
}

ScalarField Stepper::project(ScalarField& ut, ScalarField& vt) const {
    const double dt = cfg_.dt;
    const StaggeredGrid& g = setup_.grid;
    ScalarField rhs = divergence(ut, vt);
    for (int r = 0; r < rhs.rows(); ++r)
        for (int c = 0; c < rhs.cols(); ++c) rhs(r, c) *= -2.0 / dt;
    // rhs below the cancellation level of the divergence sum is pure roundoff
    double ell_min = g.ell[0];
    for (double e : g.ell) ell_min = std::min(ell_min, e);
    const double noise = 64.0 * 2.2e-16 * (2.0 / dt) *
                         (ut.max_abs() / ell_min + vt.max_abs() / g.h);
    ScalarField phi = solve_pressure(plan_p_, rhs, noise);
    auto [g1, g2] = gradient(phi);
    for (int r = 0; r < ut.rows(); ++r)
        for (int c = 0; c < ut.cols(); ++c) ut(r, c) -= 0.5 * dt * g1(r, c);
    for (int r = 0; r < vt.rows(); ++r)
        for (int c = 0; c < vt.cols(); ++c) vt(r, c) -= 0.5 * dt * g2(r, c);
    return phi;
}

ScalarField Stepper::temperature_step(const State& s, const ScalarField& conv_k,
                                      const ScalarField& conv_km1) const {
    const double dt = cfg_.dt;
    const double cth = HelmholtzShift::temperature(dt, setup_.phys.Ra, setup_.phys.Pr).c;
    const ScalarField lap = laplacian_vtheta(s.theta, &setup_.theta_bc);
    ScalarField rhs(s.theta.family(), setup_.grid);
    for (int r = 0; r < rhs.rows(); ++r)
        for (int c = 0; c < rhs.cols(); ++c)
            rhs(r, c) = s.theta(r, c) - cth * (lap(r, c) + theta_load_(r, c)) -
                        0.5 * dt * (3.0 * conv_k(r, c) - conv_km1(r, c));
    return plan_theta_.solve(rhs);
}

Residuals Stepper::advance(State& s, History& h) const {
    const double dt = cfg_.dt;

    // convective terms at level k, needed again at level k+1
    auto [n1, n2] = nonlinear_momentum(s.u, s.v);
    ScalarField conv_th = theta_convection(s);

    auto [ut, vt] = predictor(s, h);
    ScalarField phi = project(ut, vt);
    ScalarField p_new(Family::pressure, setup_.grid);
    for (int r = 0; r < p_new.rows(); ++r)
        for (int c = 0; c < p_new.cols(); ++c) p_new(r, c) = s.p(r, c) + phi(r, c);
    ScalarField theta_new = temperature_step(s, conv_th, h.conv_theta);

    Residuals res;
    bool finite = true;
    auto residual = [&](const ScalarField& now, const ScalarField& before) {
        double m = 0.0;
        const double* a = now.data();
        const double* b = before.data();
        for (std::size_t i = 0; i < now.size(); ++i) {
            const double d = std::abs(a[i] - b[i]);
            if (!std::isfinite(a[i])) finite = false;
            m = std::max(m, d);
        }
        return m / dt;
    };
    res.u = residual(ut, s.u);
    res.v = residual(vt, s.v);
    res.theta = residual(theta_new, s.theta);
    if (!finite || !std::isfinite(res.max()))
        throw NonFinite("at step " + std::to_string(s.k + 1) +
                        "; the time step is likely too large");

    h.prev = std::move(s);
    h.conv_u = std::move(n1);
    h.conv_v = std::move(n2);
    h.conv_theta = std::move(conv_th);

    s.u = std::move(ut);
    s.v = std::move(vt);
    s.p = std::move(p_new);
    s.theta = std::move(theta_new);
    s.t = h.prev.t + dt;
    s.k = h.prev.k + 1;
    s.projected = true;
    return res;
}

RunResult Stepper::run_to_steady(
    State& s, History& h,
    const std::function<void(long, double, const Residuals&)>& on_step,
    const std::function<void(const State&, const History&)>& on_snapshot,
    long snapshot_every) const {
    RunResult result;
    result.residual_history.reserve(1024);
    const long k0 = s.k;
    while (s.k - k0 < cfg_.max_steps) {
        const Residuals res = advance(s, h);
        result.residual_history.push_back(res);
        if (on_step) on_step(s.k, s.t, res);
        if (on_snapshot && snapshot_every > 0 && (s.k - k0) % snapshot_every == 0)
            on_snapshot(s, h);
        if (res.max() <= cfg_.tol) {
            result.status = RunStatus::converged;
            break;
        }
    }
    result.steps = s.k - k0;
    result.t = s.t;
    if (on_snapshot) on_snapshot(s, h);
    return result;
}

} // namespace bouss
