// Command-line driver: steady heat-island and cavity runs, checkpoint resume,
// domain sweeps, cavity validation series and diagnostics over saved dumps.
//
// Exit codes: 0 success, 2 configuration error, 3 not converged, 4 numerical
// failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bouss/config.hpp"
#include "bouss/diagnostics.hpp"
#include "bouss/io.hpp"
#include "bouss/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace bouss;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitNumerical = 4;

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

double grid_h(const ProblemConfig& pc) { return pc.grid.H / pc.grid.M; }

void write_characteristics(const std::string& path, const State& s, const ThetaBC& bc,
                           const ProblemConfig& pc, long steps, double t_stat) {
    const CharacteristicValues cv = characteristic_values(s, bc);
    std::ofstream out(path);
    out << characteristic_csv_header() << "\n"
        << characteristic_csv_row(cv, pc.phys.Ra, grid_h(pc), pc.grid.L, pc.grid.H,
                                  pc.sponge.gamma, steps, t_stat)
        << "\n";
    std::printf("theta_min = %.6f at y = %.5f,  Nu = %.6f\n", cv.theta_min.value,
                cv.theta_min.y, cv.nu);
}

int drive_run(const RunConfig& cfg, bool fresh) {
    const std::string dir = cfg.output.dir;
    fs::create_directories(dir);
    set_threads(cfg.output.threads);

    auto setup = build_setup(cfg.problem);
    StepConfig sc{cfg.problem.dt, cfg.problem.tol, cfg.problem.max_steps};
    Stepper stepper(*setup, sc);

    State s = stepper.initial_state();
    History hist = stepper.bootstrap(s);
    if (!fresh) {
        Checkpoint ck = read_checkpoint(dir + "/checkpoint.bin");
        if (ck.spec.N != setup->grid.N || ck.spec.M != setup->grid.M)
            throw IoError("checkpoint grid does not match the configuration");
        setup->grid.x = ck.grid->x;
        setup->grid.y = ck.grid->y;
        setup->grid.x_half = ck.grid->x_half;
        setup->grid.y_half = ck.grid->y_half;
        setup->grid.ell = ck.grid->ell;
        setup->grid.dxu = ck.grid->dxu;
        auto copy_into = [&](State& dst, const State& src) {
            std::copy(src.u.data(), src.u.data() + src.u.size(), dst.u.data());
            std::copy(src.v.data(), src.v.data() + src.v.size(), dst.v.data());
            std::copy(src.p.data(), src.p.data() + src.p.size(), dst.p.data());
            std::copy(src.theta.data(), src.theta.data() + src.theta.size(),
                      dst.theta.data());
            dst.t = src.t;
            dst.k = src.k;
        };
        copy_into(s, ck.state);
        State prev(setup->grid, setup->theta_family());
        copy_into(prev, ck.history.prev);
        hist = stepper.bootstrap(prev); // convective caches rebuilt from level k-1
        truncate_log(dir + "/residuals.log", ck.residual_lines);
        std::printf("resuming at step %ld (t = %.6g)\n", s.k, s.t);
    } else {
        save_config_file(cfg, dir + "/config.cfg");
    }

    ResidualLog log(dir + "/residuals.log", /*append=*/!fresh);
    const long k0 = s.k;
    bool converged = false;
    while (s.k - k0 < cfg.problem.max_steps) {
        const Residuals res = stepper.advance(s, hist);
        log.record(s.k, s.t, res);
        if (cfg.output.checkpoint_every > 0 && s.k % cfg.output.checkpoint_every == 0) {
            log.flush();
            write_checkpoint(s, hist, cfg.problem.grid, log.lines(),
                             dir + "/checkpoint.bin");
        }
        if (cfg.output.dump_every > 0 && s.k % cfg.output.dump_every == 0)
            dump_fields(s, setup->grid, dir + "/dump_" + std::to_string(s.k));
        if (s.k % 2000 == 0)
            std::printf("step %ld  t %.6g  res %.3e\n", s.k, s.t, res.max());
        if (res.max() <= cfg.problem.tol) {
            converged = true;
            break;
        }
    }
    log.flush();
    write_checkpoint(s, hist, cfg.problem.grid, log.lines(), dir + "/checkpoint.bin");
    dump_fields(s, setup->grid, dir + "/fields");
    write_characteristics(dir + "/characteristic_values.csv", s, setup->theta_bc,
                          cfg.problem, s.k, s.t);
    if (!converged) {
        std::fprintf(stderr, "not converged after %ld steps\n", s.k - k0);
        return kExitNotConverged;
    }
    std::printf("converged after %ld steps (t = %.6g)\n", s.k - k0, s.t);
    return 0;
}

int cmd_cavity_validate(double Ra, const std::vector<double>& grids, double tol,
                        long max_steps) {
    struct Row {
        int n;
        double u_max, v_max, nu;
    };
    std::vector<Row> rows;
    for (double gn : grids) {
        const int n = int(gn);
        ProblemConfig cfg = make_cavity(Ra, n);
        cfg.tol = tol;
        cfg.max_steps = max_steps;
        auto setup = build_setup(cfg);
        Stepper stepper(*setup, StepConfig{cfg.dt, cfg.tol, cfg.max_steps});
        State s = stepper.initial_state();
        History h = stepper.bootstrap(s);
        const RunResult rr = stepper.run_to_steady(s, h);
        if (rr.status != RunStatus::converged) {
            std::fprintf(stderr, "cavity n=%d did not converge in %ld steps\n", n,
                         rr.steps);
            return kExitNotConverged;
        }
        Row row;
        row.n = n;
        row.u_max = centerline_umax(s.u);
        row.v_max = centerline_vmax(s.v);
        row.nu = nusselt_midplane_x(s.u, s.theta, Ra, cfg.phys.Pr);
        rows.push_back(row);
        std::printf("n=%4d  u_max %.8f  v_max %.8f  Nu %.8f  Nu_wall %.8f  (%ld steps)\n",
                    n, row.u_max, row.v_max, row.nu,
                    nusselt_wall_x(s.theta, setup->theta_bc, true), rr.steps);
    }
    if (rows.size() < 3) {
        std::fprintf(stderr, "need at least three grids for convergence orders\n");
        return kExitConfig;
    }
    auto order = [](double f0, double f1, double f2) {
        return std::log2(std::abs(f0 - f1) / std::abs(f1 - f2));
    };
    for (std::size_t i = 0; i + 2 < rows.size(); ++i) {
        std::printf("orders (%d->%d->%d): u_max %.2f  v_max %.2f  Nu %.2f\n", rows[i].n,
                    rows[i + 1].n, rows[i + 2].n,
                    order(rows[i].u_max, rows[i + 1].u_max, rows[i + 2].u_max),
                    order(rows[i].v_max, rows[i + 1].v_max, rows[i + 2].v_max),
                    order(rows[i].nu, rows[i + 1].nu, rows[i + 2].nu));
    }
    return 0;
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_csv) {
    const SweepResult res = sweep_domains(spec, [](const SweepEntry& e) {
        std::printf("L=%-8g H=%-6g gamma=%d  theta_min=%.8f  steps=%ld%s\n", e.L, e.H,
                    e.gamma, e.theta_min, e.steps, e.converged ? "" : "  NOT CONVERGED");
    });
    std::ofstream csv(out_csv);
    csv << "L,H,gamma,theta_min,eps,steps,converged\n";
    for (const auto& e : res.entries) {
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%.17g,%.17g,%ld,%d\n", e.L, e.H,
                      e.gamma, e.theta_min, e.eps, e.steps, e.converged ? 1 : 0);
        csv << buf;
    }
    std::printf("reference theta_min = %.8f at (L,H) = (%g, %g)\n", res.theta_min_ref,
                res.L_ref, res.H_ref);
    std::printf("decay slopes: small-L %.3f, large-L %.3f\n", res.slope_small,
                res.slope_large);
    for (const auto& e : res.entries)
        if (!e.converged) return kExitNotConverged;
    return 0;
}

int cmd_diag(const std::string& dir) {
    RunConfig cfg = load_config_file(dir + "/config.cfg");
    auto setup = build_setup(cfg.problem);
    State s = load_fields(dir + "/fields", setup->grid);
    write_characteristics(dir + "/characteristic_values.csv", s, setup->theta_bc,
                          cfg.problem, s.k, s.t);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-volume Boussinesq solver for heat-island and cavity flows"};
    app.require_subcommand(1);

    std::string config_path, out_dir, lengths_csv, grids_csv = "32,64,128";
    double ra = 1e5, h = 1.0 / 16.0, height = 0, tol = 1e-9, dt = 0, ref_L = 0;
    long max_steps = 500000;
    int gamma = 1, threads = 0;

    CLI::App* run = app.add_subcommand("run", "run a configuration to steady state");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory override");
    run->add_option("--threads", threads, "worker thread override");

    CLI::App* resume = app.add_subcommand("resume", "continue from a checkpoint");
    resume->add_option("--out", out_dir, "run directory")->required();
    resume->add_option("--threads", threads, "worker thread override");

    CLI::App* diag = app.add_subcommand("diag", "recompute diagnostics from a dump");
    diag->add_option("--out", out_dir, "run directory")->required();

    CLI::App* cavity = app.add_subcommand("cavity-validate",
                                          "grid-convergence series on the cavity");
    cavity->add_option("--ra", ra, "Rayleigh number")->required();
    cavity->add_option("--grids", grids_csv, "comma list of grid sizes");
    cavity->add_option("--tol", tol, "stationarity tolerance");
    cavity->add_option("--max-steps", max_steps, "step limit per run");

    CLI::App* sweep = app.add_subcommand("sweep", "domain-size convergence sweep");
    sweep->add_option("--ra", ra, "Rayleigh number")->required();
    sweep->add_option("--mesh-h", h, "vertical mesh size")->required();
    sweep->add_option("--lengths", lengths_csv, "comma list of domain lengths")->required();
    sweep->add_option("--height", height, "domain height")->required();
    sweep->add_option("--gamma", gamma, "sponge switch 0/1");
    sweep->add_option("--dt", dt, "time step (0 = default)");
    sweep->add_option("--tol", tol, "stationarity tolerance");
    sweep->add_option("--max-steps", max_steps, "step limit per run");
    sweep->add_option("--ref-length", ref_L, "reference domain length");
    sweep->add_option("--out", out_dir, "output csv (default sweep.csv)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            RunConfig cfg = load_config_file(config_path);
            if (!out_dir.empty()) cfg.output.dir = out_dir;
            if (threads > 0) cfg.output.threads = threads;
            return drive_run(cfg, /*fresh=*/true);
        }
        if (resume->parsed()) {
            RunConfig cfg = load_config_file(out_dir + "/config.cfg");
            cfg.output.dir = out_dir;
            if (threads > 0) cfg.output.threads = threads;
            return drive_run(cfg, /*fresh=*/false);
        }
        if (diag->parsed()) return cmd_diag(out_dir);
        if (cavity->parsed())
            return cmd_cavity_validate(ra, parse_list(grids_csv), tol, max_steps);
        if (sweep->parsed()) {
            SweepSpec spec;
            spec.Ra = ra;
            spec.h = h;
            spec.lengths = parse_list(lengths_csv);
            spec.heights = {height};
            spec.gamma = gamma;
            spec.dt = dt;
            spec.tol = tol;
            spec.max_steps = max_steps;
            spec.ref_L = ref_L;
            return cmd_sweep(spec, out_dir.empty() ? "sweep.csv" : out_dir);
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitConfig;
    } catch (const InvalidSpec& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitConfig;
    } catch (const NonFinite& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitNumerical;
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitNumerical;
    }
    return 0;
}
