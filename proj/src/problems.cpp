#include "bouss/problems.hpp"

#include <cmath>
#include <cstdio>
#include <map>

namespace bouss {

const char* problem_kind_name(ProblemKind k) {
    return k == ProblemKind::heat_island ? "heat-island" : "cavity";
}

void PhysParams::validate() const {
    if (!(Ra > 0.0)) throw InvalidSpec("Ra must be > 0");
    if (!(Pr > 0.0)) throw InvalidSpec("Pr must be > 0");
    if (!(alpha >= 0.0)) throw InvalidSpec("alpha must be >= 0");
    if (!(zeta > 0.0)) throw InvalidSpec("zeta must be > 0");
}

void ProblemConfig::validate() const {
    phys.validate();
    grid.validate();
    sponge.validate();
    if (!(dt > 0.0)) throw InvalidSpec("dt must be > 0");
    if (!(tol >= 1e-12 && tol <= 1e-6)) throw InvalidSpec("tol must be in [1e-12, 1e-6]");
    if (max_steps < 1) throw InvalidSpec("max_steps must be >= 1");
    if (kind == ProblemKind::cavity) {
        if (phys.alpha != 0.0) throw InvalidSpec("cavity requires alpha = 0");
        if (sponge.gamma != 0) throw InvalidSpec("cavity requires gamma = 0");
        if (!grid.uniform_x) throw InvalidSpec("cavity requires a uniform grid");
        if (grid.L != 1.0 || grid.H != 1.0) throw InvalidSpec("cavity domain is the unit square");
    } else {
        if (phys.alpha != 1.0) throw InvalidSpec("heat island fixes alpha = 1");
    }
}

namespace {

struct DomainRow {
    double Lc, Hc, Lref, Href;
};

// rows keyed by (Ra exponent, 1/h)
const std::map<std::pair<int, int>, DomainRow>& domain_table() {
    static const std::map<std::pair<int, int>, DomainRow> t = {
        {{3, 16}, {960, 8, 3200, 12}},   {{3, 32}, {2560, 10, 6200, 16}},
        {{3, 64}, {5200, 14, 10000, 20}}, {{4, 16}, {640, 5, 3200, 8}},
        {{4, 32}, {1920, 6, 6200, 10}},  {{4, 64}, {4200, 8, 10000, 12}},
        {{5, 16}, {480, 3, 3200, 6}},    {{5, 32}, {1280, 4, 6200, 8}},
        {{5, 64}, {3200, 6, 10000, 10}},
    };
    return t;
}

int ra_exponent(double Ra) {
    const double e = std::log10(Ra);
    const int ie = int(std::lround(e));
    if (std::abs(e - ie) > 1e-9 || ie < 3 || ie > 5)
        throw InvalidSpec("tabulated domains exist for Ra = 1e3, 1e4, 1e5 only");
    return ie;
}

const DomainRow& domain_row(double Ra, int inv_h) {
    const auto it = domain_table().find({ra_exponent(Ra), inv_h});
    if (it == domain_table().end())
        throw InvalidSpec("no tabulated domain for 1/h = " + std::to_string(inv_h));
    return it->second;
}

} // namespace

std::pair<double, double> min_domain(double Ra, int inv_h) {
    const DomainRow& r = domain_row(Ra, inv_h);
    return {r.Lc, r.Hc};
}

std::pair<double, double> ref_domain(double Ra, int inv_h) {
    const DomainRow& r = domain_row(Ra, inv_h);
    return {r.Lref, r.Href};
}

double sponge_min_length(double Ra, int inv_h) {
    // measured values at Ra = 1e5; one third of the standard length (rounded
    // up to hundreds) elsewhere
    if (ra_exponent(Ra) == 5) {
        if (inv_h == 16) return 120;
        if (inv_h == 32) return 400;
        if (inv_h == 64) return 900;
    }
    const double Lc = min_domain(Ra, inv_h).first;
    return std::ceil(Lc / 3.0 / 100.0) * 100.0;
}

double default_dt(double Ra) {
    if (Ra <= 1e3) return 0.1;
    if (Ra <= 1e4) return 0.05;
    return 0.025;
}

ProblemConfig make_heat_island(double Ra, double h, double L, double H, bool sponge_on) {
    if (!(Ra > 0.0) || !(h > 0.0)) throw InvalidSpec("Ra and h must be positive");
    ProblemConfig cfg;
    cfg.kind = ProblemKind::heat_island;
    cfg.phys.Ra = Ra;
    cfg.phys.alpha = 1.0;
    cfg.sponge.gamma = sponge_on ? 1 : 0;
    cfg.dt = default_dt(Ra);

    const int inv_h = int(std::lround(1.0 / h));
    if (L <= 0.0)
        L = sponge_on ? sponge_min_length(Ra, inv_h) : min_domain(Ra, inv_h).first;
    if (H <= 0.0) H = min_domain(Ra, inv_h).second;

    cfg.grid.L = L;
    cfg.grid.H = H;
    cfg.grid.M = std::max(4, int(std::lround(H / h)));
    cfg.grid.N = pick_horizontal_cells(L, h);
    cfg.grid.uniform_x = false;
    const MappingFit fit = fit_mapping(cfg.grid, h);
    cfg.grid.gamma1 = fit.gamma1;
    cfg.grid.gamma2 = fit.gamma2;
    if (fit.gamma1 == 0.0) cfg.grid.uniform_x = true;
    cfg.validate();
    return cfg;
}

ProblemConfig make_cavity(double Ra, int n) {
    if (n < 16) throw InvalidSpec("cavity grid must have n >= 16");
    ProblemConfig cfg;
    cfg.kind = ProblemKind::cavity;
    cfg.phys.Ra = Ra;
    cfg.phys.alpha = 0.0;
    cfg.sponge.gamma = 0;
    cfg.grid = GridSpec{1.0, 1.0, n, n, 0.0, 1.0, true};
    // explicit AB2 convection limits the step near the boundary-layer velocity
    cfg.dt = std::min(0.05, 0.4 / (0.3 * n));
    cfg.validate();
    return cfg;
}

ProblemConfig preset_config(const std::string& name) {
    if (name == "ra1e3-fine" || name == "ra1e4-fine" || name == "ra1e5-fine") {
        ProblemConfig cfg;
        cfg.kind = ProblemKind::heat_island;
        cfg.phys.alpha = 1.0;
        cfg.sponge.gamma = 1;
        if (name == "ra1e3-fine") {
            cfg.phys.Ra = 1e3;
            cfg.grid.L = 4400;
            cfg.grid.H = 18;
            cfg.grid.N = 19000;
            cfg.grid.M = 2304;
            cfg.dt = 0.1;
        } else if (name == "ra1e4-fine") {
            cfg.phys.Ra = 1e4;
            cfg.grid.L = 3600;
            cfg.grid.H = 12;
            cfg.grid.N = 16500;
            cfg.grid.M = 1536;
            cfg.dt = 0.05;
        } else {
            cfg.phys.Ra = 1e5;
            cfg.grid.L = 2560;
            cfg.grid.H = 10;
            cfg.grid.N = 12000;
            cfg.grid.M = 1280;
            cfg.dt = 0.025;
        }
        const MappingFit fit = fit_mapping(cfg.grid, 1.0 / 128.0);
        cfg.grid.gamma1 = fit.gamma1;
        cfg.grid.gamma2 = fit.gamma2;
        cfg.validate();
        return cfg;
    }
    throw InvalidSpec("unknown preset '" + name + "'");
}

State ProblemSetup::initial_state() const {
    State s(grid, theta_family());
    s.projected = true; // zero state is divergence free
    return s;
}

std::unique_ptr<ProblemSetup> build_setup(const ProblemConfig& config) {
    config.validate();
    auto setup = std::make_unique<ProblemSetup>();
    setup->kind = config.kind;
    setup->phys = config.phys;
    setup->sponge = config.sponge;
    setup->grid = build_grid(config.grid);
    const StaggeredGrid& g = setup->grid;

    ThetaBC& bc = setup->theta_bc;
    if (config.kind == ProblemKind::heat_island) {
        bc.ywalls = ThetaBC::YWalls::dirichlet;
        bc.bottom.resize(g.N);
        for (int c = 0; c < g.N; ++c) bc.bottom[c] = ground_theta(g.x_half[c], config.phys.zeta);
        bc.top.assign(g.N, 0.0);
        bc.left.assign(g.M - 1, 0.0);
        bc.right.assign(g.M - 1, 0.0);
    } else {
        bc.ywalls = ThetaBC::YWalls::neumann;
        bc.left.assign(g.M + 1, 0.5);
        bc.right.assign(g.M + 1, -0.5);
    }
    setup->psi = sponge_profile(g, config.sponge);
    return setup;
}

} // namespace bouss
