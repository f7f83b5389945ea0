#include "bouss/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <type_traits>
#include <vector>

namespace bouss {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Parser {
    std::map<std::string, std::string> kv; // "section.key" -> value
    std::map<std::string, int> lines;
    std::vector<std::string> errors;

    void scan(const std::string& text) {
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') {
                    errors.push_back("line " + std::to_string(lineno) +
                                     ": malformed section header");
                    continue;
                }
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
                continue;
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key.empty() || val.empty()) {
                errors.push_back("line " + std::to_string(lineno) + ": empty key or value");
                continue;
            }
            const std::string full = section + "." + key;
            if (kv.count(full))
                errors.push_back("line " + std::to_string(lineno) + ": duplicate key '" +
                                 full + "'");
            kv[full] = val;
            lines[full] = lineno;
        }
    }

    bool has(const std::string& k) const { return kv.count(k) > 0; }

    std::string take(const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) return {};
        std::string v = it->second;
        kv.erase(it);
        return v;
    }

    void bad(const std::string& k, const std::string& why) {
        errors.push_back("key '" + k + "': " + why);
    }

    template <typename T>
    void number(const std::string& k, T& out) {
        if (!has(k)) return;
        const std::string v = take(k);
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            if constexpr (std::is_integral_v<T>) {
                if (std::floor(d) != d) {
                    bad(k, "expected an integer, got '" + v + "'");
                    return;
                }
            }
            out = static_cast<T>(d);
        } catch (const std::exception&) {
            bad(k, "not a number: '" + v + "'");
        }
    }

    void boolean(const std::string& k, bool& out) {
        if (!has(k)) return;
        const std::string v = take(k);
        if (v == "true" || v == "1") out = true;
        else if (v == "false" || v == "0") out = false;
        else bad(k, "expected true/false, got '" + v + "'");
    }
};

} // namespace

RunConfig parse_config(const std::string& text) {
    Parser p;
    p.scan(text);

    RunConfig cfg;
    ProblemConfig& pc = cfg.problem;

    // preset and kind decide the baseline before overrides apply
    std::string kind = p.has("problem.kind") ? p.take("problem.kind") : "";
    const std::string preset = p.has("problem.preset") ? p.take("problem.preset") : "";
    if (!preset.empty()) {
        try {
            pc = preset_config(preset);
            if (kind.empty()) kind = problem_kind_name(pc.kind);
        } catch (const InvalidSpec& e) {
            p.bad("problem.preset", e.what());
        }
    }
    bool is_cavity = false;
    if (kind == "cavity") {
        is_cavity = true;
    } else if (kind == "heat-island" || (kind.empty() && !preset.empty())) {
        is_cavity = false;
    } else if (kind.empty()) {
        p.errors.push_back("missing required key 'problem.kind'");
    } else {
        p.bad("problem.kind", "must be heat-island or cavity, got '" + kind + "'");
    }

    if (preset.empty()) {
        if (is_cavity) {
            pc.kind = ProblemKind::cavity;
            pc.phys.alpha = 0.0;
            pc.sponge.gamma = 0;
            pc.grid = GridSpec{1.0, 1.0, 64, 64, 0.0, 1.0, true};
            pc.dt = 0.0; // resolved after grid size is known
        } else {
            pc.kind = ProblemKind::heat_island;
            pc.phys.alpha = 1.0;
            pc.sponge.gamma = 1;
            pc.dt = 0.0;
        }
    }

    p.number("problem.ra", pc.phys.Ra);
    p.number("problem.pr", pc.phys.Pr);
    p.number("problem.alpha", pc.phys.alpha);
    p.number("problem.zeta", pc.phys.zeta);

    double target_dx = 0.0, hkey = 0.0;
    const bool explicit_N = p.has("grid.N");
    p.number("grid.h", hkey);
    p.number("grid.target_dx", target_dx);
    p.number("grid.L", pc.grid.L);
    p.number("grid.H", pc.grid.H);
    if (is_cavity) {
        int n = pc.grid.N;
        p.number("grid.n", n);
        pc.grid.N = pc.grid.M = n;
    }
    p.number("grid.N", pc.grid.N);
    p.number("grid.M", pc.grid.M);
    p.boolean("grid.uniform_x", pc.grid.uniform_x);
    p.number("grid.gamma1", pc.grid.gamma1);
    p.number("grid.gamma2", pc.grid.gamma2);

    p.number("sponge.gamma", pc.sponge.gamma);
    p.number("sponge.sigma", pc.sponge.sigma);
    p.number("sponge.p", pc.sponge.p);

    p.number("stepping.dt", pc.dt);
    p.number("stepping.tol", pc.tol);
    p.number("stepping.max_steps", pc.max_steps);

    if (p.has("output.dir")) cfg.output.dir = p.take("output.dir");
    p.number("output.dump_every", cfg.output.dump_every);
    p.number("output.checkpoint_every", cfg.output.checkpoint_every);
    p.number("output.threads", cfg.output.threads);

    for (const auto& [k, v] : p.kv)
        p.errors.push_back("unknown key '" + k + "' (line " +
                           std::to_string(p.lines[k]) + ")");

    // derived quantities once all overrides are in; validation errors join
    // the collected list so one parse reports everything it can
    {
        try {
            if (!is_cavity && hkey > 0.0) {
                pc.grid.M = std::max(4, int(std::lround(pc.grid.H / hkey)));
                if (target_dx <= 0.0) target_dx = hkey;
            }
            if (!is_cavity && target_dx > 0.0 && !pc.grid.uniform_x) {
                if (!explicit_N && preset.empty())
                    pc.grid.N = pick_horizontal_cells(pc.grid.L, target_dx);
                const MappingFit fit = fit_mapping(pc.grid, target_dx);
                pc.grid.gamma1 = fit.gamma1;
                pc.grid.gamma2 = fit.gamma2;
                if (fit.gamma1 == 0.0) pc.grid.uniform_x = true;
            }
            if (pc.dt <= 0.0)
                pc.dt = is_cavity ? make_cavity(pc.phys.Ra, pc.grid.N).dt
                                  : default_dt(pc.phys.Ra);
            pc.validate();
        } catch (const Error& e) {
            p.errors.push_back(e.what());
        }
    }

    if (!p.errors.empty()) {
        std::string all;
        for (const auto& e : p.errors) all += (all.empty() ? "" : "; ") + e;
        throw ParseError(all);
    }
    return cfg;
}

std::string emit_config(const RunConfig& cfg) {
    const ProblemConfig& pc = cfg.problem;
    std::ostringstream out;
    out << "[problem]\n";
    out << "kind = " << problem_kind_name(pc.kind) << "\n";
    out << "ra = " << fmt(pc.phys.Ra) << "\n";
    out << "pr = " << fmt(pc.phys.Pr) << "\n";
    out << "alpha = " << fmt(pc.phys.alpha) << "\n";
    out << "zeta = " << fmt(pc.phys.zeta) << "\n";
    out << "\n[grid]\n";
    out << "L = " << fmt(pc.grid.L) << "\n";
    out << "H = " << fmt(pc.grid.H) << "\n";
    out << "N = " << pc.grid.N << "\n";
    out << "M = " << pc.grid.M << "\n";
    out << "uniform_x = " << (pc.grid.uniform_x ? "true" : "false") << "\n";
    if (!pc.grid.uniform_x) {
        out << "gamma1 = " << fmt(pc.grid.gamma1) << "\n";
        out << "gamma2 = " << fmt(pc.grid.gamma2) << "\n";
    }
    out << "\n[sponge]\n";
    out << "gamma = " << pc.sponge.gamma << "\n";
    out << "sigma = " << fmt(pc.sponge.sigma) << "\n";
    out << "p = " << fmt(pc.sponge.p) << "\n";
    out << "\n[stepping]\n";
    out << "dt = " << fmt(pc.dt) << "\n";
    out << "tol = " << fmt(pc.tol) << "\n";
    out << "max_steps = " << pc.max_steps << "\n";
    out << "\n[output]\n";
    out << "dir = " << cfg.output.dir << "\n";
    out << "dump_every = " << cfg.output.dump_every << "\n";
    out << "checkpoint_every = " << cfg.output.checkpoint_every << "\n";
    out << "threads = " << cfg.output.threads << "\n";
    return out.str();
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void save_config_file(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write config '" + path + "'");
    out << emit_config(cfg);
    if (!out) throw IoError("failed writing config '" + path + "'");
}

} // namespace bouss
