#include "bouss/io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace bouss {

namespace {

void write_doubles(std::ofstream& out, const double* p, std::size_t n,
                   const std::string& ctx) {
    out.write(reinterpret_cast<const char*>(p), std::streamsize(n * sizeof(double)));
    if (!out) throw IoError("short write: " + ctx);
}

void read_doubles(std::ifstream& in, double* p, std::size_t n, const std::string& ctx) {
    in.read(reinterpret_cast<char*>(p), std::streamsize(n * sizeof(double)));
    if (!in) throw IoError("short read: " + ctx);
}

void dump_binary(const ScalarField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "'");
    write_doubles(out, f.data(), f.size(), path);
}

void load_binary(ScalarField& f, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    read_doubles(in, f.data(), f.size(), path);
    in.peek();
    if (!in.eof()) throw IoError("trailing bytes in '" + path + "'");
}

} // namespace

void dump_fields(const State& s, const StaggeredGrid& grid, const std::string& dir) {
    fs::create_directories(dir);
    {
        std::ofstream h(dir + "/header.txt");
        if (!h) throw IoError("cannot open '" + dir + "/header.txt'");
        char buf[128];
        std::snprintf(buf, sizeof(buf), "N %d\nM %d\nL %.17g\nH %.17g\n", grid.N, grid.M,
                      grid.L, grid.H);
        h << buf;
        std::snprintf(buf, sizeof(buf), "t %.17g\nk %ld\ntheta_rows %d\n", s.t, s.k,
                      s.theta.rows());
        h << buf;
        h << "x";
        for (double v : grid.x) {
            std::snprintf(buf, sizeof(buf), " %.17g", v);
            h << buf;
        }
        h << "\ny";
        for (double v : grid.y) {
            std::snprintf(buf, sizeof(buf), " %.17g", v);
            h << buf;
        }
        h << "\n";
        if (!h) throw IoError("failed writing '" + dir + "/header.txt'");
    }
    dump_binary(s.u, dir + "/u.bin");
    dump_binary(s.v, dir + "/v.bin");
    dump_binary(s.p, dir + "/p.bin");
    dump_binary(s.theta, dir + "/theta.bin");

    // all four unknowns interpolated to the theta lattice for profile plots
    std::ofstream csv(dir + "/profiles.csv");
    if (!csv) throw IoError("cannot open '" + dir + "/profiles.csv'");
    csv << "i,j,x,y,u,v,p,theta\n";
    const bool walls = s.theta.family() == Family::theta_walls;
    const int N = grid.N, M = grid.M;
    char line[256];
    for (int r = 0; r < s.theta.rows(); ++r) {
        const int j = walls ? r : r + 1; // theta row at y[j]
        for (int c = 0; c < N; ++c) {
            auto u_at = [&](int jj, int cc) {
                return (cc >= 1 && cc <= N - 1 && jj >= 1 && jj <= M)
                           ? s.u(jj - 1, cc - 1)
                           : 0.0;
            };
            // u averaged from the four nodes around (x_half[c], y[j])
            const double um = 0.25 * (u_at(j, c) + u_at(j + 1, c) + u_at(j, c + 1) +
                                      u_at(j + 1, c + 1));
            auto v_at = [&](int jj) { return (jj >= 1 && jj <= M - 1) ? s.v(jj - 1, c) : 0.0; };
            const double vm = v_at(j);
            auto p_at = [&](int jj) {
                return (jj >= 1 && jj <= M) ? s.p(jj - 1, c) : s.p(jj < 1 ? 0 : M - 1, c);
            };
            const double pm = 0.5 * (p_at(j) + p_at(j + 1));
            std::snprintf(line, sizeof(line), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          c, j, grid.x_half[c], grid.y[j], um, vm, pm, s.theta(r, c));
            csv << line;
        }
    }
    if (!csv) throw IoError("failed writing '" + dir + "/profiles.csv'");
}

State load_fields(const std::string& dir, const StaggeredGrid& grid) {
    std::ifstream h(dir + "/header.txt");
    if (!h) throw IoError("cannot open '" + dir + "/header.txt'");
    std::string key;
    int N = 0, M = 0, theta_rows = 0;
    double L = 0, H = 0, t = 0;
    long k = 0;
    h >> key >> N >> key >> M >> key >> L >> key >> H >> key >> t >> key >> k >> key >>
        theta_rows;
    if (!h) throw IoError("malformed header in '" + dir + "'");
    if (N != grid.N || M != grid.M)
        throw IoError("dump in '" + dir + "' belongs to a different grid");

    State s(grid, theta_rows == M + 1 ? Family::theta_walls : Family::v);
    s.t = t;
    s.k = k;
    load_binary(s.u, dir + "/u.bin");
    load_binary(s.v, dir + "/v.bin");
    load_binary(s.p, dir + "/p.bin");
    load_binary(s.theta, dir + "/theta.bin");
    return s;
}

namespace {

constexpr char kCkptMagic[8] = {'B', 'O', 'U', 'S', 'S', 'C', 'K', '1'};

void put_field(std::ofstream& out, const ScalarField& f) {
    const std::int64_t dims[2] = {f.rows(), f.cols()};
    out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    write_doubles(out, f.data(), f.size(), "checkpoint field");
}

void get_field(std::ifstream& in, ScalarField& f) {
    std::int64_t dims[2];
    in.read(reinterpret_cast<char*>(dims), sizeof(dims));
    if (!in || dims[0] != f.rows() || dims[1] != f.cols())
        throw IoError("checkpoint field shape mismatch");
    read_doubles(in, f.data(), f.size(), "checkpoint field");
}

} // namespace

void write_checkpoint(const State& s, const History& h, const GridSpec& spec,
                      long residual_lines, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot open '" + tmp + "'");
        out.write(kCkptMagic, sizeof(kCkptMagic));
        const StaggeredGrid& g = s.u.grid();
        struct Head {
            double L, H, gamma1, gamma2;
            std::int64_t N, M, uniform, theta_walls, k, res_lines;
            double t;
        } head{spec.L,
               spec.H,
               spec.gamma1,
               spec.gamma2,
               spec.N,
               spec.M,
               spec.uniform_x ? 1 : 0,
               s.theta.family() == Family::theta_walls ? 1 : 0,
               s.k,
               residual_lines,
               s.t};
        out.write(reinterpret_cast<const char*>(&head), sizeof(head));
        write_doubles(out, g.x.data(), g.x.size(), "grid x");
        write_doubles(out, g.y.data(), g.y.size(), "grid y");
        put_field(out, s.u);
        put_field(out, s.v);
        put_field(out, s.p);
        put_field(out, s.theta);
        put_field(out, h.prev.u);
        put_field(out, h.prev.v);
        put_field(out, h.prev.p);
        put_field(out, h.prev.theta);
        const double prev_t[2] = {h.prev.t, double(h.prev.k)};
        out.write(reinterpret_cast<const char*>(prev_t), sizeof(prev_t));
        if (!out) throw IoError("failed writing '" + tmp + "'");
    }
    fs::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint '" + path + "'");
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kCkptMagic, sizeof(magic)) != 0)
        throw IoError("'" + path + "' is not a checkpoint");
    struct Head {
        double L, H, gamma1, gamma2;
        std::int64_t N, M, uniform, theta_walls, k, res_lines;
        double t;
    } head;
    in.read(reinterpret_cast<char*>(&head), sizeof(head));
    if (!in) throw IoError("truncated checkpoint '" + path + "'");

    Checkpoint ck;
    ck.spec = GridSpec{head.L, head.H, int(head.N),    int(head.M),
                       head.gamma1, head.gamma2, head.uniform != 0};
    ck.grid = std::make_unique<StaggeredGrid>(build_grid(ck.spec));
    // stored coordinates override the rebuilt ones for bit-exact restart
    read_doubles(in, ck.grid->x.data(), ck.grid->x.size(), "grid x");
    read_doubles(in, ck.grid->y.data(), ck.grid->y.size(), "grid y");
    for (int i = 0; i < ck.grid->N; ++i) {
        ck.grid->x_half[i] = 0.5 * (ck.grid->x[i] + ck.grid->x[i + 1]);
        ck.grid->ell[i] = ck.grid->x[i + 1] - ck.grid->x[i];
    }
    for (int i = 0; i + 1 < ck.grid->N; ++i)
        ck.grid->dxu[i] = ck.grid->x_half[i + 1] - ck.grid->x_half[i];

    const Family tf = head.theta_walls ? Family::theta_walls : Family::v;
    ck.state = State(*ck.grid, tf);
    ck.state.k = head.k;
    ck.state.t = head.t;
    ck.residual_lines = head.res_lines;
    get_field(in, ck.state.u);
    get_field(in, ck.state.v);
    get_field(in, ck.state.p);
    get_field(in, ck.state.theta);
    ck.history.prev = State(*ck.grid, tf);
    get_field(in, ck.history.prev.u);
    get_field(in, ck.history.prev.v);
    get_field(in, ck.history.prev.p);
    get_field(in, ck.history.prev.theta);
    double prev_t[2];
    in.read(reinterpret_cast<char*>(prev_t), sizeof(prev_t));
    if (!in) throw IoError("truncated checkpoint '" + path + "'");
    ck.history.prev.t = prev_t[0];
    ck.history.prev.k = long(prev_t[1]);
    return ck;
}

ResidualLog::ResidualLog(const std::string& path, bool append, long flush_every)
    : path_(path), flush_every_(flush_every) {
    if (!append) {
        std::ofstream out(path_, std::ios::trunc);
        if (!out) throw IoError("cannot open residual log '" + path_ + "'");
    } else if (fs::exists(path_)) {
        std::ifstream in(path_);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) ++lines_;
    }
}

ResidualLog::~ResidualLog() {
    try {
        flush();
    } catch (...) {
    }
}

void ResidualLog::record(long step, double t, const Residuals& r) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%ld %.17g %.17g %.17g %.17g\n", step, t, r.u, r.v,
                  r.theta);
    buffer_ += buf;
    ++pending_;
    ++lines_;
    if (pending_ >= flush_every_) flush();
}

void ResidualLog::flush() {
    if (buffer_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw IoError("cannot append to '" + path_ + "'");
    out << buffer_;
    if (!out) throw IoError("failed writing '" + path_ + "'");
    buffer_.clear();
    pending_ = 0;
}

void truncate_log(const std::string& path, long n) {
    if (!fs::exists(path)) return;
    std::ifstream in(path);
    std::string keep, line;
    long count = 0;
    while (count < n && std::getline(in, line)) {
        keep += line;
        keep += '\n';
        ++count;
    }
    in.close();
    std::ofstream out(path, std::ios::trunc);
    out << keep;
}

} // namespace bouss
