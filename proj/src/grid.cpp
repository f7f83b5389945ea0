#include "bouss/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bouss {

void GridSpec::validate() const {
    if (!(L > 0.0)) throw InvalidSpec("L must be > 0, got " + std::to_string(L));
    if (!(H > 0.0)) throw InvalidSpec("H must be > 0, got " + std::to_string(H));
    if (N < 4) throw InvalidSpec("N must be >= 4, got " + std::to_string(N));
    if (M < 4) throw InvalidSpec("M must be >= 4, got " + std::to_string(M));
    if (!uniform_x) {
        if (gamma1 < 0.0) throw InvalidSpec("gamma1 must be >= 0");
        if (!(gamma2 > 0.0)) throw InvalidSpec("gamma2 must be > 0");
    }
}

double phi_map(double s, const GridSpec& spec) {
    const double L = spec.L, g1 = spec.gamma1, g2 = spec.gamma2;
    const double den = L + g1 * std::tanh(g2 * L);
    return (2.0 * s - L + g1 * std::tanh(g2 * s) - g1 * std::tanh(g2 * (L - s))) / den;
}

bool StaggeredGrid::symmetric_x(double tol) const {
    if (N % 2 != 0) return false;
    for (int i = 0; i <= N; ++i)
        if (std::abs(x[i] + x[N - i]) > tol * L) return false;
    return true;
}

namespace {

// Smallest/largest width of the graded grid; smallest is at the center.
std::pair<double, double> extremes_of(double L, int N, double g1, double g2) {
    GridSpec s;
    s.L = L;
    s.N = N;
    s.gamma1 = g1;
    s.gamma2 = g2;
    const double ell = L / N;
    double mn = 2.0 * L, mx = 0.0, prev = 0.5 * L * phi_map(0.0, s);
    for (int i = 1; i <= N; ++i) {
        const double xi = 0.5 * L * phi_map(i * ell, s);
        const double w = xi - prev;
        mn = std::min(mn, w);
        mx = std::max(mx, w);
        prev = xi;
    }
    return {mn, mx};
}

double min_width(double L, int N, double g1, double g2) {
    return extremes_of(L, N, g1, g2).first;
}

} // namespace

std::pair<double, double> width_extremes(const GridSpec& spec) {
    if (spec.uniform_x) return {spec.L / spec.N, spec.L / spec.N};
    return extremes_of(spec.L, spec.N, spec.gamma1, spec.gamma2);
}

MappingFit fit_mapping(const GridSpec& spec, double target) {
    spec.validate();
    const double L = spec.L;
    const int N = spec.N;
    const double ell = L / N;
    if (!(target > 0.0)) throw NoFit("target width must be positive");
    if (target > ell * (1.0 + 1e-12))
        throw NoFit("target width exceeds the uniform width L/N");
    if (target >= ell * (1.0 - 1e-9)) return {0.0, 1.0}; // uniform already matches

    const double g1_cap = 1e8 * L;
    const double g2_max = 60.0 / L;

    // Smallest steepness at which the saturated map reaches the target width;
    // the gentlest admissible grading starts there.
    double lo = 0.5 / L, hi = g2_max;
    if (min_width(L, N, g1_cap, hi) > target)
        throw NoFit("target width unreachable even at maximum steepness");
    if (min_width(L, N, g1_cap, lo) <= target) {
        hi = lo;
    } else {
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (min_width(L, N, g1_cap, mid) <= target ? hi : lo) = mid;
        }
    }

    // At the feasibility threshold the map is fully saturated and the last
    // cells can shrink slightly; stepping the steepness up relaxes gamma1 and
    // restores monotone widths.
    for (double g2 = hi; g2 <= g2_max * 1.2; g2 *= 1.15) {
        // scan gamma1 upward to bracket the width, then bisect inside
        double a = 0.0, b = g1_cap;
        for (double g = 1e-3 * L; g < g1_cap; g *= 4.0) {
            if (min_width(L, N, g, g2) > target) {
                a = g;
            } else {
                b = g;
                break;
            }
        }
        for (int it = 0; it < 200 && (b - a) > 1e-14 * b; ++it) {
            const double mid = 0.5 * (a + b);
            (min_width(L, N, mid, g2) > target ? a : b) = mid;
        }
        const double g1 = b;

        const double got = min_width(L, N, g1, g2);
        if (got < 0.8 * target || got > 1.2 * target) continue;

        GridSpec fitted = spec;
        fitted.gamma1 = g1;
        fitted.gamma2 = g2;
        std::vector<double> w(N);
        double prev = 0.5 * L * phi_map(0.0, fitted);
        bool monotone = true;
        for (int i = 1; i <= N; ++i) {
            const double xi = 0.5 * L * phi_map(i * ell, fitted);
            w[i - 1] = xi - prev;
            prev = xi;
        }
        for (int i = N / 2 + 1; i < N && monotone; ++i)
            if (w[i] < w[i - 1] * (1.0 - 1e-9)) monotone = false;
        if (monotone) return {g1, g2};
    }
    throw NoFit("no parameters with monotone distortion reach width " +
                std::to_string(target));
}

StaggeredGrid build_grid(const GridSpec& spec) {
    spec.validate();
    StaggeredGrid g;
    g.L = spec.L;
    g.H = spec.H;
    g.N = spec.N;
    g.M = spec.M;
    g.h = spec.H / spec.M;

    g.x.resize(spec.N + 1);
    if (spec.uniform_x || spec.gamma1 == 0.0) {
        for (int i = 0; i <= spec.N; ++i)
            g.x[i] = -0.5 * spec.L + spec.L * (double(i) / spec.N);
    } else {
        const double ell = spec.L / spec.N;
        for (int i = 0; i <= spec.N; ++i)
            g.x[i] = 0.5 * spec.L * phi_map(i * ell, spec);
    }
    // pin the endpoints and the center exactly
    g.x[0] = -0.5 * spec.L;
    g.x[spec.N] = 0.5 * spec.L;
    if (spec.N % 2 == 0) g.x[spec.N / 2] = 0.0;

    g.y.resize(spec.M + 1);
    for (int j = 0; j <= spec.M; ++j) g.y[j] = j * g.h;
    g.y[spec.M] = spec.H;

    g.x_half.resize(spec.N);
    g.ell.resize(spec.N);
    for (int i = 0; i < spec.N; ++i) {
        g.x_half[i] = 0.5 * (g.x[i] + g.x[i + 1]);
        g.ell[i] = g.x[i + 1] - g.x[i];
        if (!(g.ell[i] > 0.0)) throw InvalidSpec("mapping produced a non-positive cell width");
    }
    g.y_half.resize(spec.M);
    for (int j = 0; j < spec.M; ++j) g.y_half[j] = (j + 0.5) * g.h;

    g.dxu.resize(spec.N - 1);
    for (int i = 0; i + 1 < spec.N; ++i) g.dxu[i] = g.x_half[i + 1] - g.x_half[i];

    return g;
}

int pick_horizontal_cells(double L, double target_dx) {
    // ell/h ratio of the saturated map whose edge-to-center width ratio is the
    // reference value 74: tau = log(8*74), ell = target / (4 tau e^-tau / tanh tau)
    const double tau = std::log(8.0 * 74.0);
    const double ell_over_h = std::tanh(tau) / (4.0 * tau * std::exp(-tau));
    int N = int(std::ceil(L / (ell_over_h * target_dx) / 4.0)) * 4;

    for (int guard = 0; guard < 64; ++guard) {
        GridSpec s;
        s.L = L;
        s.H = 1.0;
        s.N = N;
        s.M = 4;
        MappingFit f{0.0, 1.0};
        bool fitted = true;
        try {
            f = fit_mapping(s, target_dx);
        } catch (const NoFit&) {
            fitted = false;
        }
        if (fitted) {
            s.gamma1 = f.gamma1;
            s.gamma2 = f.gamma2;
            if (s.gamma1 == 0.0) s.uniform_x = true;
            const StaggeredGrid g = build_grid(s);
            double near_plate = 0.0;
            for (int i = 0; i < g.N; ++i)
                if (std::abs(g.x_half[i]) <= 1.0) near_plate = std::max(near_plate, g.ell[i]);
            if (near_plate <= 1.25 * target_dx) return N;
        }
        N = int(std::ceil(N * 1.25 / 4.0)) * 4;
    }
    throw NoFit("could not size a heat-island grid for L=" + std::to_string(L));
}

} // namespace bouss
