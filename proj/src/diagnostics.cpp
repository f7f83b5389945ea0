#include "bouss/diagnostics.hpp"

#include <cmath>
#include <cstdio>

namespace bouss {

FieldExtrema extrema(const ScalarField& f) {
    FieldExtrema e;
    e.min.value = f(0, 0);
    e.max.value = f(0, 0);
    for (int r = 0; r < f.rows(); ++r) {
        for (int c = 0; c < f.cols(); ++c) {
            const double v = f(r, c);
            if (v < e.min.value) e.min = {v, 0, 0, r, c};
            if (v > e.max.value) e.max = {v, 0, 0, r, c};
        }
    }
    e.min.x = f.x_of(e.min.c);
    e.min.y = f.y_of(e.min.r);
    e.max.x = f.x_of(e.max.c);
    e.max.y = f.y_of(e.max.r);
    return e;
}

namespace {

// 1D quadratic through (x0,f0),(x1,f1),(x2,f2); returns (x*, f*) of the vertex
// or the middle sample when the parabola degenerates.
std::pair<double, double> parabola_vertex(double x0, double f0, double x1, double f1,
                                          double x2, double f2) {
    const double d01 = (f1 - f0) / (x1 - x0);
    const double d12 = (f2 - f1) / (x2 - x1);
    const double curv = (d12 - d01) / (x2 - x0);
    if (curv == 0.0) return {x1, f1};
    // vertex of the Newton form f = f0 + d01 (x-x0) + curv (x-x0)(x-x1)
    const double xs = 0.5 * (x0 + x1 - d01 / curv);
    const double fs = f0 + d01 * (xs - x0) + curv * (xs - x0) * (xs - x1);
    return {xs, fs};
}

Extremum refine(const ScalarField& f, Extremum e) {
    const int r = e.r, c = e.c;
    if (r <= 0 || r >= f.rows() - 1 || c <= 0 || c >= f.cols() - 1) return e;
    auto [xs, fx] =
        parabola_vertex(f.x_of(c - 1), f(r, c - 1), f.x_of(c), f(r, c), f.x_of(c + 1),
                        f(r, c + 1));
    auto [ys, fy] =
        parabola_vertex(f.y_of(r - 1), f(r - 1, c), f.y_of(r), f(r, c), f.y_of(r + 1),
                        f(r + 1, c));
    e.value = fx + fy - f(r, c); // separable quadratic correction
    e.x = xs;
    e.y = ys;
    return e;
}

} // namespace

FieldExtrema extrema_refined(const ScalarField& f) {
    FieldExtrema e = extrema(f);
    e.min = refine(f, e.min);
    e.max = refine(f, e.max);
    return e;
}

double nusselt_ground_integral(const ScalarField& theta, const ThetaBC& bc) {
    require_family(theta, Family::v, "nusselt_ground");
    if (bc.ywalls != ThetaBC::YWalls::dirichlet)
        throw ShapeMismatch("ground Nusselt needs Dirichlet ground data");
    const StaggeredGrid& g = theta.grid();
    const double h = g.h;
    double total = 0.0;
    for (int c = 0; c < g.N; ++c) {
        const double d =
            (-3.0 * bc.bottom[c] + 4.0 * theta(0, c) - theta(1, c)) / (2.0 * h);
        total += g.ell[c] * d;
    }
    return -total;
}

double nusselt_ground(const ScalarField& theta, const ThetaBC& bc) {
    return nusselt_ground_integral(theta, bc) / theta.grid().L;
}

double nusselt_wall_x(const ScalarField& theta, const ThetaBC& bc, bool left) {
    require_family(theta, Family::theta_walls, "nusselt_wall_x");
    const StaggeredGrid& g = theta.grid();
    const int C = theta.cols();
    // sample abscissae measured from the wall: 0, ell/2, ell + ell/2
    const double x1 = left ? (g.x_half[0] - g.x[0]) : (g.x[g.N] - g.x_half[g.N - 1]);
    const double x2 = left ? (g.x_half[1] - g.x[0]) : (g.x[g.N] - g.x_half[g.N - 2]);
    const int c1 = left ? 0 : C - 1;
    const int c2 = left ? 1 : C - 2;
    const double sgn = left ? 1.0 : -1.0;

    double total = 0.0;
    double prev = 0.0;
    for (int r = 0; r < theta.rows(); ++r) {
        const double f0 = left ? bc.left[r] : bc.right[r];
        const double f1 = theta(r, c1);
        const double f2 = theta(r, c2);
        // derivative at the wall of the quadratic through unevenly spaced samples
        const double d = (-(x1 + x2) / (x1 * x2)) * f0 +
                         (x2 / (x1 * (x2 - x1))) * f1 - (x1 / (x2 * (x2 - x1))) * f2;
        const double dn = sgn * d;
        if (r > 0) total += 0.5 * (prev + dn) * g.h; // trapezoid between rows
        prev = dn;
    }
    return -total / g.H;
}

double nusselt_midplane_x(const ScalarField& u, const ScalarField& theta, double Ra,
                          double Pr) {
    require_family(theta, Family::theta_walls, "nusselt_midplane_x");
    const StaggeredGrid& g = u.grid();
    if (g.N % 2 != 0) throw ShapeMismatch("mid-plane flux needs an even cell count");
    const int cu = g.N / 2 - 1;  // u column on the midline
    const int cl = g.N / 2 - 1, cr = g.N / 2; // theta columns straddling it
    const double dx = g.x_half[cr] - g.x_half[cl];
    const double rt = std::sqrt(Ra * Pr);
    double total = 0.0;
    for (int r = 0; r < u.rows(); ++r) {
        // theta rows at y[r], y[r+1] bracket the u node at y_half[r]
        const double th = 0.25 * (theta(r, cl) + theta(r, cr) + theta(r + 1, cl) +
                                  theta(r + 1, cr));
        const double dthdx = 0.5 *
                             ((theta(r, cr) - theta(r, cl)) +
                              (theta(r + 1, cr) - theta(r + 1, cl))) /
                             dx;
        total += g.h * (rt * u(r, cu) * th - dthdx);
    }
    return total / g.H;
}

namespace {

double line_peak(const std::vector<double>& xs, const std::vector<double>& fs) {
    double best = fs[0];
    for (std::size_t i = 1; i + 1 < fs.size(); ++i) {
        best = std::max(best, fs[i]);
        if (fs[i] > fs[i - 1] && fs[i] > fs[i + 1])
            best = std::max(best, parabola_vertex(xs[i - 1], fs[i - 1], xs[i], fs[i],
                                                  xs[i + 1], fs[i + 1])
                                      .second);
    }
    return std::max(best, fs.back());
}

} // namespace

double centerline_umax(const ScalarField& u) {
    require_family(u, Family::u, "centerline_umax");
    const StaggeredGrid& g = u.grid();
    if (g.N % 2 != 0) throw ShapeMismatch("midline extrema need an even cell count");
    const int c = g.N / 2 - 1;
    std::vector<double> ys(u.rows()), fs(u.rows());
    for (int r = 0; r < u.rows(); ++r) {
        ys[r] = u.y_of(r);
        fs[r] = u(r, c);
    }
    return line_peak(ys, fs);
}

double centerline_vmax(const ScalarField& v) {
    require_family(v, Family::v, "centerline_vmax");
    const StaggeredGrid& g = v.grid();
    if (g.M % 2 != 0) throw ShapeMismatch("midline extrema need an even cell count");
    const int r = g.M / 2 - 1;
    std::vector<double> xs(v.cols()), fs(v.cols());
    for (int c = 0; c < v.cols(); ++c) {
        xs[c] = v.x_of(c);
        fs[c] = v(r, c);
    }
    return line_peak(xs, fs);
}

ScalarField vorticity(const ScalarField& u, const ScalarField& v) {
    require_family(u, Family::u, "vorticity");
    require_family(v, Family::v, "vorticity");
    const StaggeredGrid& g = u.grid();
    const int N = g.N, M = g.M;
    ScalarField w(Family::corner, g);

    auto v_at = [&](int r, int c) { // v at (x_half[c], y[r]) with wall rows zero
        return (r >= 1 && r <= M - 1) ? v(r - 1, c) : 0.0;
    };
    auto u_at = [&](int r, int c) { // u at (x[c], y_half[r]) with wall columns zero
        return (c >= 1 && c <= N - 1) ? u(r, c - 1) : 0.0;
    };

    for (int r = 0; r <= M; ++r) {
        for (int c = 0; c <= N; ++c) {
            double dvdx;
            if (r == 0 || r == M) {
                dvdx = 0.0; // v vanishes along the horizontal walls
            } else if (c == 0) {
                dvdx = 2.0 * v_at(r, 0) / g.ell[0];
            } else if (c == N) {
                dvdx = -2.0 * v_at(r, N - 1) / g.ell[N - 1];
            } else {
                dvdx = (v_at(r, c) - v_at(r, c - 1)) / g.dxu[c - 1];
            }
            double dudy;
            if (c == 0 || c == N) {
                dudy = 0.0; // u vanishes along the vertical walls
            } else if (r == 0) {
                dudy = 2.0 * u_at(0, c) / g.h;
            } else if (r == M) {
                dudy = -2.0 * u_at(M - 1, c) / g.h;
            } else {
                dudy = (u_at(r, c) - u_at(r - 1, c)) / g.h;
            }
            w(r, c) = dvdx - dudy;
        }
    }
    return w;
}

ScalarField streamfunction(const ScalarField& u, const ScalarField& v,
                           const SolverPlan& corner_plan) {
    const StaggeredGrid& g = u.grid();
    const ScalarField w = vorticity(u, v);
    ScalarField rhs(Family::corner_in, g);
    for (int r = 0; r < rhs.rows(); ++r)
        for (int c = 0; c < rhs.cols(); ++c) rhs(r, c) = w(r + 1, c + 1);
    return corner_plan.solve(rhs);
}

double epsilon_LH(double theta_min, double theta_min_ref) {
    if (theta_min_ref == 0.0) throw ZeroReference("epsilon_LH reference is zero");
    return std::abs(theta_min - theta_min_ref) / std::abs(theta_min_ref);
}

double symmetry_defect(const State& s) {
    auto defect = [](const ScalarField& f, Parity p) {
        const ScalarField m = mirror_x(f, p);
        double num = 0.0;
        const double den = f.max_abs();
        if (den == 0.0) return 0.0;
        for (int r = 0; r < f.rows(); ++r)
            for (int c = 0; c < f.cols(); ++c)
                num = std::max(num, std::abs(f(r, c) - m(r, c)));
        return num / den;
    };
    double d = defect(s.u, Parity::odd);
    d = std::max(d, defect(s.v, Parity::even));
    d = std::max(d, defect(s.theta, Parity::even));
    d = std::max(d, defect(s.p, Parity::even));
    return d;
}

CharacteristicValues characteristic_values(const State& s, const ThetaBC& bc) {
    CharacteristicValues cv;
    cv.theta_min = extrema(s.theta).min;
    cv.u_max = extrema(s.u).max;
    const FieldExtrema ve = extrema(s.v);
    cv.v_max = ve.max;
    cv.v_min = ve.min;
    SolverPlan corner = SolverPlan::poisson_corner(s.u.grid());
    cv.omega_max = extrema(vorticity(s.u, s.v)).max;
    cv.psi_max = extrema(streamfunction(s.u, s.v, corner)).max;
    if (s.theta.family() == Family::v)
        cv.nu = nusselt_ground(s.theta, bc);
    else
        cv.nu = nusselt_wall_x(s.theta, bc, true);
    return cv;
}

std::string characteristic_csv_header() {
    return "Ra,h,L,H,gamma,theta_min,y_thetamin,u_max,x_umax,y_umax,v_max,y_vmax,"
           "v_min,x_vmin,y_vmin,omega_max,x_omegamax,psi_max,x_psimax,y_psimax,Nu,"
           "steps,T_stat";
}

std::string characteristic_csv_row(const CharacteristicValues& cv, double Ra, double h,
                                   double L, double H, int gamma, long steps,
                                   double t_stat) {
    char buf[768];
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%ld,"
                  "%.17g",
                  Ra, h, L, H, gamma, cv.theta_min.value, cv.theta_min.y, cv.u_max.value,
                  cv.u_max.x, cv.u_max.y, cv.v_max.value, cv.v_max.y, cv.v_min.value,
                  cv.v_min.x, cv.v_min.y, cv.omega_max.value, cv.omega_max.x,
                  cv.psi_max.value, cv.psi_max.x, cv.psi_max.y, cv.nu, steps, t_stat);
    return buf;
}

} // namespace bouss
