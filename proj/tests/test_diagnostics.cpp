#include "doctest.h"

#include <cmath>

#include "bouss/diagnostics.hpp"
#include "dense_oracle.hpp"

using namespace bouss;
using namespace bouss::test;

TEST_CASE("extrema of a constant field and tie breaking") {
    const StaggeredGrid g = make_test_grid(6, 4, false);
    ScalarField f(Family::pressure, g);
    f.fill(2.0);
    const FieldExtrema e = extrema(f);
    CHECK(e.min.value == 2.0);
    CHECK(e.max.value == 2.0);
    CHECK(e.min.r == 0);
    CHECK(e.min.c == 0);
    CHECK(e.min.x == doctest::Approx(g.x_half[0]));
}

TEST_CASE("extrema finds a planted peak with its coordinates") {
    const StaggeredGrid g = make_test_grid(9, 7, true);
    ScalarField f(Family::v, g);
    fill_random(f, 9);
    for (std::size_t i = 0; i < f.size(); ++i) f.data()[i] *= 0.1;
    f(3, 5) = 7.5;
    f(2, 1) = -9.25;
    const FieldExtrema e = extrema(f);
    CHECK(e.max.value == 7.5);
    CHECK(e.max.x == doctest::Approx(g.x_half[5]));
    CHECK(e.max.y == doctest::Approx(g.y[4]));
    CHECK(e.min.value == -9.25);
}

TEST_CASE("refined extrema recover a smooth quadratic peak") {
    const StaggeredGrid g = make_test_grid(32, 32, false);
    ScalarField f(Family::pressure, g);
    const double x0 = 0.123, y0 = 0.71;
    for (int r = 0; r < f.rows(); ++r)
        for (int c = 0; c < f.cols(); ++c) {
            const double dx = f.x_of(c) - x0, dy = f.y_of(r) - y0;
            f(r, c) = 1.0 - 3.0 * dx * dx - 2.0 * dy * dy;
        }
    const Extremum m = extrema_refined(f).max;
    CHECK(m.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m.x == doctest::Approx(x0).epsilon(1e-9));
    CHECK(m.y == doctest::Approx(y0).epsilon(1e-9));
}

TEST_CASE("nusselt of the conduction profile is exactly one") {
    GridSpec spec{1.0, 1.0, 8, 8, 0.0, 1.0, true};
    const StaggeredGrid g = build_grid(spec);
    ScalarField theta(Family::v, g);
    for (int r = 0; r < theta.rows(); ++r)
        for (int c = 0; c < theta.cols(); ++c) theta(r, c) = 1.0 - theta.y_of(r);
    ThetaBC bc;
    bc.ywalls = ThetaBC::YWalls::dirichlet;
    bc.bottom.assign(g.N, 1.0);
    bc.top.assign(g.N, 0.0);
    bc.left.assign(g.M - 1, 0.0);
    bc.right.assign(g.M - 1, 0.0);
    CHECK(nusselt_ground(theta, bc) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(nusselt_ground_integral(theta, bc) == doctest::Approx(g.L).epsilon(1e-14));
}

TEST_CASE("cavity wall nusselt is exact on a linear profile") {
    GridSpec spec{1.0, 1.0, 16, 16, 0.0, 1.0, true};
    const StaggeredGrid g = build_grid(spec);
    ScalarField theta(Family::theta_walls, g);
    // theta = -x runs from +0.5 at the left wall to -0.5 at the right
    for (int r = 0; r < theta.rows(); ++r)
        for (int c = 0; c < theta.cols(); ++c) theta(r, c) = -theta.x_of(c);
    ThetaBC bc;
    bc.ywalls = ThetaBC::YWalls::neumann;
    bc.left.assign(g.M + 1, 0.5);
    bc.right.assign(g.M + 1, -0.5);
    CHECK(nusselt_wall_x(theta, bc, true) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(nusselt_wall_x(theta, bc, false) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mid-plane nusselt is exact for conduction and consistent with the wall form") {
    GridSpec spec{1.0, 1.0, 16, 16, 0.0, 1.0, true};
    const StaggeredGrid g = build_grid(spec);
    ScalarField theta(Family::theta_walls, g);
    for (int r = 0; r < theta.rows(); ++r)
        for (int c = 0; c < theta.cols(); ++c) theta(r, c) = -theta.x_of(c);
    ScalarField u(Family::u, g); // at rest
    CHECK(nusselt_midplane_x(u, theta, 1e4, 0.71) == doctest::Approx(1.0).epsilon(1e-13));

    // with a velocity through the plane the convective part contributes
    u.fill(0.5);
    const double rt = std::sqrt(1e4 * 0.71);
    // theta at the midline is 0, so the convective term vanishes for -x data
    CHECK(nusselt_midplane_x(u, theta, 1e4, 0.71) == doctest::Approx(1.0).epsilon(1e-12));
    for (int r = 0; r < theta.rows(); ++r)
        for (int c = 0; c < theta.cols(); ++c) theta(r, c) = 0.2;
    CHECK(nusselt_midplane_x(u, theta, 1e4, 0.71) ==
          doctest::Approx(rt * 0.5 * 0.2).epsilon(1e-12));
}

TEST_CASE("centerline extrema recover midline peaks") {
    GridSpec spec{1.0, 1.0, 32, 32, 0.0, 1.0, true};
    const StaggeredGrid g = build_grid(spec);
    ScalarField u(Family::u, g);
    const double y0 = 0.62;
    for (int r = 0; r < u.rows(); ++r)
        for (int c = 0; c < u.cols(); ++c) {
            const double dy = u.y_of(r) - y0;
            u(r, c) = (1.0 - 4.0 * dy * dy) * std::cos(u.x_of(c));
        }
    CHECK(centerline_umax(u) == doctest::Approx(1.0).epsilon(1e-10));

    ScalarField v(Family::v, g);
    const double x0 = -0.21;
    for (int r = 0; r < v.rows(); ++r)
        for (int c = 0; c < v.cols(); ++c) {
            const double dx = v.x_of(c) - x0;
            v(r, c) = (2.0 - 5.0 * dx * dx) * std::cos(v.y_of(r) - 0.5);
        }
    CHECK(centerline_vmax(v) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("vorticity of rigid rotation is two at interior corners") {
    const StaggeredGrid g = make_test_grid(10, 8, true);
    ScalarField u(Family::u, g), v(Family::v, g);
    for (int r = 0; r < u.rows(); ++r)
        for (int c = 0; c < u.cols(); ++c) u(r, c) = -u.y_of(r);
    for (int r = 0; r < v.rows(); ++r)
        for (int c = 0; c < v.cols(); ++c) v(r, c) = v.x_of(c);
    const ScalarField w = vorticity(u, v);
    for (int r = 1; r < g.M; ++r)
        for (int c = 1; c < g.N; ++c) CHECK(w(r, c) == doctest::Approx(2.0).epsilon(1e-12));

    ScalarField zu(Family::u, g), zv(Family::v, g);
    CHECK(vorticity(zu, zv).max_abs() == 0.0);
}

TEST_CASE("streamfunction reproduces the generating field at second order") {
    // returns (error of psi against the analytic streamfunction,
    //          relative recovery error of the differentiated psi)
    auto errors = [](int n) {
        GridSpec spec{1.0, 1.0, n, n, 0.0, 1.0, true};
        const StaggeredGrid g = build_grid(spec);
        // psi = sin^2(pi(x+1/2)) sin^2(pi y) is no-slip compatible;
        // analytic point samples of (psi_y, -psi_x) so the discrete path
        // carries genuine truncation error
        auto u_exact = [](double x, double y) {
            const double sx = std::sin(M_PI * (x + 0.5));
            return sx * sx * M_PI * std::sin(2.0 * M_PI * y);
        };
        auto v_exact = [](double x, double y) {
            const double sy = std::sin(M_PI * y);
            return -M_PI * std::sin(2.0 * M_PI * (x + 0.5)) * sy * sy;
        };
        ScalarField u(Family::u, g), v(Family::v, g);
        for (int r = 0; r < u.rows(); ++r)
            for (int c = 0; c < u.cols(); ++c) u(r, c) = u_exact(u.x_of(c), u.y_of(r));
        for (int r = 0; r < v.rows(); ++r)
            for (int c = 0; c < v.cols(); ++c) v(r, c) = v_exact(v.x_of(c), v.y_of(r));
        const SolverPlan plan = SolverPlan::poisson_corner(g);
        const ScalarField psi = streamfunction(u, v, plan);
        auto psi_exact = [](double x, double y) {
            const double sx = std::sin(M_PI * (x + 0.5)), sy = std::sin(M_PI * y);
            return sx * sx * sy * sy;
        };
        double perr = 0.0;
        for (int r = 0; r < psi.rows(); ++r)
            for (int c = 0; c < psi.cols(); ++c)
                perr = std::max(perr,
                                std::abs(psi(r, c) - psi_exact(psi.x_of(c), psi.y_of(r))));
        // recovered velocity via the natural differences
        double num = 0.0, den = 0.0;
        auto psi_at = [&](int r, int c) { // full-corner indexing with zero boundary
            if (r <= 0 || r >= g.M || c <= 0 || c >= g.N) return 0.0;
            return psi(r - 1, c - 1);
        };
        for (int r = 0; r < u.rows(); ++r)
            for (int c = 0; c < u.cols(); ++c) {
                const double ur = (psi_at(r + 1, c + 1) - psi_at(r, c + 1)) / g.h;
                num += (ur - u(r, c)) * (ur - u(r, c));
                den += u(r, c) * u(r, c);
            }
        return std::pair<double, double>{perr, std::sqrt(num / den)};
    };
    const auto [p1, r1] = errors(24);
    const auto [p2, r2] = errors(48);
    CHECK(std::log2(p1 / p2) > 1.9); // psi itself is second order
    // differentiating psi reproduces the velocity to (at least) second order;
    // for discrete data the recovery defect is curl free and collapses further
    CHECK(r1 <= 1.0 / (24.0 * 24.0));
    CHECK(r2 <= 1.0 / (48.0 * 48.0));

    // zero velocity gives the zero streamfunction
    const StaggeredGrid g = make_test_grid(8, 6, true);
    ScalarField zu(Family::u, g), zv(Family::v, g);
    const SolverPlan plan = SolverPlan::poisson_corner(g);
    CHECK(streamfunction(zu, zv, plan).max_abs() == 0.0);
}

TEST_CASE("epsilon_LH arithmetic and zero reference") {
    CHECK(epsilon_LH(-0.1, -0.1) == 0.0);
    CHECK(epsilon_LH(-0.11, -0.1) == doctest::Approx(0.1).epsilon(1e-13));
    CHECK_THROWS_AS(epsilon_LH(0.5, 0.0), ZeroReference);
}

TEST_CASE("symmetry defect of symmetric and perturbed states") {
    const StaggeredGrid g = make_test_grid(8, 6, true);
    State s(g, Family::v);
    // symmetric data: theta even, u odd
    for (int r = 0; r < s.theta.rows(); ++r)
        for (int c = 0; c < s.theta.cols(); ++c)
            s.theta(r, c) = std::cos(s.theta.x_of(c)) * s.theta.y_of(r);
    for (int r = 0; r < s.u.rows(); ++r)
        for (int c = 0; c < s.u.cols(); ++c) s.u(r, c) = std::sin(s.u.x_of(c));
    CHECK(symmetry_defect(s) < 1e-13);

    const double base = s.theta.max_abs();
    s.theta(2, 1) += 0.5 * base;
    CHECK(symmetry_defect(s) > 0.2);
}

TEST_CASE("characteristic csv schema") {
    const std::string header = characteristic_csv_header();
    CHECK(header.find("theta_min") != std::string::npos);
    CHECK(header.find("Nu") != std::string::npos);
    CHECK(std::count(header.begin(), header.end(), ',') == 22);
    CharacteristicValues cv;
    const std::string row = characteristic_csv_row(cv, 1e3, 1.0 / 32, 900, 10, 1, 100, 10.0);
    CHECK(std::count(row.begin(), row.end(), ',') == 22);
}
