#include "doctest.h"

#include <cmath>

#include "bouss/field.hpp"
#include "dense_oracle.hpp"

using namespace bouss;
using bouss::test::fill_random;
using bouss::test::make_test_grid;
using bouss::test::max_abs_diff;

TEST_CASE("family shapes on a 4x4 grid") {
    const StaggeredGrid g = make_test_grid(4, 4, false);
    CHECK(ScalarField(Family::u, g).size() == 12);        // (N-1)*M
    CHECK(ScalarField(Family::v, g).size() == 12);        // N*(M-1)
    CHECK(ScalarField(Family::pressure, g).size() == 16); // one value per cell
    CHECK(ScalarField(Family::theta_walls, g).size() == 20);
    CHECK(ScalarField(Family::corner, g).size() == 25);
    CHECK(ScalarField(Family::corner_in, g).size() == 9);
}

TEST_CASE("for_each_node is row-major with j outer and visits each node once") {
    const StaggeredGrid g = make_test_grid(5, 4, false);
    const ScalarField f(Family::v, g);
    int count = 0;
    int last_r = -1, last_c = -1;
    double last_y = -1.0;
    for_each_node(f, [&](int r, int c, double x, double y, double) {
        if (r == last_r) CHECK(c == last_c + 1);
        else CHECK(r == last_r + 1);
        CHECK(y >= last_y);
        CHECK(x == doctest::Approx(g.x_half[c]));
        last_r = r;
        last_c = c;
        last_y = y;
        ++count;
    });
    CHECK(count == 5 * 3);
}

TEST_CASE("mirror_x parity behavior") {
    const StaggeredGrid g = make_test_grid(8, 6, true);
    REQUIRE(g.symmetric_x());

    ScalarField cf(Family::v, g);
    cf.fill(3.25);
    CHECK(max_abs_diff(mirror_x(cf, Parity::even), cf) == 0.0);

    // u(x, y) = x is invariant under odd mirroring
    ScalarField ux(Family::u, g);
    for (int r = 0; r < ux.rows(); ++r)
        for (int c = 0; c < ux.cols(); ++c) ux(r, c) = ux.x_of(c);
    CHECK(max_abs_diff(mirror_x(ux, Parity::odd), ux) < 1e-13);
}

TEST_CASE("mirror_x is an involution") {
    const StaggeredGrid g = make_test_grid(10, 5, true);
    for (Family fam : {Family::u, Family::v, Family::pressure, Family::theta_walls}) {
        ScalarField f(fam, g);
        fill_random(f, 42 + int(fam));
        for (Parity p : {Parity::even, Parity::odd})
            CHECK(max_abs_diff(mirror_x(mirror_x(f, p), p), f) == 0.0);
    }
}

TEST_CASE("mirror_x rejects asymmetric grids") {
    StaggeredGrid g = make_test_grid(6, 4, false);
    g.x[2] += 0.01; // break the symmetry by hand
    ScalarField f(Family::v, g);
    CHECK_THROWS_AS(mirror_x(f, Parity::even), AsymmetricGrid);
}

TEST_CASE("family mismatch is rejected at the call site") {
    const StaggeredGrid g = make_test_grid(6, 4, false);
    const ScalarField f(Family::u, g);
    CHECK_THROWS_AS(require_family(f, Family::v, "test"), ShapeMismatch);
}

TEST_CASE("state construction and finiteness scan") {
    const StaggeredGrid g = make_test_grid(6, 4, false);
    State s(g, Family::v);
    CHECK(s.u.all_finite());
    s.theta(1, 2) = std::nan("");
    CHECK_FALSE(s.theta.all_finite());
    CHECK_THROWS_AS(State(g, Family::pressure), ShapeMismatch);
}
