#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nullpulse/grid.hpp"

using namespace nullpulse;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("spacings for the default slab") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.01, 300, 64, 1);
    CHECK(g.h_u == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(g.h_ub == doctest::Approx(1.5625e-4).epsilon(1e-15));
    CHECK(g.u_at(0) == -4.0);
    CHECK(g.u_at(300) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(g.ub_at(0) == 0.0);
    CHECK(g.ub_at(64) == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("optical coordinate identities") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.02, 30, 16, 1);
    for (int i : {0, 7, 30})
        for (int j : {0, 5, 16}) {
            const double u = g.u_at(i), ub = g.ub_at(j);
            CHECK(g.r_at(i, j) == doctest::Approx(ub - u).epsilon(1e-15));
            CHECK(g.t_at(i, j) == doctest::Approx(u + ub).epsilon(1e-15));
            // r and t invert back to the null pair
            CHECK(g.t_at(i, j) - g.r_at(i, j) == doctest::Approx(2 * u).epsilon(1e-14));
            CHECK(g.t_at(i, j) + g.r_at(i, j) == doctest::Approx(2 * ub).epsilon(1e-14));
        }
    CHECK(g.r_at(0, 0) == 4.0);  // slab stays away from the axis
}

TEST_CASE("node indexing is u-major, then ub, then theta") {
    const NullGrid g = build_grid(2, -4.0, -1.0, 0.02, 10, 4, 8);
    CHECK(g.idx(0, 0, 0) == 0);
    CHECK(g.idx(0, 0, 1) == 1);
    CHECK(g.idx(0, 1, 0) == static_cast<std::size_t>(g.n_theta));
    CHECK(g.idx(1, 0, 0) == static_cast<std::size_t>(g.n_ub + 1) * g.n_theta);
    CHECK(g.node_count() == static_cast<std::size_t>(11) * 5 * 8);
    CHECK(g.idx(10, 4, 7) == g.node_count() - 1);
}

TEST_CASE("cross-section measures") {
    const NullGrid g3 = build_grid(3, -4.0, -1.0, 0.01, 20, 8, 1);
    CHECK(g3.angular_weight() == doctest::Approx(4 * kPi).epsilon(1e-15));
    CHECK(g3.sphere_measure(2.0) == doctest::Approx(16 * kPi).epsilon(1e-15));

    const NullGrid g2 = build_grid(2, -4.0, -1.0, 0.01, 20, 8, 16);
    CHECK(g2.angular_weight() == doctest::Approx(2 * kPi / 16).epsilon(1e-15));
    CHECK(g2.sphere_measure(2.0) == doctest::Approx(4 * kPi).epsilon(1e-15));
    // angular weights sum to the full circle
    CHECK(g2.angular_weight() * g2.n_theta == doctest::Approx(2 * kPi).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_grid(3, -1.0, -4.0, 0.01, 10, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, -4.0, -0.5, 0.01, 10, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, -4.0, -1.0, 0.0, 10, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, -4.0, -1.0, -0.01, 10, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, -4.0, -1.0, 0.01, 1, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, -4.0, -1.0, 0.01, 10, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(4, -4.0, -1.0, 0.01, 10, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, -4.0, -1.0, 0.01, 10, 8, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(2, -4.0, -1.0, 0.01, 10, 8, 7), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(2, -4.0, -1.0, 0.01, 10, 8, 2), std::invalid_argument);
}

TEST_CASE("theta points cover the circle uniformly") {
    const NullGrid g = build_grid(2, -4.0, -1.0, 0.01, 10, 8, 12);
    for (int m = 0; m < 12; ++m)
        CHECK(g.theta_at(m) == doctest::Approx(2 * kPi * m / 12).epsilon(1e-15));
}

TEST_CASE("spectral theta derivatives are exact on resolved modes") {
    const int nt = 16;
    const NullGrid g = build_grid(2, -4.0, -1.0, 0.01, 10, 8, nt);
    std::vector<double> line(nt), out(nt);
    const double ph = 0.7;
    for (int m = 0; m < nt; ++m) line[m] = std::cos(3 * g.theta_at(m) + ph);

    theta_derivative_line(g, 1, line.data(), out.data());
    for (int m = 0; m < nt; ++m)
        CHECK(out[m] ==
              doctest::Approx(-3 * std::sin(3 * g.theta_at(m) + ph)).epsilon(1e-10));

    theta_derivative_line(g, 2, line.data(), out.data());
    for (int m = 0; m < nt; ++m)
        CHECK(out[m] == doctest::Approx(-9 * line[m]).epsilon(1e-10));

    theta_derivative_line(g, 3, line.data(), out.data());
    for (int m = 0; m < nt; ++m)
        CHECK(out[m] ==
              doctest::Approx(27 * std::sin(3 * g.theta_at(m) + ph)).epsilon(1e-10));
}

TEST_CASE("theta derivative vanishes in the spherical mode") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.01, 10, 8, 1);
    double line = 5.0, out = 1.0;
    theta_derivative_line(g, 2, &line, &out);
    CHECK(out == 0.0);
    CHECK(g.d1_theta.empty());
}
