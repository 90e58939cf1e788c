#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "nullpulse/evolve.hpp"

using namespace nullpulse;

TEST_CASE("nonlinearity algebra") {
    Nonlinearity cubic;  // defocusing k = 3
    CHECK(cubic(2.0) == 8.0);
    CHECK(cubic(-2.0) == -8.0);
    CHECK(cubic.potential(2.0) == doctest::Approx(8.0).epsilon(1e-15));

    Nonlinearity quintic{NonlinKind::power, 5, -1};
    CHECK(quintic(1.5) == doctest::Approx(-std::pow(1.5, 5)).epsilon(1e-15));
    CHECK(quintic.potential(1.5) == doctest::Approx(std::pow(1.5, 6) / 3.0).epsilon(1e-15));

    Nonlinearity expf{NonlinKind::exp_focusing, 3, 1};
    CHECK(expf(0.7) == doctest::Approx(-0.7 * std::exp(0.49)).epsilon(1e-15));
    CHECK(expf.potential(0.7) == doctest::Approx(std::expm1(0.49)).epsilon(1e-15));

    Nonlinearity off{NonlinKind::none, 3, 1};
    CHECK(off(3.0) == 0.0);
    CHECK(off.potential(3.0) == 0.0);

    CHECK(cubic.describe() == "power_defocusing_k3");
    CHECK(quintic.describe() == "power_focusing_k5");
    CHECK(expf.describe() == "exp_focusing");

    CHECK_THROWS_AS((Nonlinearity{NonlinKind::power, 4, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Nonlinearity{NonlinKind::power, 1, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Nonlinearity{NonlinKind::power, 3, 0}.validate()), std::invalid_argument);
}

TEST_CASE("null frame rhs, hand-checked values") {
    // r = 2, phi = 0.5, L phi = 0.3, Lbar phi = 0.1, lap = 0.4, F = 0.7
    Nonlinearity cubic;  // N = phi^3 = 0.125
    CHECK(null_frame_rhs(3, 2.0, 0.5, 0.3, 0.1, 0.4, cubic, 0.7) ==
          doctest::Approx(0.775).epsilon(1e-14));
    CHECK(null_frame_rhs(2, 2.0, 0.5, 0.3, 0.1, 0.4, cubic, 0.7) ==
          doctest::Approx(0.725).epsilon(1e-14));

    Nonlinearity foc{NonlinKind::power, 3, -1};  // N = -0.125
    CHECK(null_frame_rhs(3, 2.0, 0.5, 0.3, 0.1, 0.4, foc, 0.7) ==
          doctest::Approx(1.025).epsilon(1e-14));

    Nonlinearity expf{NonlinKind::exp_focusing, 3, 1};  // N = -0.5 e^{0.25}
    CHECK(null_frame_rhs(3, 2.0, 0.5, 0.3, 0.1, 0.4, expf, 0.7) ==
          doctest::Approx(0.9 + 0.5 * std::exp(0.25)).epsilon(1e-14));

    Nonlinearity off{NonlinKind::none, 3, 1};
    CHECK(null_frame_rhs(3, 2.0, 0.5, 0.3, 0.1, 0.4, off, 0.7) ==
          doctest::Approx(0.9).epsilon(1e-14));
}

TEST_CASE("zero data stays exactly zero") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.02, 40, 16, 1);
    PulseSpec spec;
    spec.delta = 0.02;
    spec.amplitude = 0.0;
    Nonlinearity nl;
    const FieldState st = evolve(g, spec, nl);
    CHECK(st.max_abs(Quantity::phi) == 0.0);
    CHECK(st.max_abs(Quantity::l_phi) == 0.0);
    CHECK(st.max_abs(Quantity::lbar_phi) == 0.0);
}

TEST_CASE("late-onset pulse leaves the region below the onset exactly zero") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.02, 60, 64, 1);
    PulseSpec spec;
    spec.profile = "sin4_half";
    spec.delta = 0.02;
    Nonlinearity nl;
    const FieldState st = evolve(g, spec, nl);

    // data supported in (delta/2, delta): everything at or below the onset
    // is causally untouched, including the full ub = 0 trace
    CHECK(st.max_abs_phi_below(0.5 * spec.delta) == 0.0);
    CHECK(st.max_abs(Quantity::phi) > 0.0);
}

TEST_CASE("spherical linear run converges at second order to the exact wave") {
    PulseSpec spec;
    spec.delta = 0.04;
    Nonlinearity off{NonlinKind::none, 3, 1};

    // exact solution: r phi depends on ub alone, fixed by the data
    auto err = [&](int n_u, int n_ub) {
        const NullGrid g = build_grid(3, -4.0, -1.0, spec.delta, n_u, n_ub, 1);
        const FieldState st = evolve(g, spec, off);
        const auto& phi = st.phi();
        double e = 0.0;
        for (int i = 0; i <= g.n_u; ++i)
            for (int j = 0; j <= g.n_ub; ++j) {
                const double exact = (g.ub_at(j) - g.u0) *
                                     short_pulse_value(spec, g.ub_at(j), 0.0) / g.r_at(i, j);
                e = std::max(e, std::abs(phi[g.idx(i, j)] - exact));
            }
        return e;
    };

    const double e0 = err(40, 16);
    const double e1 = err(80, 32);
    CHECK(e0 > 0.0);
    CHECK(e0 / e1 > 3.3);
    CHECK(e0 / e1 < 4.7);
}

TEST_CASE("manufactured planar solution is reproduced through the forcing path") {
    const NullGrid g = build_grid(2, -4.0, -1.0, 0.5, 40, 16, 16);
    Nonlinearity nl{NonlinKind::exp_focusing, 3, 1};

    auto exact = [](double u, double ub, double th) {
        return std::sin(u) * std::sin(ub) * std::cos(2.0 * th);
    };
    auto forcing = [&nl](double u, double ub, double th) {
        const double c2 = std::cos(2.0 * th);
        const double p = std::sin(u) * std::sin(ub) * c2;
        const double dudub = std::cos(u) * std::cos(ub) * c2;
        const double lap = -4.0 * p;
        const double l = std::sin(u) * std::cos(ub) * c2;
        const double lb = std::cos(u) * std::sin(ub) * c2;
        const double r = ub - u;
        return dudub - lap / (r * r) - 0.5 * (l - lb) / r + nl(p);
    };
    const FieldState st = evolve_with_data(
        g, [&](double ub, double th) { return exact(-4.0, ub, th); }, nl, forcing);

    double e = 0.0;
    for (int i = 0; i <= g.n_u; ++i)
        for (int j = 0; j <= g.n_ub; ++j)
            for (int m = 0; m < g.n_theta; ++m)
                e = std::max(e, std::abs(st.phi()[g.idx(i, j, m)] -
                                         exact(g.u_at(i), g.ub_at(j), g.theta_at(m))));
    CHECK(e > 0.0);
    CHECK(e < 1e-3);
}

TEST_CASE("initial data must vanish on the ingoing cone") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.02, 10, 8, 1);
    Nonlinearity nl;
    CHECK_THROWS_AS(evolve_with_data(g, [](double, double) { return 1.0; }, nl),
                    std::invalid_argument);
}

TEST_CASE("invalid nonlinearity is rejected before sweeping") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.02, 10, 8, 1);
    PulseSpec spec;
    spec.delta = 0.02;
    Nonlinearity bad{NonlinKind::power, 4, 1};
    CHECK_THROWS_AS(evolve(g, spec, bad), std::invalid_argument);
}

TEST_CASE("strong focusing pulse fails inside the slab with located coordinates") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.04, 80, 32, 1);
    PulseSpec spec;
    spec.delta = 0.04;
    spec.amplitude = 200.0;
    Nonlinearity foc{NonlinKind::power, 3, -1};

    bool threw = false;
    double at_u = 0.0, at_ub = -1.0;
    try {
        evolve(g, spec, foc);
    } catch (const BlowupError& e) {
        threw = true;
        at_u = e.u;
        at_ub = e.ub;
    } catch (const StepFailure& e) {
        threw = true;
        at_u = e.u;
        at_ub = e.ub;
    }
    REQUIRE(threw);
    CHECK(at_u >= g.u0);
    CHECK(at_u <= g.u_end);
    CHECK(at_ub >= 0.0);
    CHECK(at_ub <= g.delta);
}

TEST_CASE("discrete frame and angular derivatives commute") {
    PulseSpec spec;
    spec.delta = 0.04;
    Nonlinearity nl;

    const NullGrid g3 = build_grid(3, -4.0, -1.0, 0.04, 40, 16, 1);
    CHECK(commutator_residual(evolve(g3, spec, nl)) == 0.0);

    spec.angular_mode = 2;
    const NullGrid g2 = build_grid(2, -4.0, -1.0, 0.04, 40, 16, 8);
    CHECK(commutator_residual(evolve(g2, spec, nl)) < 1e-10);
}
