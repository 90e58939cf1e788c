#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "nullpulse/evolve.hpp"
#include "nullpulse/norms.hpp"

using namespace nullpulse;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

FieldState const_state(const NullGrid& g, double c) {
    FieldState st(g, Nonlinearity{});
    for (double& x : st.phi()) x = c;
    st.fill_frame_derivatives();
    return st;
}

// Simpson rule; exact for the cubic integrands used below.
template <typename F>
double simpson(F&& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int k = 1; k < n; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("cross-section norms of simple fields") {
    const NullGrid g3 = build_grid(3, -4.0, -1.0, 0.5, 10, 8, 1);
    const FieldState st3 = const_state(g3, 0.7);
    const int i = 4, j = 6;
    const double r = g3.r_at(i, j);
    CHECK(sphere_norm(st3, Quantity::phi, i, j, 2.0) ==
          doctest::Approx(0.7 * r * std::sqrt(4.0 * kPi)).epsilon(1e-13));
    CHECK(sphere_norm(st3, Quantity::phi, i, j, 4.0) ==
          doctest::Approx(std::pow(4.0 * kPi * r * r * std::pow(0.7, 4.0), 0.25)).epsilon(1e-13));
    CHECK(sphere_norm(st3, Quantity::phi, i, j, 6.0) ==
          doctest::Approx(std::pow(4.0 * kPi * r * r * std::pow(0.7, 6.0), 1.0 / 6.0)).epsilon(1e-13));
    CHECK(sphere_norm(st3, Quantity::phi, i, j, kInf) == 0.7);
    CHECK_THROWS_AS(sphere_norm(st3, Quantity::phi, i, j, 3.0), std::invalid_argument);

    // dim 2: phi = cos(theta), so |phi|^2 integrates to pi r on the circle
    const NullGrid g2 = build_grid(2, -4.0, -1.0, 0.5, 10, 8, 8);
    FieldState st2(g2, Nonlinearity{});
    for (int ii = 0; ii <= g2.n_u; ++ii)
        for (int jj = 0; jj <= g2.n_ub; ++jj)
            for (int m = 0; m < g2.n_theta; ++m)
                st2.phi()[g2.idx(ii, jj, m)] = std::cos(g2.theta_at(m));
    const double r2 = g2.r_at(i, j);
    CHECK(sphere_norm(st2, Quantity::phi, i, j, 2.0) ==
          doctest::Approx(std::sqrt(kPi * r2)).epsilon(1e-13));
    CHECK(sphere_norm(st2, Quantity::phi, i, j, kInf) == 1.0);
}

TEST_CASE("cone quadrature is exact for constant fields") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.5, 20, 16, 1);
    const FieldState st = const_state(g, 1.0);

    const int i = 5, j = 16;
    const double u = g.u_at(i), b = g.ub_at(j);
    const double out_sq = 4.0 * kPi * (std::pow(b - u, 3.0) - std::pow(-u, 3.0)) / 3.0;
    CHECK(cone_norm_outgoing(st, Quantity::phi, i, j) ==
          doctest::Approx(std::sqrt(out_sq)).epsilon(1e-13));

    const int ii = 20, jj = 7;
    const double bj = g.ub_at(jj), ui = g.u_at(ii);
    const double in_sq = 4.0 * kPi * (std::pow(bj - g.u0, 3.0) - std::pow(bj - ui, 3.0)) / 3.0;
    CHECK(cone_norm_ingoing(st, Quantity::phi, ii, jj) ==
          doctest::Approx(std::sqrt(in_sq)).epsilon(1e-13));

    // degenerate segments have zero measure
    CHECK(cone_norm_outgoing(st, Quantity::phi, 3, 0) == 0.0);
    CHECK(cone_norm_ingoing(st, Quantity::phi, 0, 3) == 0.0);

    const NullGrid g2 = build_grid(2, -4.0, -1.0, 0.5, 20, 16, 8);
    const FieldState st2 = const_state(g2, 1.0);
    const double out2_sq = 2.0 * kPi * (b * b / 2.0 - u * b);
    CHECK(cone_norm_outgoing(st2, Quantity::phi, i, j) ==
          doctest::Approx(std::sqrt(out2_sq)).epsilon(1e-13));
}

TEST_CASE("cone quadrature is exact for piecewise-linear squared fields") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.5, 20, 16, 1);

    // |phi|^2 = 1 + 3 ub is linear in ub: the outgoing moment weights are exact
    FieldState out_st(g, Nonlinearity{});
    for (int i = 0; i <= g.n_u; ++i)
        for (int j = 0; j <= g.n_ub; ++j)
            out_st.phi()[g.idx(i, j)] = std::sqrt(1.0 + 3.0 * g.ub_at(j));
    const int i = 4, j = 16;
    const double u = g.u_at(i);
    const double oracle_out = simpson(
        [&](double x) { return (1.0 + 3.0 * x) * 4.0 * kPi * (x - u) * (x - u); }, 0.0,
        g.ub_at(j), 8);
    CHECK(cone_norm_outgoing(out_st, Quantity::phi, i, j) ==
          doctest::Approx(std::sqrt(oracle_out)).epsilon(1e-12));

    // |phi|^2 = 1 + (u - u0)/2 is linear in u: same along the ingoing cone
    FieldState in_st(g, Nonlinearity{});
    for (int ii = 0; ii <= g.n_u; ++ii)
        for (int jj = 0; jj <= g.n_ub; ++jj)
            in_st.phi()[g.idx(ii, jj)] = std::sqrt(1.0 + 0.5 * (g.u_at(ii) - g.u0));
    const int ai = 20, aj = 3;
    const double bj = g.ub_at(aj);
    const double oracle_in = simpson(
        [&](double x) { return (1.0 + 0.5 * (x - g.u0)) * 4.0 * kPi * (bj - x) * (bj - x); },
        g.u0, g.u_at(ai), 8);
    CHECK(cone_norm_ingoing(in_st, Quantity::phi, ai, aj) ==
          doctest::Approx(std::sqrt(oracle_in)).epsilon(1e-12));
}

TEST_CASE("norm report layout and tier structure, spherical run") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.04, 60, 16, 1);
    PulseSpec spec;
    spec.delta = 0.04;
    Nonlinearity nl;
    const FieldState st = evolve(g, spec, nl);
    const NormReport rep = assemble_norm_report(st);

    REQUIRE(rep.rows() == static_cast<std::size_t>(61 * 17));
    const std::size_t k = rep.row_index(10, 5);
    CHECK(rep.u[k] == g.u_at(10));
    CHECK(rep.ub[k] == g.ub_at(5));

    for (std::size_t r = 0; r < rep.rows(); r += 7) {
        // M is the sum of every tier
        const double sum = rep.e1[r] + rep.e2[r] + rep.e3[r] + rep.eb1[r] + rep.eb2[r] +
                           rep.eb3[r] + rep.f2[r] + rep.f3[r] + rep.fb2[r] + rep.fb3[r];
        CHECK(rep.m[r] == sum);
        // spherical symmetry: angular tiers vanish identically
        CHECK(rep.e2[r] == 0.0);
        CHECK(rep.e3[r] == 0.0);
        CHECK(rep.eb2[r] == 0.0);
        CHECK(rep.eb3[r] == 0.0);
        CHECK(rep.f3[r] == 0.0);
        CHECK(rep.fb3[r] == 0.0);
        CHECK(rep.s_l4_omphi[r] == 0.0);
    }

    // cone prefixes grow with the segment
    for (int j = 0; j < g.n_ub; ++j)
        CHECK(rep.e1[rep.row_index(20, j + 1)] >= rep.e1[rep.row_index(20, j)]);
    for (int i = 0; i < g.n_u; ++i)
        CHECK(rep.eb1[rep.row_index(i + 1, 9)] >= rep.eb1[rep.row_index(i, 9)]);
    CHECK(rep.e1[rep.row_index(30, 0)] == 0.0);

    CHECK(rep.m_final() == rep.m.back());
    CHECK(rep.m_final() > 0.0);

    const std::string csv = norm_report_csv(rep);
    const std::string header(kNormCsvHeader);
    REQUIRE(csv.size() > header.size());
    CHECK(csv.compare(0, header.size(), header) == 0);
    CHECK(csv[header.size()] == '\n');
    std::size_t lines = 0, commas_line2 = 0;
    for (std::size_t p = 0; p < csv.size(); ++p)
        if (csv[p] == '\n') ++lines;
    const std::size_t l2a = csv.find('\n') + 1, l2b = csv.find('\n', l2a);
    for (std::size_t p = l2a; p < l2b; ++p)
        if (csv[p] == ',') ++commas_line2;
    CHECK(lines == rep.rows() + 1);
    CHECK(commas_line2 == 16);
}

TEST_CASE("norm report drops tier 3 in dim 2 but keeps the angular tiers") {
    const NullGrid g = build_grid(2, -4.0, -1.0, 0.04, 30, 8, 8);
    PulseSpec spec;
    spec.delta = 0.04;
    spec.angular_mode = 2;
    Nonlinearity nl;
    const NormReport rep = assemble_norm_report(evolve(g, spec, nl));

    double max_e2 = 0.0;
    for (std::size_t r = 0; r < rep.rows(); ++r) {
        CHECK(rep.e3[r] == 0.0);
        CHECK(rep.eb3[r] == 0.0);
        CHECK(rep.f3[r] == 0.0);
        CHECK(rep.fb3[r] == 0.0);
        max_e2 = std::max(max_e2, rep.e2[r]);
    }
    CHECK(max_e2 > 0.0);
}

TEST_CASE("circle pointwise inequality saturates at the known constant") {
    const NullGrid g = build_grid(2, -4.0, -1.0, 0.5, 10, 8, 8);
    const FieldState st = const_state(g, 0.7);
    const SobolevReport rep = sobolev_check(st, SobolevLemma::circle_71);

    // constant section: sup / (|u|^{1/2} |snab phi| + |u|^{-1/2} |phi|_{L2})
    // peaks where r = |u|, i.e. on the ub = 0 line, at 1/sqrt(2 pi); the
    // sixth-power variant peaks at 1/(2 pi)
    CHECK(rep.worst_ratio == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-10));
    REQUIRE(rep.part_ratios.size() == 2);
    CHECK(rep.part_ratios[0] == doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-10));
    CHECK(rep.part_ratios[1] == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-10));
    CHECK(rep.at_ub == 0.0);
    CHECK_FALSE(rep.degenerate);

    const SobolevReport zero = sobolev_check(const_state(g, 0.0), SobolevLemma::circle_71);
    CHECK(zero.worst_ratio == 0.0);
    CHECK_FALSE(zero.degenerate);
}

TEST_CASE("degenerate slices are flagged, not divided by") {
    // Constant field in dim 3: the outgoing trace bound has zero right side
    // with a positive left side. The constant must be dyadic so the one-sided
    // boundary stencils cancel without rounding residue.
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.5, 10, 8, 1);
    const FieldState st = const_state(g, 0.5);
    REQUIRE(st.max_abs(Quantity::l_phi) == 0.0);
    const SobolevReport rep = sobolev_check(st, SobolevLemma::cross_24);
    CHECK(rep.degenerate);
    CHECK(rep.worst_ratio == 0.0);
}

TEST_CASE("trace inequalities hold on an evolved spherical field") {
    const NullGrid g = build_grid(3, -4.0, -1.0, 0.04, 60, 16, 1);
    PulseSpec spec;
    spec.delta = 0.04;
    Nonlinearity nl;
    const FieldState st = evolve(g, spec, nl);

    for (SobolevLemma lemma : {SobolevLemma::cross_24, SobolevLemma::cross_25}) {
        const SobolevReport rep = sobolev_check(st, lemma);
        CHECK(rep.worst_ratio > 0.0);
        CHECK(rep.worst_ratio < 10.0);
        CHECK_FALSE(rep.degenerate);
    }
}

TEST_CASE("lemma dimension mismatches are rejected") {
    const NullGrid g3 = build_grid(3, -4.0, -1.0, 0.5, 6, 4, 1);
    const NullGrid g2 = build_grid(2, -4.0, -1.0, 0.5, 6, 4, 8);
    const FieldState st3 = const_state(g3, 1.0);
    const FieldState st2 = const_state(g2, 1.0);
    CHECK_THROWS_AS(sobolev_check(st3, SobolevLemma::circle_71), std::invalid_argument);
    CHECK_THROWS_AS(sobolev_check(st3, SobolevLemma::circle_72), std::invalid_argument);
    CHECK_THROWS_AS(sobolev_check(st2, SobolevLemma::cross_24), std::invalid_argument);
    CHECK_THROWS_AS(sobolev_check(st2, SobolevLemma::cross_25), std::invalid_argument);
}

TEST_CASE("sobolev lemma names") {
    CHECK(std::string(sobolev_name(SobolevLemma::cross_24)) == "cross_section_trace_outgoing");
    CHECK(std::string(sobolev_name(SobolevLemma::cross_25)) == "cross_section_trace_ingoing");
    CHECK(std::string(sobolev_name(SobolevLemma::circle_71)) == "circle_pointwise");
    CHECK(std::string(sobolev_name(SobolevLemma::circle_72)) == "circle_trace_outgoing");
    CHECK(std::string(sobolev_name(SobolevLemma::circle_73)) == "circle_trace_ingoing");
}
