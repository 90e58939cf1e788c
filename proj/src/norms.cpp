#include "nullpulse/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullpulse/util.hpp"

namespace nullpulse {

namespace {

// Per-cell moment weights for int A(x) r(x)^{dim-1} dx over one cell of
// width h when A is the piecewise-linear interpolant of its node values and
// r runs from r0 with slope dr (+1 along ub, -1 along u). The pair (w0, w1)
// multiplies (A_left, A_right); the radial factor is integrated exactly, so
// any piecewise-linear A is integrated exactly.
void cell_moments(int dim, double r0, double h, double dr, double& w0, double& w1) {
    const double rh = dr * h;
    if (dim == 3) {
        w0 = h * (r0 * r0 / 2.0 + r0 * rh / 3.0 + rh * rh / 12.0);
        w1 = h * (r0 * r0 / 2.0 + 2.0 * r0 * rh / 3.0 + rh * rh / 4.0);
    } else {
        w0 = h * (r0 / 2.0 + rh / 6.0);
        w1 = h * (r0 / 2.0 + rh / 3.0);
    }
}

// Angular sum (no radial factor) of |q|^2 |u|^alpha at node (i, j).
double angular_sq(const FieldState& s, const std::vector<double>& v, int i, int j,
                  double alpha) {
    const NullGrid& g = s.grid();
    double acc = 0.0;
    for (int m = 0; m < g.n_theta; ++m) {
        const double x = v[g.idx(i, j, m)];
        acc += x * x;
    }
    acc *= g.angular_weight();
    if (alpha != 0.0) acc *= std::pow(std::abs(g.u_at(i)), alpha);
    return acc;
}

double cone_out_sq(const FieldState& s, Quantity q, int i, int j) {
    const NullGrid& g = s.grid();
    const auto& v = s.values(q);
    if (j <= 0) return 0.0;
    std::vector<double> cells(j);
    double a_left = angular_sq(s, v, i, 0, 0.0);
    for (int a = 0; a < j; ++a) {
        const double a_right = angular_sq(s, v, i, a + 1, 0.0);
        double w0, w1;
        cell_moments(g.dim, g.r_at(i, a), g.h_ub, +1.0, w0, w1);
        cells[a] = a_left * w0 + a_right * w1;
        a_left = a_right;
    }
    return pairwise_sum(cells);
}

double cone_in_sq(const FieldState& s, Quantity q, int i, int j, double alpha) {
    const NullGrid& g = s.grid();
    const auto& v = s.values(q);
    if (i <= 0) return 0.0;
    std::vector<double> cells(i);
    double a_left = angular_sq(s, v, 0, j, alpha);
    for (int a = 0; a < i; ++a) {
        const double a_right = angular_sq(s, v, a + 1, j, alpha);
        double w0, w1;
        cell_moments(g.dim, g.r_at(a, j), g.h_u, -1.0, w0, w1);
        cells[a] = a_left * w0 + a_right * w1;
        a_left = a_right;
    }
    return pairwise_sum(cells);
}

}  // namespace

double sphere_norm(const FieldState& state, Quantity q, int i, int j, double p) {
    const NullGrid& g = state.grid();
    const auto& v = state.values(q);
    if (std::isinf(p)) {
        double m = 0.0;
        for (int mm = 0; mm < g.n_theta; ++mm)
            m = std::max(m, std::abs(v[g.idx(i, j, mm)]));
        return m;
    }
    if (p != 2.0 && p != 4.0 && p != 6.0)
        throw std::invalid_argument("sphere_norm supports p in {2, 4, 6, inf}");
    const double r = g.r_at(i, j);
    const double w = g.angular_weight() * (g.dim == 3 ? r * r : r);
    double acc = 0.0;
    for (int mm = 0; mm < g.n_theta; ++mm) {
        const double x = std::abs(v[g.idx(i, j, mm)]);
        acc += w * std::pow(x, p);
    }
    return std::pow(acc, 1.0 / p);
}

double cone_norm_outgoing(const FieldState& state, Quantity q, int i, int j) {
    return std::sqrt(std::max(0.0, cone_out_sq(state, q, i, j)));
}

double cone_norm_ingoing(const FieldState& state, Quantity q, int i, int j) {
    return std::sqrt(std::max(0.0, cone_in_sq(state, q, i, j, 0.0)));
}

namespace {

// Squared outgoing-cone integrals of q at every node, prefix-summed along
// ub. Matches cone_out_sq up to summation-order roundoff.
std::vector<double> out_prefix(const FieldState& s, Quantity q) {
    const NullGrid& g = s.grid();
    const auto& v = s.values(q);
    std::vector<double> p(static_cast<std::size_t>(g.n_u + 1) * (g.n_ub + 1), 0.0);
    for (int i = 0; i <= g.n_u; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * (g.n_ub + 1);
        double acc = 0.0;
        double a_left = angular_sq(s, v, i, 0, 0.0);
        p[base] = 0.0;
        for (int j = 1; j <= g.n_ub; ++j) {
            const double a_right = angular_sq(s, v, i, j, 0.0);
            double w0, w1;
            cell_moments(g.dim, g.r_at(i, j - 1), g.h_ub, +1.0, w0, w1);
            acc += a_left * w0 + a_right * w1;
            a_left = a_right;
            p[base + j] = acc;
        }
    }
    return p;
}

std::vector<double> in_prefix(const FieldState& s, Quantity q) {
    const NullGrid& g = s.grid();
    const auto& v = s.values(q);
    std::vector<double> p(static_cast<std::size_t>(g.n_u + 1) * (g.n_ub + 1), 0.0);
    for (int j = 0; j <= g.n_ub; ++j) {
        double acc = 0.0;
        double a_left = angular_sq(s, v, 0, j, 0.0);
        p[j] = 0.0;
        for (int i = 1; i <= g.n_u; ++i) {
            const double a_right = angular_sq(s, v, i, j, 0.0);
            double w0, w1;
            cell_moments(g.dim, g.r_at(i - 1, j), g.h_u, -1.0, w0, w1);
            acc += a_left * w0 + a_right * w1;
            a_left = a_right;
            p[static_cast<std::size_t>(i) * (g.n_ub + 1) + j] = acc;
        }
    }
    return p;
}

inline double rt(double sq) { return std::sqrt(std::max(0.0, sq)); }

}  // namespace

NormReport assemble_norm_report(const FieldState& state) {
    const NullGrid& g = state.grid();
    NormReport rep;
    rep.n_u = g.n_u;
    rep.n_ub = g.n_ub;
    const std::size_t rows = static_cast<std::size_t>(g.n_u + 1) * (g.n_ub + 1);
    const double isd = 1.0 / std::sqrt(g.delta);
    const bool tier3 = (g.dim == 3);

    const auto p_l = out_prefix(state, Quantity::l_phi);
    const auto p_om_out = out_prefix(state, Quantity::omega_phi);
    const auto p_lom = out_prefix(state, Quantity::l_omega_phi);
    const auto p_om2_out = out_prefix(state, Quantity::omega2_phi);
    const auto p_l2 = out_prefix(state, Quantity::l2_phi);
    const auto p_om_in = in_prefix(state, Quantity::omega_phi);
    const auto p_lb = in_prefix(state, Quantity::lbar_phi);
    const auto p_om2_in = in_prefix(state, Quantity::omega2_phi);
    const auto p_lbom = in_prefix(state, Quantity::lbar_omega_phi);
    const auto p_lb2 = in_prefix(state, Quantity::lbar2_phi);

    std::vector<double> p_lom2, p_om3_out, p_l2om, p_om3_in, p_lbom2, p_lb2om;
    if (tier3) {
        p_lom2 = out_prefix(state, Quantity::l_omega2_phi);
        p_om3_out = out_prefix(state, Quantity::omega3_phi);
        p_l2om = out_prefix(state, Quantity::l2_omega_phi);
        p_om3_in = in_prefix(state, Quantity::omega3_phi);
        p_lbom2 = in_prefix(state, Quantity::lbar_omega2_phi);
        p_lb2om = in_prefix(state, Quantity::lbar2_omega_phi);
    }

    rep.u.resize(rows);
    rep.ub.resize(rows);
    rep.e1.resize(rows);
    rep.e2.resize(rows);
    rep.e3.assign(rows, 0.0);
    rep.eb1.resize(rows);
    rep.eb2.resize(rows);
    rep.eb3.assign(rows, 0.0);
    rep.f2.resize(rows);
    rep.f3.assign(rows, 0.0);
    rep.fb2.resize(rows);
    rep.fb3.assign(rows, 0.0);
    rep.m.resize(rows);
    rep.s_linf_phi.resize(rows);
    rep.s_l4_lphi.resize(rows);
    rep.s_l4_omphi.resize(rows);
    rep.s_l4_lbphi.resize(rows);

    for (int i = 0; i <= g.n_u; ++i)
        for (int j = 0; j <= g.n_ub; ++j) {
            const std::size_t k = rep.row_index(i, j);
            rep.u[k] = g.u_at(i);
            rep.ub[k] = g.ub_at(j);
            rep.e1[k] = rt(p_l[k]) + isd * rt(p_om_out[k]);
            rep.e2[k] = rt(p_lom[k]) + isd * rt(p_om2_out[k]);
            rep.eb1[k] = rt(p_om_in[k]) + isd * rt(p_lb[k]);
            rep.eb2[k] = rt(p_om2_in[k]) + isd * rt(p_lbom[k]);
            rep.f2[k] = g.delta * rt(p_l2[k]);
            rep.fb2[k] = rt(p_lb2[k]);
            if (tier3) {
                rep.e3[k] = rt(p_lom2[k]) + isd * rt(p_om3_out[k]);
                rep.eb3[k] = rt(p_om3_in[k]) + isd * rt(p_lbom2[k]);
                rep.f3[k] = g.delta * rt(p_l2om[k]);
                rep.fb3[k] = rt(p_lb2om[k]);
            }
            rep.m[k] = rep.e1[k] + rep.e2[k] + rep.e3[k] + rep.eb1[k] + rep.eb2[k] +
                       rep.eb3[k] + rep.f2[k] + rep.f3[k] + rep.fb2[k] + rep.fb3[k];
            rep.s_linf_phi[k] =
                sphere_norm(state, Quantity::phi, i, j, std::numeric_limits<double>::infinity());
            rep.s_l4_lphi[k] = sphere_norm(state, Quantity::l_phi, i, j, 4.0);
            rep.s_l4_omphi[k] = sphere_norm(state, Quantity::omega_phi, i, j, 4.0);
            rep.s_l4_lbphi[k] = sphere_norm(state, Quantity::lbar_phi, i, j, 4.0);
        }
    return rep;
}

const char* kNormCsvHeader =
    "u,ub,e1,e2,e3,eb1,eb2,eb3,f2,f3,fb2,fb3,m,s_linf_phi,s_l4_lphi,s_l4_omphi,s_l4_lbphi";

std::string norm_report_csv(const NormReport& r) {
    std::string out(kNormCsvHeader);
    out += '\n';
    for (std::size_t k = 0; k < r.rows(); ++k) {
        out += fmt_g17(r.u[k]);
        const double* cols[] = {&r.ub[k], &r.e1[k], &r.e2[k], &r.e3[k], &r.eb1[k],
                                &r.eb2[k], &r.eb3[k], &r.f2[k], &r.f3[k], &r.fb2[k],
                                &r.fb3[k], &r.m[k], &r.s_linf_phi[k], &r.s_l4_lphi[k],
                                &r.s_l4_omphi[k], &r.s_l4_lbphi[k]};
        for (const double* c : cols) {
            out += ',';
            out += fmt_g17(*c);
        }
        out += '\n';
    }
    return out;
}

const char* sobolev_name(SobolevLemma lemma) {
    switch (lemma) {
        case SobolevLemma::cross_24: return "cross_section_trace_outgoing";
        case SobolevLemma::cross_25: return "cross_section_trace_ingoing";
        case SobolevLemma::circle_71: return "circle_pointwise";
        case SobolevLemma::circle_72: return "circle_trace_outgoing";
        case SobolevLemma::circle_73: return "circle_trace_ingoing";
    }
    return "unknown";
}

namespace {

struct RatioTracker {
    double worst = 0.0;
    double at_u = 0.0, at_ub = 0.0;
    bool degenerate = false;

    void feed(double lhs, double rhs, double u, double ub) {
        if (rhs == 0.0) {
            if (lhs > 0.0) degenerate = true;
            return;
        }
        const double ratio = lhs / rhs;
        if (ratio > worst) {
            worst = ratio;
            at_u = u;
            at_ub = ub;
        }
    }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SobolevReport sobolev_check(const FieldState& state, SobolevLemma lemma) {
    const NullGrid& g = state.grid();
    const bool cross = (lemma == SobolevLemma::cross_24 || lemma == SobolevLemma::cross_25);
    if (cross && g.dim != 3)
        throw std::invalid_argument("cross-section trace lemmas need dim 3");
    if (!cross && g.dim != 2)
        throw std::invalid_argument("circle lemmas need dim 2");

    SobolevReport rep;
    rep.lemma = lemma;
    RatioTracker a, b;

    switch (lemma) {
        case SobolevLemma::cross_24:
        case SobolevLemma::circle_72: {
            // outgoing-cone trace bounds, one slice per u
            const double q = (lemma == SobolevLemma::cross_24) ? 0.5 : 0.25;
            for (int i = 0; i <= g.n_u; ++i) {
                const double au = std::abs(g.u_at(i));
                const double c_l = cone_norm_outgoing(state, Quantity::l_phi, i, g.n_ub);
                const double c_phi = cone_norm_outgoing(state, Quantity::phi, i, g.n_ub);
                const double c_snab = cone_norm_outgoing(state, Quantity::snab_phi, i, g.n_ub);
                double rhs_a;
                if (lemma == SobolevLemma::cross_24)
                    rhs_a = std::sqrt(c_l) * std::sqrt(c_phi + au * c_snab);
                else
                    rhs_a = std::sqrt(c_l) * (std::sqrt(c_phi) + std::sqrt(au) * std::sqrt(c_snab));
                const double rhs_b = std::sqrt(c_l) * std::sqrt(c_phi);
                for (int j = 0; j <= g.n_ub; ++j) {
                    const double lhs_a =
                        std::pow(au, q) * sphere_norm(state, Quantity::phi, i, j, 4.0);
                    const double lhs_b = sphere_norm(state, Quantity::phi, i, j, 2.0);
                    a.feed(lhs_a, rhs_a, g.u_at(i), g.ub_at(j));
                    b.feed(lhs_b, rhs_b, g.u_at(i), g.ub_at(j));
                }
            }
            break;
        }
        case SobolevLemma::cross_25:
        case SobolevLemma::circle_73: {
            // ingoing-cone trace bounds, one slice per ub; initial-cone trace
            // anchors the right side
            const double q = (lemma == SobolevLemma::cross_25) ? 0.5 : 0.25;
            const double au0 = std::abs(g.u0);
            for (int j = 0; j <= g.n_ub; ++j) {
                const double trace4 = sphere_norm(state, Quantity::phi, 0, j, 4.0);
                const double trace2 = sphere_norm(state, Quantity::phi, 0, j, 2.0);
                const double c_lb = cone_norm_ingoing(state, Quantity::lbar_phi, g.n_u, j);
                const double c_phi = cone_norm_ingoing(state, Quantity::phi, g.n_u, j);
                double rhs_a;
                if (lemma == SobolevLemma::cross_25) {
                    const double w_lb =
                        rt(cone_in_sq(state, Quantity::lbar_phi, g.n_u, j, 1.0));
                    const double w_phi_m =
                        cone_in_sq(state, Quantity::phi, g.n_u, j, -1.0);
                    const double w_snab_p =
                        cone_in_sq(state, Quantity::snab_phi, g.n_u, j, 1.0);
                    rhs_a = std::pow(au0, q) * trace4 +
                            std::sqrt(w_lb) * std::pow(w_phi_m + w_snab_p, 0.25);
                } else {
                    const double w_snab2 =
                        rt(cone_in_sq(state, Quantity::snab_phi, g.n_u, j, 2.0));
                    rhs_a = std::pow(au0, q) * trace4 +
                            std::sqrt(c_lb) * (std::sqrt(c_phi) + std::sqrt(w_snab2));
                }
                const double rhs_b = trace2 + std::sqrt(c_lb) * std::sqrt(c_phi);
                for (int i = 0; i <= g.n_u; ++i) {
                    const double au = std::abs(g.u_at(i));
                    const double lhs_a =
                        std::pow(au, q) * sphere_norm(state, Quantity::phi, i, j, 4.0);
                    const double lhs_b = sphere_norm(state, Quantity::phi, i, j, 2.0);
                    a.feed(lhs_a, rhs_a, g.u_at(i), g.ub_at(j));
                    b.feed(lhs_b, rhs_b, g.u_at(i), g.ub_at(j));
                }
            }
            break;
        }
        case SobolevLemma::circle_71: {
            // pointwise bounds on each circle section
            for (int i = 0; i <= g.n_u; ++i) {
                const double au = std::abs(g.u_at(i));
                for (int j = 0; j <= g.n_ub; ++j) {
                    const double sup = sphere_norm(state, Quantity::phi, i, j, kInf);
                    const double l2 = sphere_norm(state, Quantity::phi, i, j, 2.0);
                    const double l4 = sphere_norm(state, Quantity::phi, i, j, 4.0);
                    const double l6 = sphere_norm(state, Quantity::phi, i, j, 6.0);
                    const double snab2 = sphere_norm(state, Quantity::snab_phi, i, j, 2.0);
                    const double rhs_a =
                        std::sqrt(au) * snab2 + l2 / std::sqrt(au);
                    a.feed(sup, rhs_a, g.u_at(i), g.ub_at(j));
                    const double lhs_b = std::pow(l6, 6.0);
                    const double rhs_b = std::pow(l4, 4.0) *
                                         (au * snab2 * snab2 + l2 * l2 / au);
                    b.feed(lhs_b, rhs_b, g.u_at(i), g.ub_at(j));
                }
            }
            break;
        }
    }

    rep.part_ratios = {a.worst, b.worst};
    if (a.worst >= b.worst) {
        rep.worst_ratio = a.worst;
        rep.at_u = a.at_u;
        rep.at_ub = a.at_ub;
    } else {
        rep.worst_ratio = b.worst;
        rep.at_u = b.at_u;
        rep.at_ub = b.at_ub;
    }
    rep.degenerate = a.degenerate || b.degenerate;
    return rep;
}

}  // namespace nullpulse
