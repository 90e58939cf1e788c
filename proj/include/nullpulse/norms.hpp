#pragma once

#include <string>
#include <vector>

#include "nullpulse/field.hpp"

namespace nullpulse {

// L^p norm (p in {2, 4, 6, inf}) of a quantity over the cross section S_{ub,u}
// at node (i, j): (sum_m w_m |q|^p)^{1/p} with w_m = r^{dim-1} * angular
// weight; the sup norm ignores weights.
double sphere_norm(const FieldState& state, Quantity q, int i, int j, double p);

// L^2 norm over the outgoing cone segment C_u = {u_i} x [0, ub_j] x S.
// The ub quadrature uses per-cell moment weights: exact whenever the
// squared angular integral is piecewise linear in ub (the r^{dim-1} factor
// is integrated in closed form).
double cone_norm_outgoing(const FieldState& state, Quantity q, int i, int j);
// Same over the ingoing cone segment Cbar_ub = [u0, u_i] x {ub_j} x S.
double cone_norm_ingoing(const FieldState& state, Quantity q, int i, int j);

// Flux-norm hierarchy evaluated at every node (u_i, ub_j). Tier n pairs an
// outgoing norm with delta^{-1/2} times its angular companion:
//   E1 = |L phi|_{C_u} + delta^{-1/2} |Om phi|_{C_u}
//   Eb1 = |Om phi|_{Cb} + delta^{-1/2} |Lbar phi|_{Cb}
//   E2/Eb2: one extra Omega; E3/Eb3 (dim 3 only): two extra
//   F2 = delta |L^2 phi|_{C_u}, Fb2 = |Lbar^2 phi|_{Cb}
//   F3 = delta |L^2 Om phi|_{C_u}, Fb3 = |Lbar^2 Om phi|_{Cb} (dim 3 only)
// M is the sum of every tier defined for the dim. Tier-3 columns are zero
// in dim 2. Sphere columns carry pointwise cross-section norms.
struct NormReport {
    int n_u = 0, n_ub = 0;
    std::vector<double> u, ub;  // per row
    std::vector<double> e1, e2, e3, eb1, eb2, eb3;
    std::vector<double> f2, f3, fb2, fb3, m;
    std::vector<double> s_linf_phi, s_l4_lphi, s_l4_omphi, s_l4_lbphi;

    std::size_t rows() const { return u.size(); }
    std::size_t row_index(int i, int j) const {
        return static_cast<std::size_t>(i) * (n_ub + 1) + j;
    }
    double m_final() const { return m.empty() ? 0.0 : m.back(); }
};

NormReport assemble_norm_report(const FieldState& state);

// CSV serialization; fixed 17-column contract, one row per (u, ub), u-major.
std::string norm_report_csv(const NormReport& report);
extern const char* kNormCsvHeader;

// Cross-section Sobolev inequalities, checked on the evolved field.
// cross_24 / cross_25: dim 3 (outgoing / ingoing trace versions).
// circle_71 / circle_72 / circle_73: dim 2.
enum class SobolevLemma { cross_24, cross_25, circle_71, circle_72, circle_73 };

const char* sobolev_name(SobolevLemma lemma);

struct SobolevReport {
    SobolevLemma lemma;
    double worst_ratio = 0.0;  // max over admissible slices of LHS/RHS
    double at_u = 0.0, at_ub = 0.0;
    bool degenerate = false;  // some slice had RHS == 0 with LHS > 0
    std::vector<double> part_ratios;  // one entry per inequality in the lemma
};

SobolevReport sobolev_check(const FieldState& state, SobolevLemma lemma);

}  // namespace nullpulse
