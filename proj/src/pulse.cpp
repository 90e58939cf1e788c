#include "nullpulse/pulse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nullpulse/field.hpp"
#include "nullpulse/norms.hpp"

namespace nullpulse {

namespace {

constexpr double kPi = std::numbers::pi;

// sin^4(pi s) on (0,1): C^3 across the endpoints, derivatives in closed form.
double sin4_v(double s) {
    const double x = std::sin(kPi * s);
    return x * x * x * x;
}
double sin4_d1(double s) {
    const double sn = std::sin(kPi * s), cs = std::cos(kPi * s);
    return 4.0 * kPi * sn * sn * sn * cs;
}
double sin4_d2(double s) {
    const double sn = std::sin(kPi * s), cs = std::cos(kPi * s);
    return 4.0 * kPi * kPi * sn * sn * (3.0 * cs * cs - sn * sn);
}

// exp(-1/(s(1-s))) on (0,1): flat to all orders at the endpoints.
double bump_v(double s) {
    const double g = s * (1.0 - s);
    return std::exp(-1.0 / g);
}
double bump_d1(double s) {
    const double g = s * (1.0 - s);
    const double gp = 1.0 - 2.0 * s;
    return bump_v(s) * gp / (g * g);
}
double bump_d2(double s) {
    const double g = s * (1.0 - s);
    const double gp = 1.0 - 2.0 * s;
    const double w = gp / (g * g);
    // d/ds (gp / g^2) = -2/g^2 - 2 gp^2 / g^3
    const double wp = -2.0 / (g * g) - 2.0 * gp * gp / (g * g * g);
    return bump_v(s) * (w * w + wp);
}

// sin^4 squeezed into (1/2, 1): nonzero only after half the pulse width.
double sin4h_v(double s) { return sin4_v(2.0 * s - 1.0); }
double sin4h_d1(double s) { return 2.0 * sin4_d1(2.0 * s - 1.0); }
double sin4h_d2(double s) { return 4.0 * sin4_d2(2.0 * s - 1.0); }

const PulseProfile kProfiles[] = {
    {"sin4", 0.0, sin4_v, sin4_d1, sin4_d2},
    {"bump", 0.0, bump_v, bump_d1, bump_d2},
    {"sin4_half", 0.5, sin4h_v, sin4h_d1, sin4h_d2},
};

inline bool in_support(const PulseProfile& p, double s) {
    return s > p.onset && s < 1.0;
}

double angmod(int m, double theta, int omega_order) {
    if (m == 0) return omega_order == 0 ? 1.0 : 0.0;
    const double mm = m;
    switch (omega_order % 4) {
        case 0: return std::pow(mm, omega_order) * std::cos(m * theta);
        case 1: return -std::pow(mm, omega_order) * std::sin(m * theta);
        case 2: return -std::pow(mm, omega_order) * std::cos(m * theta);
        default: return std::pow(mm, omega_order) * std::sin(m * theta);
    }
}

double dang1(int m, double theta) { return angmod(m, theta, 1); }

}  // namespace

const PulseProfile& profile_by_name(const std::string& name) {
    for (const auto& p : kProfiles)
        if (p.name == name) return p;
    throw std::invalid_argument("unknown pulse profile: " + name);
}

void PulseSpec::validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("pulse delta must be > 0");
    if (angular_mode < 0) throw std::invalid_argument("angular_mode must be >= 0");
    profile_by_name(profile);
}

double short_pulse_value(const PulseSpec& spec, double ub, double theta) {
    const PulseProfile& p = profile_by_name(spec.profile);
    const double s = ub / spec.delta;
    if (!in_support(p, s)) return 0.0;
    return spec.amplitude * std::sqrt(spec.delta) * p.v(s) * angmod(spec.angular_mode, theta, 0);
}

double short_pulse_l(const PulseSpec& spec, double ub, double theta) {
    const PulseProfile& p = profile_by_name(spec.profile);
    const double s = ub / spec.delta;
    if (!in_support(p, s)) return 0.0;
    return spec.amplitude / std::sqrt(spec.delta) * p.d1(s) * angmod(spec.angular_mode, theta, 0);
}

double short_pulse_l2(const PulseSpec& spec, double ub, double theta) {
    const PulseProfile& p = profile_by_name(spec.profile);
    const double s = ub / spec.delta;
    if (!in_support(p, s)) return 0.0;
    return spec.amplitude * std::pow(spec.delta, -1.5) * p.d2(s) * angmod(spec.angular_mode, theta, 0);
}

double short_pulse_omega(const PulseSpec& spec, double ub, double theta, int order) {
    const PulseProfile& p = profile_by_name(spec.profile);
    const double s = ub / spec.delta;
    if (!in_support(p, s)) return 0.0;
    return spec.amplitude * std::sqrt(spec.delta) * p.v(s) * angmod(spec.angular_mode, theta, order);
}

const DataBoundRow* DataBoundsReport::find(const std::string& quantity) const {
    for (const auto& r : rows)
        if (r.quantity == quantity) return &r;
    return nullptr;
}

namespace {

// Sup and L2(C_{u0}) of an analytic data quantity sampled on the grid. The
// L2 uses the same moment-exact cone quadrature as the norms module, via a
// throwaway single-row state.
struct DataSample {
    double sup = 0.0;
    double l2 = 0.0;
};

template <typename F>
DataSample sample_data_quantity(const NullGrid& g, F&& value) {
    DataSample out;
    // throwaway state holding the sampled values in phi on row i=0
    FieldState tmp(g, Nonlinearity{});
    auto& phi = tmp.phi();
    for (int j = 0; j <= g.n_ub; ++j)
        for (int m = 0; m < g.n_theta; ++m) {
            const double v = value(g.ub_at(j), g.theta_at(m));
            phi[g.idx(0, j, m)] = v;
            out.sup = std::max(out.sup, std::abs(v));
        }
    out.l2 = cone_norm_outgoing(tmp, Quantity::phi, 0, g.n_ub);
    return out;
}

}  // namespace

DataBoundsReport verify_data_bounds(const PulseSpec& spec, const NullGrid& grid,
                                    const FieldState* evolved) {
    spec.validate();
    DataBoundsReport rep;
    auto add = [&rep](std::string name, double p, bool eq, const DataSample& s, bool sup_row) {
        DataBoundRow row;
        row.quantity = std::move(name);
        row.exponent = p;
        row.equality = eq;
        row.value = sup_row ? s.sup : s.l2;
        row.structural_zero = (row.value == 0.0);
        rep.rows.push_back(std::move(row));
    };

    auto L = [&](double ub, double th) { return short_pulse_l(spec, ub, th); };
    auto L2 = [&](double ub, double th) { return short_pulse_l2(spec, ub, th); };
    auto Om1 = [&](double ub, double th) { return short_pulse_omega(spec, ub, th, 1); };
    auto Om2 = [&](double ub, double th) { return short_pulse_omega(spec, ub, th, 2); };

    const DataSample sL = sample_data_quantity(grid, L);
    const DataSample sL2 = sample_data_quantity(grid, L2);
    const DataSample sOm = sample_data_quantity(grid, Om1);
    const DataSample sOm2 = sample_data_quantity(grid, Om2);
    // L Omega data: spatial profile derivative times the Omega factor
    const DataSample sLOm = sample_data_quantity(grid, [&](double ub, double th) {
        const PulseProfile& p = profile_by_name(spec.profile);
        const double s = ub / spec.delta;
        if (!(s > p.onset && s < 1.0)) return 0.0;
        double base = spec.amplitude / std::sqrt(spec.delta) * p.d1(s);
        return base * dang1(spec.angular_mode, th);
    });
    const DataSample sL2Om = sample_data_quantity(grid, [&](double ub, double th) {
        const PulseProfile& p = profile_by_name(spec.profile);
        const double s = ub / spec.delta;
        if (!(s > p.onset && s < 1.0)) return 0.0;
        double base = spec.amplitude * std::pow(spec.delta, -1.5) * p.d2(s);
        return base * dang1(spec.angular_mode, th);
    });

    // sup rows: closed-form data derivatives
    add("sup_Lphi", -0.5, true, sL, true);
    add("sup_L2phi", -1.5, true, sL2, true);
    add("sup_LOmphi", -0.5, false, sLOm, true);
    add("sup_Omphi", 0.0, false, sOm, true);
    add("sup_Om2phi", 0.0, false, sOm2, true);
    // l2 rows
    add("l2_Lphi", 0.0, true, sL, false);
    add("l2_L2phi", -1.0, true, sL2, false);
    add("l2_LOmphi", 0.0, false, sLOm, false);
    add("l2_Omphi", 0.5, false, sOm, false);
    add("l2_L2Omphi", -1.0, false, sL2Om, false);

    if (evolved != nullptr) {
        // Lbar rows from the evolved restriction to the initial cone.
        const auto& lb = evolved->values(Quantity::lbar_phi);
        const auto& lbom = evolved->values(Quantity::lbar_omega_phi);
        const NullGrid& g = evolved->grid();
        DataSample sLb, sLbOm;
        for (int j = 0; j <= g.n_ub; ++j)
            for (int m = 0; m < g.n_theta; ++m) {
                sLb.sup = std::max(sLb.sup, std::abs(lb[g.idx(0, j, m)]));
                sLbOm.sup = std::max(sLbOm.sup, std::abs(lbom[g.idx(0, j, m)]));
            }
        add("sup_Lbphi", 0.5, false, sLb, true);
        add("sup_LbOmphi", 0.5, false, sLbOm, true);
    }
    return rep;
}

}  // namespace nullpulse
