#include "nullpulse/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace nullpulse {

double null_frame_rhs(int dim, double r, double phi, double l_phi,
                      double lbar_phi, double lap_theta_phi,
                      const Nonlinearity& nonlin, double forcing) {
    const double c = (dim == 3) ? 1.0 : 0.5;
    return lap_theta_phi / (r * r) + (c / r) * (l_phi - lbar_phi) - nonlin(phi) + forcing;
}

namespace {

// One fixed-point pass: center values by corner averaging with the current
// north guess, RHS at the cell center, updated north into `next`.
void rhs_pass(const NullGrid& g, double uc, double ubc, double rc,
              const double* south, const double* west, const double* east,
              const double* lap_s, const double* lap_w, const double* lap_e,
              const double* guess, const double* lap_guess,
              const Nonlinearity& nonlin, const std::vector<double>& fc,
              double* next) {
    const double inv2hub = 1.0 / (2.0 * g.h_ub);
    const double inv2hu = 1.0 / (2.0 * g.h_u);
    const double area = g.h_u * g.h_ub;
    (void)uc;
    (void)ubc;
    for (int m = 0; m < g.n_theta; ++m) {
        const double phic = 0.25 * (south[m] + west[m] + east[m] + guess[m]);
        const double lc = (east[m] - south[m] + guess[m] - west[m]) * inv2hub;
        const double lbc = (west[m] - south[m] + guess[m] - east[m]) * inv2hu;
        const double lapc = 0.25 * (lap_s[m] + lap_w[m] + lap_e[m] + lap_guess[m]);
        const double rhs = null_frame_rhs(g.dim, rc, phic, lc, lbc, lapc, nonlin, fc[m]);
        next[m] = west[m] + east[m] - south[m] + area * rhs;
    }
}

double max_abs_diff(const double* a, const double* b, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

void step_diamond(const NullGrid& g, int i, int j,
                  const double* south, const double* west, const double* east,
                  const double* lap_s, const double* lap_w, const double* lap_e,
                  const Nonlinearity& nonlin, const ForcingFn& forcing,
                  double* north, double* lap_n_scratch) {
    const int nt = g.n_theta;
    const double uc = g.u_at(i) - 0.5 * g.h_u;
    const double ubc = g.ub_at(j) - 0.5 * g.h_ub;
    const double rc = ubc - uc;

    static thread_local std::vector<double> n0, n1, lap_guess, fc;
    n0.resize(nt);
    n1.resize(nt);
    lap_guess.resize(nt);
    fc.assign(nt, 0.0);
    if (forcing)
        for (int m = 0; m < nt; ++m) fc[m] = forcing(uc, ubc, g.theta_at(m));

    // linear-extrapolation guess, then predictor
    for (int m = 0; m < nt; ++m) n0[m] = west[m] + east[m] - south[m];
    theta_derivative_line(g, 2, n0.data(), lap_guess.data());
    rhs_pass(g, uc, ubc, rc, south, west, east, lap_s, lap_w, lap_e,
             n0.data(), lap_guess.data(), nonlin, fc, n1.data());
    const double predictor_change = max_abs_diff(n1.data(), n0.data(), nt);

    // corrector
    theta_derivative_line(g, 2, n1.data(), lap_guess.data());
    rhs_pass(g, uc, ubc, rc, south, west, east, lap_s, lap_w, lap_e,
             n1.data(), lap_guess.data(), nonlin, fc, north);
    const double corrector_change = max_abs_diff(north, n1.data(), nt);

    double scale = 0.0;
    for (int m = 0; m < nt; ++m) scale = std::max(scale, std::abs(north[m]));
    const bool converged = corrector_change < 1e-12 || corrector_change < 1e-10 * scale;
    if (!converged && corrector_change > 0.5 * predictor_change)
        throw StepFailure(g.u_at(i), g.ub_at(j),
                          "center fixed point failed to contract at u=" +
                              std::to_string(g.u_at(i)) +
                              ", ub=" + std::to_string(g.ub_at(j)));

    theta_derivative_line(g, 2, north, lap_n_scratch);
}

namespace {

FieldState causal_sweep(const NullGrid& grid, const DataFn& data,
                        const Nonlinearity& nonlin, const ForcingFn& forcing) {
    nonlin.validate();
    FieldState state(grid, nonlin);
    state.set_forcing(forcing);
    const NullGrid& g = state.grid();
    const int nt = g.n_theta;
    auto& phi = state.phi();

    for (int m = 0; m < nt; ++m)
        if (std::abs(data(0.0, g.theta_at(m))) > 1e-12)
            throw std::invalid_argument("initial data must vanish at ub = 0");
    for (int j = 0; j <= g.n_ub; ++j)
        for (int m = 0; m < nt; ++m)
            phi[g.idx(0, j, m)] = data(g.ub_at(j), g.theta_at(m));
    // the ingoing cone ub = 0 stays identically zero

    std::vector<std::vector<double>> lap_prev(g.n_ub + 1, std::vector<double>(nt, 0.0));
    std::vector<std::vector<double>> lap_cur(g.n_ub + 1, std::vector<double>(nt, 0.0));
    for (int j = 0; j <= g.n_ub; ++j)
        theta_derivative_line(g, 2, &phi[g.idx(0, j, 0)], lap_prev[j].data());

    for (int i = 1; i <= g.n_u; ++i) {
        std::fill(lap_cur[0].begin(), lap_cur[0].end(), 0.0);
        for (int j = 1; j <= g.n_ub; ++j) {
            double* north = &phi[g.idx(i, j, 0)];
            step_diamond(g, i, j,
                         &phi[g.idx(i - 1, j - 1, 0)], &phi[g.idx(i, j - 1, 0)],
                         &phi[g.idx(i - 1, j, 0)],
                         lap_prev[j - 1].data(), lap_cur[j - 1].data(), lap_prev[j].data(),
                         nonlin, forcing, north, lap_cur[j].data());
            for (int m = 0; m < nt; ++m)
                if (!std::isfinite(north[m]) || std::abs(north[m]) > 1e8)
                    throw BlowupError(g.u_at(i), g.ub_at(j), "field exceeded the overflow guard");
        }
        std::swap(lap_prev, lap_cur);
    }

    state.fill_frame_derivatives();
    return state;
}

}  // namespace

FieldState evolve(const NullGrid& grid, const PulseSpec& spec,
                  const Nonlinearity& nonlin, const ForcingFn& forcing) {
    spec.validate();
    return causal_sweep(
        grid, [&spec](double ub, double theta) { return short_pulse_value(spec, ub, theta); },
        nonlin, forcing);
}

FieldState evolve_with_data(const NullGrid& grid, const DataFn& data,
                            const Nonlinearity& nonlin, const ForcingFn& forcing) {
    return causal_sweep(grid, data, nonlin, forcing);
}

double commutator_residual(const FieldState& state) {
    const NullGrid& g = state.grid();
    if (g.dim == 3) return 0.0;
    const std::vector<double> a = diff_ub(g, state.values(Quantity::omega_phi));
    const std::vector<double> b = diff_theta(g, state.values(Quantity::l_phi), 1);
    double m = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
    return m;
}

}  // namespace nullpulse
