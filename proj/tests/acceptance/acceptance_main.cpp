// Acceptance gate: one PASS/FAIL line per criterion, exit code = #failures.
// Every tolerance is pinned here, next to the check that uses it.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nullpulse/evolve.hpp"
#include "nullpulse/experiments.hpp"

using namespace nullpulse;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, ap);
    va_end(ap);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const ScalingFit* find_row(const SweepReport& rep, const std::string& name) {
    for (const ScalingFit& f : rep.rows)
        if (f.quantity == name) return &f;
    return nullptr;
}

}  // namespace

int main() {
    const fs::path work = fs::temp_directory_path() / "nullpulse_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    try {
        // --- 1. convergence order in [1.9, 2.1] on >= 3 dyadic levels -----
        {
            RunConfig lin_cfg;
            lin_cfg.n_u = 60;
            lin_cfg.n_ub = 16;
            lin_cfg.delta = 0.04;
            const ConvergenceReport lin = convergence_study(lin_cfg, "linear3d");

            RunConfig mms_cfg;
            mms_cfg.n_u = 40;
            mms_cfg.n_ub = 16;
            const ConvergenceReport mms = convergence_study(mms_cfg, "mms2d");

            const bool ok = lin.levels.size() >= 3 && mms.levels.size() >= 3 &&
                            lin.fitted_order >= 1.9 && lin.fitted_order <= 2.1 &&
                            mms.fitted_order >= 1.9 && mms.fitted_order <= 2.1 &&
                            !lin.failed && !mms.failed && lin.seconds < 60.0 &&
                            mms.seconds < 60.0;
            report(1, ok,
                   fmt("convergence order linear3d=%.4f mms2d=%.4f (target [1.9,2.1], "
                       "3 dyadic levels, %.1fs/%.1fs < 60s each)",
                       lin.fitted_order, mms.fitted_order, lin.seconds, mms.seconds));
        }

        // Shared sweeps: defocusing k=3 and focusing k=7 at default resolution.
        const auto sweep_t0 = std::chrono::steady_clock::now();
        RunConfig cfg_d;  // defaults: dim 3, 300x64, deltas {0.04,0.02,0.01,0.005}
        const SweepReport sweep_d = delta_sweep(cfg_d);
        const SweepReport prop_d = prop61_check(cfg_d);

        RunConfig cfg_f = cfg_d;
        cfg_f.sign = "focusing";
        cfg_f.power_k = 7;
        const SweepReport sweep_f = delta_sweep(cfg_f);
        const SweepReport prop_f = prop61_check(cfg_f);
        const double sweep_seconds = seconds_since(sweep_t0);

        // --- 2. Huygens region: |phi| <= 1e-13 below the pulse onset ------
        {
            RunConfig cfg_h;
            cfg_h.profile = "sin4_half";
            cfg_h.delta_list = {0.02};
            const SweepReport half = delta_sweep(cfg_h);

            double worst = 0.0;
            for (const SweepReport* rep : {&sweep_d, &sweep_f, &half})
                for (const RunSummary& r : rep->runs)
                    worst = std::max(worst, r.huygens_residual);
            const bool ok = half.all_completed && worst <= 1e-13;
            report(2, ok,
                   fmt("max |phi| below pulse onset %.3g (tolerance 1e-13, "
                       "over %zu runs incl. delayed-onset profile)",
                       worst, sweep_d.runs.size() + sweep_f.runs.size() + half.runs.size()));
        }

        // --- 3. data-side exponents -0.5, -1.5, -1.0, 0.0 within 0.05 ----
        {
            struct Want {
                const char* row;
                double p;
            };
            const Want want[] = {{"data_sup_l_phi", -0.5},
                                 {"data_sup_l2_phi", -1.5},
                                 {"data_l2_l2_phi", -1.0},
                                 {"data_l2_l_phi", 0.0}};
            bool ok = true;
            std::string detail = "data slopes";
            for (const Want& w : want) {
                const ScalingFit* f = find_row(sweep_d, w.row);
                if (!f) {
                    ok = false;
                    detail += fmt(" %s=MISSING", w.row);
                    continue;
                }
                if (std::abs(f->slope - w.p) > 0.05) ok = false;
                detail += fmt(" %+.4f(target %+.1f)", f->slope, w.p);
            }
            report(3, ok, detail + " (tolerance 0.05 over deltas {0.04,0.02,0.01,0.005})");
        }

        // --- 4. a priori bound spreads <= 3, no blow-up, sweeps < 10 min --
        {
            bool ok = sweep_d.all_completed && sweep_f.all_completed &&
                      prop_d.all_completed && prop_f.all_completed &&
                      sweep_seconds < 600.0;
            double worst_spread = 0.0;
            for (const SweepReport* rep : {&sweep_d, &sweep_f}) {
                for (const ScalingFit& f : rep->rows) {
                    if (f.verdict == Verdict::violated) ok = false;
                    if (f.equality || f.verdict == Verdict::structurally_zero) continue;
                    worst_spread = std::max(worst_spread, f.spread);
                    if (f.spread > 3.0) ok = false;
                }
            }
            for (const SweepReport* rep : {&prop_d, &prop_f})
                for (const ScalingFit& f : rep->rows)
                    if (f.verdict == Verdict::violated) ok = false;
            report(4, ok,
                   fmt("bound-row spread max %.3f (limit 3) over defocusing k=3 and "
                       "focusing k=7, all runs completed, sweeps %.1fs (limit 600s)",
                       worst_spread, sweep_seconds));
        }

        // --- 5. energy identity: rel residual <= 1%, contracts >= 1.7x ----
        RunConfig cfg_e;  // default resolution at delta 0.01
        FieldState coarse = evolve(cfg_e.make_grid(0.01), cfg_e.make_pulse(0.01),
                                   cfg_e.make_nonlinearity());
        RunConfig cfg_e2 = cfg_e;
        cfg_e2.n_u = 2 * cfg_e.n_u;
        cfg_e2.n_ub = 2 * cfg_e.n_ub;
        FieldState fine = evolve(cfg_e2.make_grid(0.01), cfg_e2.make_pulse(0.01),
                                 cfg_e2.make_nonlinearity());
        {
            const double l1 =
                energy_identity_audit(coarse, Multiplier::L, cfg_e.n_u, cfg_e.n_ub)
                    .rel_residual;
            const double l2 =
                energy_identity_audit(fine, Multiplier::L, cfg_e2.n_u, cfg_e2.n_ub)
                    .rel_residual;
            const double b1 =
                energy_identity_audit(coarse, Multiplier::Lbar, cfg_e.n_u, cfg_e.n_ub / 2)
                    .rel_residual;
            const double b2 =
                energy_identity_audit(fine, Multiplier::Lbar, cfg_e2.n_u, cfg_e2.n_ub / 2)
                    .rel_residual;
            const bool ok = l1 <= 0.01 && b1 <= 0.01 && l2 <= l1 / 1.7 && b2 <= b1 / 1.7;
            report(5, ok,
                   fmt("ledger rel residual L %.3g -> %.3g, Lbar %.3g -> %.3g "
                       "(each <= 1e-2, refinement contraction >= 1.7x)",
                       l1, l2, b1, b2));
        }

        // --- 6. kinetic flux: delta-flat < 5%, amplitude x2 -> x4 < 1% ----
        {
            double kmin = 1e300, kmax = 0.0;
            for (const RunSummary& r : sweep_d.runs) {
                kmin = std::min(kmin, r.kinetic_flux);
                kmax = std::max(kmax, r.kinetic_flux);
            }
            const double variation = kmax / kmin - 1.0;

            RunConfig cfg_a;
            cfg_a.n_u = 150;
            cfg_a.n_ub = 32;
            const FieldState one = evolve(cfg_a.make_grid(0.02), cfg_a.make_pulse(0.02),
                                          cfg_a.make_nonlinearity());
            cfg_a.amplitude = 2.0;
            const FieldState two = evolve(cfg_a.make_grid(0.02), cfg_a.make_pulse(0.02),
                                          cfg_a.make_nonlinearity());
            const double ratio =
                conserved_energy_flux(two).kinetic / conserved_energy_flux(one).kinetic;

            const bool ok = variation < 0.05 && std::abs(ratio - 4.0) < 0.01 * 4.0;
            report(6, ok,
                   fmt("kinetic flux varies %.2f%% across deltas (limit 5%%), "
                       "amplitude x2 gives x%.9f (target 4 within 1%%)",
                       100.0 * variation, ratio));
        }

        // --- 7. Sobolev ratios: finite, refinement-stable, delta-uniform --
        {
            bool ok = true;
            std::string detail = "trace ratios";

            // Refinement stability on the criterion-5 state pair (dim 3).
            for (SobolevLemma lem : {SobolevLemma::cross_24, SobolevLemma::cross_25}) {
                const double r1 = sobolev_check(coarse, lem).worst_ratio;
                const double r2 = sobolev_check(fine, lem).worst_ratio;
                if (!std::isfinite(r1) || !std::isfinite(r2) || r1 <= 0.0) ok = false;
                const double change = std::abs(r2 - r1) / r1;
                if (change >= 0.10) ok = false;
                detail += fmt(" %s %.4f->%.4f", sobolev_name(lem), r1, r2);
            }

            // Delta-uniformity across the default sweep (dim 3 audit).
            const AuditReport audit3 = run_audit(cfg_d);
            if (!audit3.all_finite) ok = false;
            for (std::size_t s = 0; s < 2; ++s) {
                double rmin = 1e300, rmax = 0.0;
                for (const AuditEntry& e : audit3.entries) {
                    const double r = e.sobolev[s].worst_ratio;
                    if (!std::isfinite(r)) ok = false;
                    rmin = std::min(rmin, r);
                    rmax = std::max(rmax, r);
                }
                if (rmax / rmin > 3.0) ok = false;
            }

            // Circle lemmas (dim 2): audited across deltas and one refinement.
            RunConfig cfg2;
            cfg2.dim = 2;
            cfg2.n_theta = 16;
            cfg2.angular_mode = 2;
            cfg2.n_u = 150;
            cfg2.n_ub = 32;
            cfg2.delta_list = {0.04, 0.02};
            const AuditReport audit2 = run_audit(cfg2);
            if (!audit2.all_finite) ok = false;

            const FieldState c2 = evolve(cfg2.make_grid(0.02), cfg2.make_pulse(0.02),
                                         cfg2.make_nonlinearity());
            RunConfig cfg2f = cfg2;
            cfg2f.n_u = 300;
            cfg2f.n_ub = 64;
            const FieldState f2 = evolve(cfg2f.make_grid(0.02), cfg2f.make_pulse(0.02),
                                         cfg2f.make_nonlinearity());
            for (SobolevLemma lem :
                 {SobolevLemma::circle_71, SobolevLemma::circle_72, SobolevLemma::circle_73}) {
                const double r1 = sobolev_check(c2, lem).worst_ratio;
                const double r2 = sobolev_check(f2, lem).worst_ratio;
                if (!std::isfinite(r1) || !std::isfinite(r2) || r1 <= 0.0) ok = false;
                if (std::abs(r2 - r1) / r1 >= 0.10) ok = false;
                detail += fmt(" %s %.4f->%.4f", sobolev_name(lem), r1, r2);
            }

            report(7, ok, detail + " (finite, <10% refinement change, <=3x over deltas)");
        }

        // --- 8. focusing contrast: ODE oracle gap <= 1e-3, pulse survives -
        {
            const double ti = ode_blowup_time_integrate(3, 1.0);
            const double tq = ode_blowup_time_quadrature(3, 1.0);
            const double gap = std::abs(ti - tq) / tq;

            RunConfig cfg_c;
            cfg_c.sign = "focusing";
            const ContrastReport con = focusing_contrast(cfg_c);
            const double flux_gap = std::abs(con.kinetic_flux - con.e0) / con.e0;

            const bool ok = gap <= 1e-3 && con.pde_completed && con.ode_before_horizon &&
                            flux_gap <= 1e-6;
            report(8, ok,
                   fmt("ode blow-up time %.10f vs quadrature %.10f (rel gap %.2g <= 1e-3); "
                       "matched pulse completed=%d, E0 met to %.2g (<= 1e-6), "
                       "ode t=%.3f < horizon %.1f",
                       ti, tq, gap, con.pde_completed ? 1 : 0, flux_gap, con.ode.t_integrator,
                       con.horizon));
        }

        // --- 9. determinism: byte-identical outputs on repeated sweeps ----
        {
            RunConfig cfg_r;
            cfg_r.delta_list = {0.04, 0.02};
            const fs::path da = work / "det_a";
            const fs::path db = work / "det_b";
            emit_sweep_report(delta_sweep(cfg_r), da.string(), "sweep");
            emit_sweep_report(delta_sweep(cfg_r), db.string(), "sweep");

            bool ok = true;
            for (const char* name : {"sweep.csv", "sweep.json", "sweep.gp"})
                if (slurp(da / name) != slurp(db / name) || slurp(da / name).empty())
                    ok = false;
            report(9, ok, "two identical sweep invocations byte-identical (csv, json, gp)");
        }
    } catch (const std::exception& e) {
        std::printf("FAIL criterion 0: unexpected exception: %s\n", e.what());
        ++failures;
    }

    std::printf("acceptance: %d/9 criteria passed\n", 9 - failures);
    return failures > 0 ? 1 : 0;
}
