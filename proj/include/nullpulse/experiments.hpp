#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nullpulse/energy.hpp"
#include "nullpulse/evolve.hpp"
#include "nullpulse/field.hpp"
#include "nullpulse/norms.hpp"
#include "nullpulse/pulse.hpp"

namespace nullpulse {

// One experiment run configuration; every field has a CLI flag and a config
// file key of the same name.
struct RunConfig {
    int dim = 3;
    double u0 = -4.0;
    double u_end = -1.0;
    double delta = 0.01;
    int n_u = 300;
    int n_ub = 64;  // cells across the pulse, held fixed per delta
    int n_theta = 1;

    std::string profile = "sin4";
    double amplitude = 1.0;
    int angular_mode = 0;

    std::string nonlinearity = "power";  // "power" | "exp" | "none"
    int power_k = 3;
    std::string sign = "defocusing";  // "defocusing" | "focusing"

    std::vector<double> delta_list = {0.04, 0.02, 0.01, 0.005};
    double headroom = 3.0;  // allowed max/min ratio spread for bound rows
    double e0 = 0.0;        // contrast: required initial kinetic flux (0 = 2x base)
    std::string out = "out";

    Nonlinearity make_nonlinearity() const;
    NullGrid make_grid(double delta_override) const;
    PulseSpec make_pulse(double delta_override) const;
    void validate() const;
};

enum class Verdict { bound_respected, violated, inconclusive, structurally_zero };
const char* verdict_name(Verdict v);

// Scaling diagnosis of one tracked quantity across the delta sweep.
// For bound rows (q <= C delta^p): bound-respected iff the ratio series
// q/delta^p has max/min <= headroom AND the fitted slope is >= p - 0.1;
// violated iff the slope falls below p - 0.1 (the constant cannot stay
// uniform); inconclusive otherwise (typically over-satisfied bounds).
// For equality rows (closed-form data quantities): respected iff
// |slope - p| <= 0.05, violated iff |slope - p| > 0.1.
struct ScalingFit {
    std::string quantity;
    double exponent = 0.0;
    bool equality = false;
    std::vector<double> deltas;
    std::vector<double> values;
    std::vector<double> ratios;  // value / delta^p
    double slope = 0.0;
    double spread = 0.0;  // max ratio / min ratio
    Verdict verdict = Verdict::inconclusive;
};

ScalingFit fit_scaling(std::string quantity, double exponent, bool equality,
                       std::vector<double> deltas, std::vector<double> values,
                       double headroom);

struct RunSummary {
    double delta = 0.0;
    bool completed = false;
    double blowup_u = 0.0, blowup_ub = 0.0;
    double sup_phi = 0.0;
    double m_final = 0.0;
    double huygens_residual = 0.0;  // max |phi| at/below the pulse onset
    double kinetic_flux = 0.0;
    double potential_flux = 0.0;
    NormReport norms;  // full per-node table, feeds the raw-norms CSV
};

// Tracked-table sweep: evolves one run per delta at fixed h_u and fixed
// n_ub, measures the a priori quantities (worst cone norms over the slab,
// sup phi) and the data-side closed-form rows, and fits scalings.
struct SweepReport {
    RunConfig config;
    std::vector<RunSummary> runs;
    std::vector<ScalingFit> rows;
    bool any_violated = false;
    bool all_completed = true;
};

SweepReport delta_sweep(const RunConfig& config);

// Sup norms on the final ingoing cone Cbar_delta across the sweep, against
// the late-time upper bounds (dim 3 only): |L phi| and |phi| vs delta^{1/4},
// |Lbar phi| vs delta^{5/4}, |Omega phi| vs delta^{1/4}.
SweepReport prop61_check(const RunConfig& config);

// Grid-convergence study against an exact solution. Cases:
//   "linear3d": zero nonlinearity, spherical pulse; exact solution
//     phi = (ub - u0) a sqrt(delta) psi0(ub/delta) / r.
//   "mms2d": manufactured phi* = sin(u) sin(ub) cos(2 theta) with matching
//     forcing, exp_focusing nonlinearity.
// Three dyadic (h_u, h_ub) levels; theta resolution fixed (spectral).
struct ConvergenceLevel {
    int n_u = 0, n_ub = 0;
    double h_u = 0.0, h_ub = 0.0;
    double max_error = 0.0;
};

struct ConvergenceReport {
    std::string casename;
    std::vector<ConvergenceLevel> levels;
    std::vector<double> pair_orders;  // log2(e_k / e_{k+1})
    double fitted_order = 0.0;
    bool exact_zero = false;  // every level's error is exactly zero
    bool failed = false;      // fitted order < 1.5 (and not exact_zero)
    double seconds = 0.0;     // wall time, console display only, never serialized
};

ConvergenceReport convergence_study(const RunConfig& config, const std::string& casename);

// Focusing blow-up contrast: the PDE run disperses while the spatially
// homogeneous ODE phi'' = |phi|^{k-1} phi blows up in finite time.
struct OdeBlowup {
    int k = 3;
    double phi0 = 1.0;
    double t_integrator = 0.0;  // adaptive RK with event detection
    double t_quadrature = 0.0;  // first-integral time integral
    double rel_gap = 0.0;
};

// Adaptive embedded RK (Cash-Karp 4/5) on phi'' = |phi|^{k-1} phi up to the
// event |phi| >= 1e12, plus the asymptotic tail of the blow-up branch.
double ode_blowup_time_integrate(int k, double phi0);
// Independent route: t = int_{phi0}^inf dphi / sqrt(2 (phi^{k+1} - phi0^{k+1}) / (k+1)).
double ode_blowup_time_quadrature(int k, double phi0);

struct ContrastReport {
    RunConfig config;
    double amplitude_used = 0.0;
    double kinetic_flux = 0.0;
    double e0 = 0.0;
    bool pde_completed = false;
    double pde_sup_phi = 0.0;
    double horizon = 0.0;  // |u0|
    bool ode_before_horizon = false;
    OdeBlowup ode;
};

ContrastReport focusing_contrast(const RunConfig& config);

// Sobolev + energy-ledger audit over the sweep.
struct AuditEntry {
    double delta = 0.0;
    std::vector<SobolevReport> sobolev;
    std::vector<EnergyLedger> ledgers;  // X = L at (u_end, delta), X = Lbar at (u_end, delta/2)
};

struct AuditReport {
    RunConfig config;
    std::vector<AuditEntry> entries;
    bool all_finite = true;
    double worst_rel_residual = 0.0;
};

AuditReport run_audit(const RunConfig& config);

// ---- report emission ----------------------------------------------------
// Writers are deterministic: fixed row order, %.17g floats, no timestamps.
// Each emitter writes CSV tables and a JSON summary into out_dir; sweep and
// convergence emitters add a gnuplot script with reference slopes. Every
// emitter returns false iff some verdict is violated or a run failed.

bool emit_sweep_report(const SweepReport& report, const std::string& out_dir,
                       const std::string& stem = "sweep");
bool emit_convergence_report(const std::vector<ConvergenceReport>& reports,
                             const RunConfig& config, const std::string& out_dir);
bool emit_contrast_report(const ContrastReport& report, const std::string& out_dir);
bool emit_audit_report(const AuditReport& report, const std::string& out_dir);
bool emit_run_report(const RunConfig& config, const RunSummary& run,
                     const NormReport& norms, const std::string& out_dir);

std::string run_summary_json(const RunConfig& config, const RunSummary& run);

}  // namespace nullpulse
