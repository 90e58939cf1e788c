#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nullpulse/experiments.hpp"

namespace np = nullpulse;

namespace {

void add_config_flags(CLI::App* cmd, np::RunConfig& cfg) {
    cmd->add_option("--dim", cfg.dim, "spatial dimension, 2 or 3")->capture_default_str();
    cmd->add_option("--u0", cfg.u0, "initial outgoing coordinate (u0 < u_end < 0)")
        ->capture_default_str();
    cmd->add_option("--u_end", cfg.u_end, "final outgoing coordinate")
        ->capture_default_str();
    cmd->add_option("--delta", cfg.delta, "pulse width")->capture_default_str();
    cmd->add_option("--n_u", cfg.n_u, "cells along u")->capture_default_str();
    cmd->add_option("--n_ub", cfg.n_ub, "cells across the pulse")->capture_default_str();
    cmd->add_option("--n_theta", cfg.n_theta, "angular points (1 in dim 3 spherical)")
        ->capture_default_str();
    cmd->add_option("--profile", cfg.profile, "pulse profile: sin4, bump, sin4_half")
        ->capture_default_str();
    cmd->add_option("--amplitude", cfg.amplitude, "pulse amplitude a")
        ->capture_default_str();
    cmd->add_option("--angular_mode", cfg.angular_mode, "cos(m theta) modulation")
        ->capture_default_str();
    cmd->add_option("--nonlinearity", cfg.nonlinearity, "power, exp or none")
        ->capture_default_str();
    cmd->add_option("--power_k", cfg.power_k, "odd power k >= 3")->capture_default_str();
    cmd->add_option("--sign", cfg.sign, "defocusing or focusing")->capture_default_str();
    cmd->add_option("--delta_list", cfg.delta_list, "sweep widths (comma separated)")
        ->delimiter(',');
    cmd->add_option("--headroom", cfg.headroom, "allowed ratio spread for bound rows")
        ->capture_default_str();
    cmd->add_option("--e0", cfg.e0, "contrast kinetic-flux target (0: 2x base)")
        ->capture_default_str();
    cmd->add_option("--out", cfg.out, "output directory")->capture_default_str();
    cmd->set_config("--config", "", "plain key=value config file");
}

int do_run(const np::RunConfig& cfg) {
    cfg.validate();
    np::RunSummary sum;
    sum.delta = cfg.delta;
    try {
        np::FieldState st = np::evolve(cfg.make_grid(cfg.delta), cfg.make_pulse(cfg.delta),
                                       cfg.make_nonlinearity());
        sum.completed = true;
        sum.sup_phi = st.max_abs(np::Quantity::phi);
        sum.huygens_residual =
            st.max_abs_phi_below(np::profile_by_name(cfg.profile).onset * cfg.delta);
        const np::EnergyFlux flux = np::conserved_energy_flux(st);
        sum.kinetic_flux = flux.kinetic;
        sum.potential_flux = flux.potential;
        sum.norms = np::assemble_norm_report(st);
        sum.m_final = sum.norms.m_final();
        np::emit_run_report(cfg, sum, sum.norms, cfg.out);
        np::save_checkpoint(st, cfg.out + "/state.ckpt");
        std::printf("run delta=%g completed  sup|phi|=%.6g  M_final=%.6g\n", cfg.delta,
                    sum.sup_phi, sum.m_final);
        return 0;
    } catch (const np::BlowupError& e) {
        sum.completed = false;
        sum.blowup_u = e.u;
        sum.blowup_ub = e.ub;
        np::emit_run_report(cfg, sum, sum.norms, cfg.out);
        std::printf("run delta=%g BLEW UP at (u=%g, ub=%g)\n", cfg.delta, e.u, e.ub);
        return 1;
    } catch (const np::StepFailure& e) {
        sum.completed = false;
        sum.blowup_u = e.u;
        sum.blowup_ub = e.ub;
        np::emit_run_report(cfg, sum, sum.norms, cfg.out);
        std::printf("run delta=%g FAILED at (u=%g, ub=%g): %s\n", cfg.delta, e.u, e.ub,
                    e.what());
        return 1;
    }
}

void print_fit_rows(const np::SweepReport& rep) {
    for (const np::ScalingFit& f : rep.rows)
        std::printf("%-20s p=%+5.2f  slope=%+8.4f  spread=%8.4f  %s\n",
                    f.quantity.c_str(), f.exponent, f.slope, f.spread,
                    np::verdict_name(f.verdict));
}

int do_sweep(const np::RunConfig& cfg) {
    const np::SweepReport rep = np::delta_sweep(cfg);
    print_fit_rows(rep);
    const bool ok = np::emit_sweep_report(rep, cfg.out, "sweep");
    std::printf("sweep: %s -> %s\n", ok ? "ok" : "FAILED", cfg.out.c_str());
    return ok ? 0 : 1;
}

int do_prop61(const np::RunConfig& cfg) {
    const np::SweepReport rep = np::prop61_check(cfg);
    print_fit_rows(rep);
    const bool ok = np::emit_sweep_report(rep, cfg.out, "prop61");
    std::printf("prop61: %s -> %s\n", ok ? "ok" : "FAILED", cfg.out.c_str());
    return ok ? 0 : 1;
}

int do_converge(const np::RunConfig& cfg, const std::vector<std::string>& cases) {
    std::vector<np::ConvergenceReport> reports;
    for (const std::string& c : cases) {
        reports.push_back(np::convergence_study(cfg, c));
        const np::ConvergenceReport& r = reports.back();
        std::printf("%-10s fitted order %.4f%s  (%.2fs)\n", r.casename.c_str(),
                    r.fitted_order, r.exact_zero ? " [exact zero]" : "", r.seconds);
        for (std::size_t k = 0; k < r.pair_orders.size(); ++k)
            std::printf("  levels %zu->%zu: order %.4f\n", k, k + 1, r.pair_orders[k]);
    }
    const bool ok = np::emit_convergence_report(reports, cfg, cfg.out);
    std::printf("converge: %s -> %s\n", ok ? "ok" : "FAILED", cfg.out.c_str());
    return ok ? 0 : 1;
}

int do_contrast(const np::RunConfig& cfg) {
    const np::ContrastReport rep = np::focusing_contrast(cfg);
    std::printf("amplitude_used=%.6g  kinetic_flux=%.6g (target %.6g)\n",
                rep.amplitude_used, rep.kinetic_flux, rep.e0);
    std::printf("pde: %s  sup|phi|=%.6g\n", rep.pde_completed ? "completed" : "BLEW UP",
                rep.pde_sup_phi);
    std::printf("ode: T=%.10g (quadrature %.10g, rel gap %.3g)  horizon=%g  %s\n",
                rep.ode.t_integrator, rep.ode.t_quadrature, rep.ode.rel_gap, rep.horizon,
                rep.ode_before_horizon ? "blows up inside the slab window"
                                       : "no blow-up inside the window");
    const bool ok = np::emit_contrast_report(rep, cfg.out);
    return ok ? 0 : 1;
}

int do_audit(const np::RunConfig& cfg) {
    const np::AuditReport rep = np::run_audit(cfg);
    for (const np::AuditEntry& e : rep.entries) {
        std::printf("delta=%g\n", e.delta);
        for (const np::SobolevReport& s : e.sobolev)
            std::printf("  %-24s worst ratio %.6g at (u=%g, ub=%g)%s\n",
                        np::sobolev_name(s.lemma), s.worst_ratio, s.at_u, s.at_ub,
                        s.degenerate ? " [degenerate slice]" : "");
        for (const np::EnergyLedger& l : e.ledgers)
            std::printf("  ledger X=%-4s at (u=%g, ub=%g): rel residual %.3g\n",
                        l.x == np::Multiplier::L ? "L" : "Lbar", l.u, l.ub,
                        l.rel_residual);
    }
    std::printf("worst energy rel residual: %.3g\n", rep.worst_rel_residual);
    const bool ok = np::emit_audit_report(rep, cfg.out);
    std::printf("audit: %s -> %s\n", ok ? "ok" : "FAILED", cfg.out.c_str());
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"short-pulse characteristic solver and its experiment suite"};
    app.require_subcommand(1);

    np::RunConfig cfg;
    std::vector<std::string> cases = {"linear3d", "mms2d"};

    CLI::App* run = app.add_subcommand("run", "evolve one pulse, write norms and a checkpoint");
    add_config_flags(run, cfg);
    CLI::App* sweep = app.add_subcommand("sweep", "delta sweep of the tracked quantities");
    add_config_flags(sweep, cfg);
    CLI::App* converge = app.add_subcommand("converge", "grid convergence study");
    add_config_flags(converge, cfg);
    converge->add_option("--cases", cases, "linear3d, mms2d, zero")->delimiter(',');
    CLI::App* prop61 = app.add_subcommand("prop61", "final-cone sup bounds across the sweep");
    add_config_flags(prop61, cfg);
    CLI::App* contrast =
        app.add_subcommand("contrast", "focusing PDE run vs the matched blow-up ODE");
    add_config_flags(contrast, cfg);
    CLI::App* audit =
        app.add_subcommand("audit", "Sobolev ratios and energy ledgers across the sweep");
    add_config_flags(audit, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return do_run(cfg);
        if (sweep->parsed()) return do_sweep(cfg);
        if (converge->parsed()) return do_converge(cfg, cases);
        if (prop61->parsed()) return do_prop61(cfg);
        if (contrast->parsed()) return do_contrast(cfg);
        if (audit->parsed()) return do_audit(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
