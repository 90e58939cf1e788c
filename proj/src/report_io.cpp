#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nullpulse/experiments.hpp"
#include "nullpulse/util.hpp"

namespace nullpulse {

namespace {

namespace fs = std::filesystem;
using njson = nlohmann::ordered_json;

// JSON has no Inf/NaN; encode them as strings so nothing turns into null.
njson jnum(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

njson jnum_list(const std::vector<double>& v) {
    njson a = njson::array();
    for (double x : v) a.push_back(jnum(x));
    return a;
}

njson config_json(const RunConfig& c) {
    njson j;
    j["dim"] = c.dim;
    j["u0"] = jnum(c.u0);
    j["u_end"] = jnum(c.u_end);
    j["delta"] = jnum(c.delta);
    j["n_u"] = c.n_u;
    j["n_ub"] = c.n_ub;
    j["n_theta"] = c.n_theta;
    j["profile"] = c.profile;
    j["amplitude"] = jnum(c.amplitude);
    j["angular_mode"] = c.angular_mode;
    j["nonlinearity"] = c.nonlinearity;
    j["power_k"] = c.power_k;
    j["sign"] = c.sign;
    j["delta_list"] = jnum_list(c.delta_list);
    j["headroom"] = jnum(c.headroom);
    j["e0"] = jnum(c.e0);
    return j;
}

njson summary_json(const RunSummary& r) {
    njson j;
    j["delta"] = jnum(r.delta);
    j["completed"] = r.completed;
    j["blowup_u"] = jnum(r.blowup_u);
    j["blowup_ub"] = jnum(r.blowup_ub);
    j["sup_phi"] = jnum(r.sup_phi);
    j["m_final"] = jnum(r.m_final);
    j["huygens_residual"] = jnum(r.huygens_residual);
    j["kinetic_flux"] = jnum(r.kinetic_flux);
    j["potential_flux"] = jnum(r.potential_flux);
    return j;
}

njson fit_json(const ScalingFit& f) {
    njson j;
    j["quantity"] = f.quantity;
    j["exponent"] = jnum(f.exponent);
    j["equality"] = f.equality;
    j["deltas"] = jnum_list(f.deltas);
    j["values"] = jnum_list(f.values);
    j["ratios"] = jnum_list(f.ratios);
    j["slope"] = jnum(f.slope);
    j["spread"] = jnum(f.spread);
    j["verdict"] = verdict_name(f.verdict);
    return j;
}

njson ledger_json(const EnergyLedger& l) {
    njson j;
    j["multiplier"] = l.x == Multiplier::L ? "L" : "Lbar";
    j["u"] = jnum(l.u);
    j["ub"] = jnum(l.ub);
    j["flux_out"] = jnum(l.flux_out);
    j["flux_in"] = jnum(l.flux_in);
    j["initial_flux"] = jnum(l.initial_flux);
    j["bulk_k"] = jnum(l.bulk_k);
    j["bulk_source"] = jnum(l.bulk_source);
    j["residual"] = jnum(l.residual);
    j["scale"] = jnum(l.scale);
    j["rel_residual"] = jnum(l.rel_residual);
    return j;
}

njson sobolev_json(const SobolevReport& s) {
    njson j;
    j["lemma"] = sobolev_name(s.lemma);
    j["worst_ratio"] = jnum(s.worst_ratio);
    j["at_u"] = jnum(s.at_u);
    j["at_ub"] = jnum(s.at_ub);
    j["part_ratios"] = jnum_list(s.part_ratios);
    j["degenerate"] = s.degenerate;
    return j;
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

void append_norm_rows(std::string& csv, const NormReport& n, const std::string& prefix) {
    for (std::size_t r = 0; r < n.rows(); ++r) {
        csv += prefix;
        csv += fmt_g17(n.u[r]);
        csv += ',';
        csv += fmt_g17(n.ub[r]);
        const double* cols[] = {&n.e1[r],  &n.e2[r],  &n.e3[r],  &n.eb1[r],
                                &n.eb2[r], &n.eb3[r], &n.f2[r],  &n.f3[r],
                                &n.fb2[r], &n.fb3[r], &n.m[r],   &n.s_linf_phi[r],
                                &n.s_l4_lphi[r], &n.s_l4_omphi[r], &n.s_l4_lbphi[r]};
        for (const double* c : cols) {
            csv += ',';
            csv += fmt_g17(*c);
        }
        csv += '\n';
    }
}

bool plottable(const ScalingFit& f) {
    if (f.deltas.size() < 2) return false;
    for (double v : f.values)
        if (!(v > 0.0) || !std::isfinite(v)) return false;
    return true;
}

}  // namespace

std::string run_summary_json(const RunConfig& config, const RunSummary& run) {
    njson j;
    j["config"] = config_json(config);
    j["run"] = summary_json(run);
    return j.dump(2) + "\n";
}

bool emit_sweep_report(const SweepReport& report, const std::string& out_dir,
                       const std::string& stem) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    std::string csv = std::string("delta,") + kNormCsvHeader + "\n";
    for (const RunSummary& run : report.runs) {
        if (!run.completed) continue;
        append_norm_rows(csv, run.norms, fmt_g17(run.delta) + ",");
    }
    write_text(dir / (stem + ".csv"), csv);

    njson j;
    j["config"] = config_json(report.config);
    njson runs = njson::array();
    for (const RunSummary& r : report.runs) runs.push_back(summary_json(r));
    j["runs"] = runs;
    njson fits = njson::array();
    for (const ScalingFit& f : report.rows) fits.push_back(fit_json(f));
    j["fits"] = fits;
    j["all_completed"] = report.all_completed;
    j["any_violated"] = report.any_violated;
    write_text(dir / (stem + ".json"), j.dump(2) + "\n");

    std::string gp;
    gp += "# tracked quantities vs delta, log-log, dashed reference slopes\n";
    gp += "set term pngcairo noenhanced size 1000,720\n";
    gp += "set output '" + stem + ".png'\n";
    gp += "set logscale xy\nset xlabel 'delta'\nset ylabel 'value'\n";
    gp += "set key outside right\n";
    std::vector<std::string> items;
    for (const ScalingFit& f : report.rows) {
        if (!plottable(f)) continue;
        gp += "$" + f.quantity + " << EOD\n";
        for (std::size_t i = 0; i < f.deltas.size(); ++i)
            gp += fmt_g17(f.deltas[i]) + " " + fmt_g17(f.values[i]) + "\n";
        gp += "EOD\n";
        items.push_back("$" + f.quantity + " using 1:2 with linespoints title '" +
                        f.quantity + "'");
        const double c = f.values[0] / std::pow(f.deltas[0], f.exponent);
        items.push_back(fmt_g17(c) + "*x**(" + fmt_g17(f.exponent) +
                        ") with lines dashtype 2 title 'slope " + fmt_g17(f.exponent) +
                        "'");
    }
    if (items.empty()) {
        gp += "# nothing to plot: no completed runs\n";
    } else {
        gp += "plot \\\n";
        for (std::size_t i = 0; i < items.size(); ++i)
            gp += "  " + items[i] + (i + 1 < items.size() ? ", \\\n" : "\n");
    }
    write_text(dir / (stem + ".gp"), gp);

    return !report.any_violated && report.all_completed;
}

bool emit_convergence_report(const std::vector<ConvergenceReport>& reports,
                             const RunConfig& config, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    std::string csv = "case,level,n_u,n_ub,h_u,h_ub,max_error\n";
    for (const ConvergenceReport& rep : reports)
        for (std::size_t k = 0; k < rep.levels.size(); ++k) {
            const ConvergenceLevel& l = rep.levels[k];
            csv += rep.casename + "," + std::to_string(k) + "," + std::to_string(l.n_u) +
                   "," + std::to_string(l.n_ub) + "," + fmt_g17(l.h_u) + "," +
                   fmt_g17(l.h_ub) + "," + fmt_g17(l.max_error) + "\n";
        }
    write_text(dir / "converge.csv", csv);

    bool all_ok = true;
    njson j;
    j["config"] = config_json(config);
    njson cases = njson::array();
    for (const ConvergenceReport& rep : reports) {
        njson c;
        c["case"] = rep.casename;
        njson levels = njson::array();
        for (const ConvergenceLevel& l : rep.levels) {
            njson lv;
            lv["n_u"] = l.n_u;
            lv["n_ub"] = l.n_ub;
            lv["h_u"] = jnum(l.h_u);
            lv["h_ub"] = jnum(l.h_ub);
            lv["max_error"] = jnum(l.max_error);
            levels.push_back(lv);
        }
        c["levels"] = levels;
        c["pair_orders"] = jnum_list(rep.pair_orders);
        c["fitted_order"] = jnum(rep.fitted_order);
        c["exact_zero"] = rep.exact_zero;
        c["failed"] = rep.failed;
        cases.push_back(c);
        if (rep.failed) all_ok = false;
    }
    j["cases"] = cases;
    j["all_ok"] = all_ok;
    write_text(dir / "converge.json", j.dump(2) + "\n");

    std::string gp;
    gp += "# max error vs h_u, log-log, slope-2 reference\n";
    gp += "set term pngcairo noenhanced size 900,660\n";
    gp += "set output 'converge.png'\n";
    gp += "set logscale xy\nset xlabel 'h_u'\nset ylabel 'max error'\n";
    gp += "set key outside right\n";
    std::vector<std::string> items;
    for (const ConvergenceReport& rep : reports) {
        if (rep.exact_zero || rep.levels.empty()) continue;
        gp += "$" + rep.casename + " << EOD\n";
        for (const ConvergenceLevel& l : rep.levels)
            gp += fmt_g17(l.h_u) + " " + fmt_g17(l.max_error) + "\n";
        gp += "EOD\n";
        items.push_back("$" + rep.casename + " using 1:2 with linespoints title '" +
                        rep.casename + "'");
        const double c =
            rep.levels[0].max_error / (rep.levels[0].h_u * rep.levels[0].h_u);
        items.push_back(fmt_g17(c) +
                        "*x**2 with lines dashtype 2 title 'slope 2 (" + rep.casename +
                        ")'");
    }
    if (items.empty()) {
        gp += "# nothing to plot: every case had exactly zero error\n";
    } else {
        gp += "plot \\\n";
        for (std::size_t i = 0; i < items.size(); ++i)
            gp += "  " + items[i] + (i + 1 < items.size() ? ", \\\n" : "\n");
    }
    write_text(dir / "converge.gp", gp);

    return all_ok;
}

bool emit_contrast_report(const ContrastReport& report, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    std::string csv = "key,value\n";
    csv += "amplitude_used," + fmt_g17(report.amplitude_used) + "\n";
    csv += "kinetic_flux," + fmt_g17(report.kinetic_flux) + "\n";
    csv += "e0," + fmt_g17(report.e0) + "\n";
    csv += std::string("pde_completed,") + (report.pde_completed ? "1" : "0") + "\n";
    csv += "pde_sup_phi," + fmt_g17(report.pde_sup_phi) + "\n";
    csv += "horizon," + fmt_g17(report.horizon) + "\n";
    csv += std::string("ode_before_horizon,") + (report.ode_before_horizon ? "1" : "0") +
           "\n";
    csv += "ode_k," + std::to_string(report.ode.k) + "\n";
    csv += "ode_phi0," + fmt_g17(report.ode.phi0) + "\n";
    csv += "ode_t_integrator," + fmt_g17(report.ode.t_integrator) + "\n";
    csv += "ode_t_quadrature," + fmt_g17(report.ode.t_quadrature) + "\n";
    csv += "ode_rel_gap," + fmt_g17(report.ode.rel_gap) + "\n";
    write_text(dir / "contrast.csv", csv);

    njson j;
    j["config"] = config_json(report.config);
    j["amplitude_used"] = jnum(report.amplitude_used);
    j["kinetic_flux"] = jnum(report.kinetic_flux);
    j["e0"] = jnum(report.e0);
    j["pde_completed"] = report.pde_completed;
    j["pde_sup_phi"] = jnum(report.pde_sup_phi);
    j["horizon"] = jnum(report.horizon);
    j["ode_before_horizon"] = report.ode_before_horizon;
    njson ode;
    ode["k"] = report.ode.k;
    ode["phi0"] = jnum(report.ode.phi0);
    ode["t_integrator"] = jnum(report.ode.t_integrator);
    ode["t_quadrature"] = jnum(report.ode.t_quadrature);
    ode["rel_gap"] = jnum(report.ode.rel_gap);
    j["ode"] = ode;
    write_text(dir / "contrast.json", j.dump(2) + "\n");

    return report.pde_completed && report.ode_before_horizon;
}

bool emit_audit_report(const AuditReport& report, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    std::string scsv = "delta,lemma,worst_ratio,at_u,at_ub,ratio_a,ratio_b,degenerate\n";
    std::string ecsv =
        "delta,multiplier,u,ub,flux_out,flux_in,initial_flux,bulk_k,bulk_source,"
        "residual,scale,rel_residual\n";
    for (const AuditEntry& e : report.entries) {
        for (const SobolevReport& s : e.sobolev) {
            const double ra = s.part_ratios.size() > 0 ? s.part_ratios[0] : 0.0;
            const double rb = s.part_ratios.size() > 1 ? s.part_ratios[1] : 0.0;
            scsv += fmt_g17(e.delta);
            scsv += std::string(",") + sobolev_name(s.lemma) + "," +
                    fmt_g17(s.worst_ratio) + "," + fmt_g17(s.at_u) + "," +
                    fmt_g17(s.at_ub) + "," + fmt_g17(ra) + "," + fmt_g17(rb) + "," +
                    (s.degenerate ? "1" : "0") + "\n";
        }
        for (const EnergyLedger& l : e.ledgers) {
            ecsv += fmt_g17(e.delta);
            ecsv += std::string(",") + (l.x == Multiplier::L ? "L" : "Lbar") + "," +
                    fmt_g17(l.u) + "," + fmt_g17(l.ub) + "," + fmt_g17(l.flux_out) + "," +
                    fmt_g17(l.flux_in) + "," + fmt_g17(l.initial_flux) + "," +
                    fmt_g17(l.bulk_k) + "," + fmt_g17(l.bulk_source) + "," +
                    fmt_g17(l.residual) + "," + fmt_g17(l.scale) + "," +
                    fmt_g17(l.rel_residual) + "\n";
        }
    }
    write_text(dir / "audit_sobolev.csv", scsv);
    write_text(dir / "audit_energy.csv", ecsv);

    njson j;
    j["config"] = config_json(report.config);
    njson entries = njson::array();
    for (const AuditEntry& e : report.entries) {
        njson je;
        je["delta"] = jnum(e.delta);
        njson sv = njson::array();
        for (const SobolevReport& s : e.sobolev) sv.push_back(sobolev_json(s));
        je["sobolev"] = sv;
        njson lg = njson::array();
        for (const EnergyLedger& l : e.ledgers) lg.push_back(ledger_json(l));
        je["energy"] = lg;
        entries.push_back(je);
    }
    j["entries"] = entries;
    j["all_finite"] = report.all_finite;
    j["worst_rel_residual"] = jnum(report.worst_rel_residual);
    write_text(dir / "audit.json", j.dump(2) + "\n");

    return report.all_finite;
}

bool emit_run_report(const RunConfig& config, const RunSummary& run,
                     const NormReport& norms, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text(dir / "norms.csv", norm_report_csv(norms));
    write_text(dir / "run.json", run_summary_json(config, run));
    return run.completed;
}

}  // namespace nullpulse
