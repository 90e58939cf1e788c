#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nullpulse/experiments.hpp"

namespace py = pybind11;
using namespace nullpulse;

namespace {

// One evolve with the summary quantities the experiments track.
RunSummary evolve_run(const RunConfig& config) {
    config.validate();
    RunSummary sum;
    sum.delta = config.delta;
    try {
        FieldState st = evolve(config.make_grid(config.delta),
                               config.make_pulse(config.delta), config.make_nonlinearity());
        sum.completed = true;
        sum.sup_phi = st.max_abs(Quantity::phi);
        sum.huygens_residual =
            st.max_abs_phi_below(profile_by_name(config.profile).onset * config.delta);
        const EnergyFlux flux = conserved_energy_flux(st);
        sum.kinetic_flux = flux.kinetic;
        sum.potential_flux = flux.potential;
        sum.norms = assemble_norm_report(st);
        sum.m_final = sum.norms.m_final();
    } catch (const BlowupError& e) {
        sum.completed = false;
        sum.blowup_u = e.u;
        sum.blowup_ub = e.ub;
    } catch (const StepFailure& e) {
        sum.completed = false;
        sum.blowup_u = e.u;
        sum.blowup_ub = e.ub;
    }
    return sum;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "characteristic short-pulse solver: experiment operations";

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("dim", &RunConfig::dim)
        .def_readwrite("u0", &RunConfig::u0)
        .def_readwrite("u_end", &RunConfig::u_end)
        .def_readwrite("delta", &RunConfig::delta)
        .def_readwrite("n_u", &RunConfig::n_u)
        .def_readwrite("n_ub", &RunConfig::n_ub)
        .def_readwrite("n_theta", &RunConfig::n_theta)
        .def_readwrite("profile", &RunConfig::profile)
        .def_readwrite("amplitude", &RunConfig::amplitude)
        .def_readwrite("angular_mode", &RunConfig::angular_mode)
        .def_readwrite("nonlinearity", &RunConfig::nonlinearity)
        .def_readwrite("power_k", &RunConfig::power_k)
        .def_readwrite("sign", &RunConfig::sign)
        .def_readwrite("delta_list", &RunConfig::delta_list)
        .def_readwrite("headroom", &RunConfig::headroom)
        .def_readwrite("e0", &RunConfig::e0)
        .def_readwrite("out", &RunConfig::out)
        .def("validate", &RunConfig::validate);

    py::enum_<Verdict>(m, "Verdict")
        .value("bound_respected", Verdict::bound_respected)
        .value("violated", Verdict::violated)
        .value("inconclusive", Verdict::inconclusive)
        .value("structurally_zero", Verdict::structurally_zero);

    py::class_<NormReport>(m, "NormReport")
        .def_readonly("n_u", &NormReport::n_u)
        .def_readonly("n_ub", &NormReport::n_ub)
        .def_readonly("u", &NormReport::u)
        .def_readonly("ub", &NormReport::ub)
        .def_readonly("e1", &NormReport::e1)
        .def_readonly("e2", &NormReport::e2)
        .def_readonly("e3", &NormReport::e3)
        .def_readonly("eb1", &NormReport::eb1)
        .def_readonly("eb2", &NormReport::eb2)
        .def_readonly("eb3", &NormReport::eb3)
        .def_readonly("f2", &NormReport::f2)
        .def_readonly("f3", &NormReport::f3)
        .def_readonly("fb2", &NormReport::fb2)
        .def_readonly("fb3", &NormReport::fb3)
        .def_readonly("m", &NormReport::m)
        .def("m_final", &NormReport::m_final);

    py::class_<RunSummary>(m, "RunSummary")
        .def_readonly("delta", &RunSummary::delta)
        .def_readonly("completed", &RunSummary::completed)
        .def_readonly("blowup_u", &RunSummary::blowup_u)
        .def_readonly("blowup_ub", &RunSummary::blowup_ub)
        .def_readonly("sup_phi", &RunSummary::sup_phi)
        .def_readonly("m_final", &RunSummary::m_final)
        .def_readonly("huygens_residual", &RunSummary::huygens_residual)
        .def_readonly("kinetic_flux", &RunSummary::kinetic_flux)
        .def_readonly("potential_flux", &RunSummary::potential_flux)
        .def_readonly("norms", &RunSummary::norms);

    py::class_<ScalingFit>(m, "ScalingFit")
        .def_readonly("quantity", &ScalingFit::quantity)
        .def_readonly("exponent", &ScalingFit::exponent)
        .def_readonly("equality", &ScalingFit::equality)
        .def_readonly("deltas", &ScalingFit::deltas)
        .def_readonly("values", &ScalingFit::values)
        .def_readonly("ratios", &ScalingFit::ratios)
        .def_readonly("slope", &ScalingFit::slope)
        .def_readonly("spread", &ScalingFit::spread)
        .def_readonly("verdict", &ScalingFit::verdict);

    py::class_<SweepReport>(m, "SweepReport")
        .def_readonly("runs", &SweepReport::runs)
        .def_readonly("rows", &SweepReport::rows)
        .def_readonly("any_violated", &SweepReport::any_violated)
        .def_readonly("all_completed", &SweepReport::all_completed);

    py::class_<ConvergenceLevel>(m, "ConvergenceLevel")
        .def_readonly("n_u", &ConvergenceLevel::n_u)
        .def_readonly("n_ub", &ConvergenceLevel::n_ub)
        .def_readonly("h_u", &ConvergenceLevel::h_u)
        .def_readonly("h_ub", &ConvergenceLevel::h_ub)
        .def_readonly("max_error", &ConvergenceLevel::max_error);

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("casename", &ConvergenceReport::casename)
        .def_readonly("levels", &ConvergenceReport::levels)
        .def_readonly("pair_orders", &ConvergenceReport::pair_orders)
        .def_readonly("fitted_order", &ConvergenceReport::fitted_order)
        .def_readonly("exact_zero", &ConvergenceReport::exact_zero)
        .def_readonly("failed", &ConvergenceReport::failed);

    py::class_<OdeBlowup>(m, "OdeBlowup")
        .def_readonly("k", &OdeBlowup::k)
        .def_readonly("phi0", &OdeBlowup::phi0)
        .def_readonly("t_integrator", &OdeBlowup::t_integrator)
        .def_readonly("t_quadrature", &OdeBlowup::t_quadrature)
        .def_readonly("rel_gap", &OdeBlowup::rel_gap);

    py::class_<ContrastReport>(m, "ContrastReport")
        .def_readonly("amplitude_used", &ContrastReport::amplitude_used)
        .def_readonly("kinetic_flux", &ContrastReport::kinetic_flux)
        .def_readonly("e0", &ContrastReport::e0)
        .def_readonly("pde_completed", &ContrastReport::pde_completed)
        .def_readonly("pde_sup_phi", &ContrastReport::pde_sup_phi)
        .def_readonly("horizon", &ContrastReport::horizon)
        .def_readonly("ode_before_horizon", &ContrastReport::ode_before_horizon)
        .def_readonly("ode", &ContrastReport::ode);

    py::class_<SobolevReport>(m, "SobolevReport")
        .def_property_readonly("lemma",
                               [](const SobolevReport& s) { return sobolev_name(s.lemma); })
        .def_readonly("worst_ratio", &SobolevReport::worst_ratio)
        .def_readonly("at_u", &SobolevReport::at_u)
        .def_readonly("at_ub", &SobolevReport::at_ub)
        .def_readonly("part_ratios", &SobolevReport::part_ratios)
        .def_readonly("degenerate", &SobolevReport::degenerate);

    py::class_<EnergyLedger>(m, "EnergyLedger")
        .def_property_readonly(
            "multiplier",
            [](const EnergyLedger& l) { return l.x == Multiplier::L ? "L" : "Lbar"; })
        .def_readonly("u", &EnergyLedger::u)
        .def_readonly("ub", &EnergyLedger::ub)
        .def_readonly("flux_out", &EnergyLedger::flux_out)
        .def_readonly("flux_in", &EnergyLedger::flux_in)
        .def_readonly("initial_flux", &EnergyLedger::initial_flux)
        .def_readonly("bulk_k", &EnergyLedger::bulk_k)
        .def_readonly("bulk_source", &EnergyLedger::bulk_source)
        .def_readonly("residual", &EnergyLedger::residual)
        .def_readonly("scale", &EnergyLedger::scale)
        .def_readonly("rel_residual", &EnergyLedger::rel_residual);

    py::class_<AuditEntry>(m, "AuditEntry")
        .def_readonly("delta", &AuditEntry::delta)
        .def_readonly("sobolev", &AuditEntry::sobolev)
        .def_readonly("ledgers", &AuditEntry::ledgers);

    py::class_<AuditReport>(m, "AuditReport")
        .def_readonly("entries", &AuditReport::entries)
        .def_readonly("all_finite", &AuditReport::all_finite)
        .def_readonly("worst_rel_residual", &AuditReport::worst_rel_residual);

    m.def("evolve_run", &evolve_run, py::arg("config"),
          "evolve one pulse and summarize it");
    m.def("delta_sweep", &delta_sweep, py::arg("config"));
    m.def("prop61_check", &prop61_check, py::arg("config"));
    m.def("convergence_study", &convergence_study, py::arg("config"), py::arg("case"));
    m.def("focusing_contrast", &focusing_contrast, py::arg("config"));
    m.def("run_audit", &run_audit, py::arg("config"));
    m.def("ode_blowup_time_integrate", &ode_blowup_time_integrate, py::arg("k"),
          py::arg("phi0"));
    m.def("ode_blowup_time_quadrature", &ode_blowup_time_quadrature, py::arg("k"),
          py::arg("phi0"));
    m.def("run_summary_json", &run_summary_json, py::arg("config"), py::arg("run"));
    m.def("emit_sweep_report", &emit_sweep_report, py::arg("report"), py::arg("out_dir"),
          py::arg("stem") = "sweep");
    m.def("emit_contrast_report", &emit_contrast_report, py::arg("report"),
          py::arg("out_dir"));
    m.def("emit_audit_report", &emit_audit_report, py::arg("report"), py::arg("out_dir"));
}
