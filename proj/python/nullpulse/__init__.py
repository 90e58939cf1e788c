"""Characteristic short-pulse solver: experiment operations."""

from ._core import (
    AuditEntry,
    AuditReport,
    ContrastReport,
    ConvergenceLevel,
    ConvergenceReport,
    EnergyLedger,
    NormReport,
    OdeBlowup,
    RunConfig,
    RunSummary,
    ScalingFit,
    SobolevReport,
    SweepReport,
    Verdict,
    convergence_study,
    delta_sweep,
    emit_audit_report,
    emit_contrast_report,
    emit_sweep_report,
    evolve_run,
    focusing_contrast,
    ode_blowup_time_integrate,
    ode_blowup_time_quadrature,
    prop61_check,
    run_audit,
    run_summary_json,
)

__all__ = [
    "AuditEntry",
    "AuditReport",
    "ContrastReport",
    "ConvergenceLevel",
    "ConvergenceReport",
    "EnergyLedger",
    "NormReport",
    "OdeBlowup",
    "RunConfig",
    "RunSummary",
    "ScalingFit",
    "SobolevReport",
    "SweepReport",
    "Verdict",
    "convergence_study",
    "delta_sweep",
    "emit_audit_report",
    "emit_contrast_report",
    "emit_sweep_report",
    "evolve_run",
    "focusing_contrast",
    "ode_blowup_time_integrate",
    "ode_blowup_time_quadrature",
    "prop61_check",
    "run_audit",
    "run_summary_json",
]

__version__ = "0.1.0"
