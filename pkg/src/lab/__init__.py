"""Experiment configs, runs and reports."""

from .experiments import (
    EXPERIMENTS,
    Experiment,
    cut_pieces,
    half_model_log_det_ratio,
    list_experiments,
    run_aps_split,
    run_chiral_split,
    run_dirichlet_split,
    run_error_decay,
    run_eta_experiments,
    run_eta_gluing_mixed,
    run_eta_variation,
    run_neumann_split,
    run_r_independence,
    run_sw_check,
    run_zeta_at_zero,
)
from .report import (
    Check,
    ExperimentReport,
    RatioReport,
    format_report,
    report_summary,
    write_csv,
    write_json_summary,
)
from .settings import ExperimentConfig, build_config, load_config, parse_override, parse_value

__all__ = [
    "EXPERIMENTS",
    "Experiment",
    "cut_pieces",
    "half_model_log_det_ratio",
    "list_experiments",
    "run_aps_split",
    "run_chiral_split",
    "run_dirichlet_split",
    "run_error_decay",
    "run_eta_experiments",
    "run_eta_gluing_mixed",
    "run_eta_variation",
    "run_neumann_split",
    "run_r_independence",
    "run_sw_check",
    "run_zeta_at_zero",
    "Check",
    "ExperimentReport",
    "RatioReport",
    "format_report",
    "report_summary",
    "write_csv",
    "write_json_summary",
    "ExperimentConfig",
    "build_config",
    "load_config",
    "parse_override",
    "parse_value",
]
