"""Run graph nodes."""

from .experiment import make_experiment_node
from .reports import SUMMARY_FILE, prepare_run_node, write_reports_node

__all__ = [
    "make_experiment_node",
    "SUMMARY_FILE",
    "prepare_run_node",
    "write_reports_node",
]
