"""Experiment run graph."""

from .graph import create_run_graph, resolve_selection, run_experiments
from .state import RunState

__all__ = ["create_run_graph", "resolve_selection", "run_experiments", "RunState"]
