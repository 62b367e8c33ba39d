"""LangGraph run graph for a batch of experiments.

Architecture:
- prepare: create the output directory
- PARALLEL: one node per selected experiment (fan-out)
- write_reports: CSVs and the JSON summary once every experiment is done (fan-in)
"""

import logging
from typing import Iterable, Optional

from langgraph.graph import END, START, StateGraph

from src.config import Config
from src.errors import ConfigError
from src.lab import EXPERIMENTS, ExperimentConfig
from .nodes import make_experiment_node, prepare_run_node, write_reports_node
from .state import RunState

logger = logging.getLogger(__name__)


def resolve_selection(only: Optional[Iterable[str]] = None) -> list[str]:
    """Registered experiment names in registry order, restricted to `only`.

    Raises:
        ConfigError: an unknown experiment name.
    """
    if not only:
        return list(EXPERIMENTS)
    wanted = [name.strip() for name in only if name.strip()]
    unknown = [name for name in wanted if name not in EXPERIMENTS]
    if unknown:
        raise ConfigError(f"unknown experiment(s): {', '.join(unknown)}")
    return [name for name in EXPERIMENTS if name in wanted]


def create_run_graph(selection: list[str]):
    """Build the graph: START → prepare → experiments (parallel) → write_reports → END."""
    workflow = StateGraph(RunState)

    workflow.add_node("prepare", prepare_run_node)
    workflow.add_node("write_reports", write_reports_node)
    workflow.add_edge(START, "prepare")

    for name in selection:
        node = f"run_{name}"
        workflow.add_node(node, make_experiment_node(name))
        workflow.add_edge("prepare", node)
        workflow.add_edge(node, "write_reports")

    if not selection:
        workflow.add_edge("prepare", "write_reports")
    workflow.add_edge("write_reports", END)

    return workflow.compile()


def run_experiments(config: ExperimentConfig, selection: list[str], out_dir: str) -> RunState:
    """Run the selected experiments and return the final graph state."""
    graph = create_run_graph(selection)
    initial: RunState = {
        "config": config,
        "selection": selection,
        "out_dir": out_dir,
        "reports": {},
        "failures": {},
        "exit_codes": {},
        "timings": {},
        "written": [],
        "summary_path": None,
    }
    return graph.invoke(initial, config={"max_concurrency": Config.MAX_WORKERS})
