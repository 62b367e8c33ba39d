"""Experiment node: runs one registered experiment inside the fan-out."""

import logging
import time
from typing import Callable

from src.errors import DetlabError
from src.lab import EXPERIMENTS
from ..state import RunState

logger = logging.getLogger(__name__)


def make_experiment_node(name: str) -> Callable[[RunState], dict]:
    """Build the node for one experiment.

    Returns only the dict entries this node owns to avoid concurrent write issues.
    A failing experiment records its error and never stops its siblings.
    """
    experiment = EXPERIMENTS[name]

    def run_experiment_node(state: RunState) -> dict:
        start = time.perf_counter()
        try:
            report = experiment.run(state["config"])
        except DetlabError as e:
            logger.error(f"Experiment {name} failed: {type(e).__name__}: {e}")
            return {
                "failures": {name: f"{type(e).__name__}: {e}"},
                "exit_codes": {name: e.exit_code},
            }
        except Exception as e:
            logger.error(f"Experiment {name} crashed: {e}", exc_info=True)
            return {"failures": {name: f"{type(e).__name__}: {e}"}, "exit_codes": {name: 3}}

        elapsed = time.perf_counter() - start
        report.summary.setdefault("elapsed_seconds", round(elapsed, 3))
        logger.info(f"Experiment {name}: {report.convergence_verdict} in {elapsed:.1f}s")
        return {"reports": {name: report}, "timings": {name: elapsed}}

    run_experiment_node.__name__ = f"run_{name}"
    return run_experiment_node
