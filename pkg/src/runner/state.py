"""State schema for the experiment run graph."""

import operator
from typing import Annotated, Any, Optional, TypedDict

from src.lab import ExperimentConfig


class RunState(TypedDict):
    """State shared by the run graph nodes.

    Experiment nodes run in parallel, so each writes only its own entry of the
    merged dicts below.
    """

    config: ExperimentConfig
    selection: list[str]
    out_dir: str

    # Parallel node outputs, merged by key
    reports: Annotated[dict[str, Any], operator.or_]  # name -> ExperimentReport
    failures: Annotated[dict[str, str], operator.or_]  # name -> error message
    exit_codes: Annotated[dict[str, int], operator.or_]  # name -> DetlabError exit code
    timings: Annotated[dict[str, float], operator.or_]  # name -> wall-clock seconds

    # Written by write_reports
    written: list[str]
    summary_path: Optional[str]
