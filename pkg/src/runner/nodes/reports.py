"""Setup and output nodes of the run graph."""

import logging
from pathlib import Path

from src.lab import format_report, write_csv, write_json_summary
from ..state import RunState

logger = logging.getLogger(__name__)

SUMMARY_FILE = "summary.json"


def prepare_run_node(state: RunState) -> dict:
    """Create the output directory before any experiment starts."""
    out_dir = Path(state["out_dir"])
    out_dir.mkdir(parents=True, exist_ok=True)
    logger.info(f"Running {len(state['selection'])} experiments into {out_dir}")
    return {"out_dir": str(out_dir)}


def write_reports_node(state: RunState) -> dict:
    """Write one CSV per finished experiment plus the JSON summary."""
    out_dir = Path(state["out_dir"])
    reports = state.get("reports", {})
    ordered = [reports[name] for name in state["selection"] if name in reports]

    written = []
    for report in ordered:
        written.append(str(write_csv(report, out_dir)))
        logger.debug(f"\n{format_report(report)}")

    summary = write_json_summary(ordered, out_dir / SUMMARY_FILE, state.get("failures", {}))
    logger.info(f"Wrote {len(written)} CSV files and {summary}")
    return {"written": written, "summary_path": str(summary)}
