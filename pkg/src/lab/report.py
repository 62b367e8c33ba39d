"""Experiment reports: rows, verdicts, CSV/JSON output and markdown rendering."""

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional

logger = logging.getLogger(__name__)

MODEL_HEADER = (
    "two-cut circle model S¹_{2R} × Y cut into two segments of length R; the cut "
    "boundary is Y₀ ⊔ Y₀, so every boundary constant enters squared"
)

RATIO_COLUMNS = (
    "R",
    "det_closed",
    "det_piece1",
    "det_piece2",
    "ratio",
    "predicted_limit",
    "deviation",
    "error_estimate",
)


@dataclass
class Check:
    """One verdict. Advisory checks are reported but never fail a run."""

    name: str
    passed: bool
    fatal: bool = True
    detail: str = ""


@dataclass
class ExperimentReport:
    name: str
    columns: tuple[str, ...]
    header: str = ""
    rows: list[tuple] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)

    def add_row(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"{self.name}: row has {len(values)} values for {len(self.columns)} columns"
            )
        self.rows.append(tuple(values))

    def check(self, name: str, passed: bool, fatal: bool = True, detail: str = "") -> Check:
        result = Check(name, bool(passed), fatal, detail)
        self.checks.append(result)
        if not result.passed:
            log = logger.error if fatal else logger.warning
            log(f"{self.name}: check '{name}' failed{': ' + detail if detail else ''}")
        return result

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.fatal)

    @property
    def convergence_verdict(self) -> str:
        if not self.passed:
            return "FAIL"
        if any(not c.passed for c in self.checks):
            return "PASS (advisory warnings)"
        return "PASS"


class RatioReport(ExperimentReport):
    """Per-R determinant ratios against a predicted limit."""

    def __init__(self, name: str, predicted_limit: float, header: str = MODEL_HEADER):
        super().__init__(name=name, columns=RATIO_COLUMNS, header=header)
        self.summary["predicted_limit"] = predicted_limit

    @property
    def predicted_limit(self) -> float:
        return self.summary["predicted_limit"]

    def deviations(self) -> list[float]:
        return self.column("deviation")


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return f"{float(value):.16e}"
    if isinstance(value, complex):
        return f"{value.real:.16e}{value.imag:+.16e}j"
    return str(value)


def write_csv(report: ExperimentReport, out_dir: Path) -> Path:
    """Write `<name>.csv`: UTF-8, comma separated, 17 significant digits."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{report.name}.csv"
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(report.columns)
        for row in report.rows:
            writer.writerow([_cell(v) for v in row])
    logger.info(f"Wrote {len(report.rows)} rows to {path}")
    return path


def _jsonable(value: Any) -> Any:
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if hasattr(value, "item"):
        return value.item()
    return value


def report_summary(report: ExperimentReport) -> dict[str, Any]:
    return {
        "name": report.name,
        "header": report.header,
        "verdict": report.convergence_verdict,
        "passed": report.passed,
        "rows": len(report.rows),
        "checks": [
            {"name": c.name, "passed": c.passed, "fatal": c.fatal, "detail": c.detail}
            for c in report.checks
        ],
        "summary": _jsonable(report.summary),
    }


def write_json_summary(
    reports: Iterable[ExperimentReport],
    path: Path,
    failures: Optional[dict[str, str]] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "experiments": [report_summary(r) for r in reports],
        "failures": dict(failures or {}),
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def format_report(report: Optional[ExperimentReport], max_rows: int = 12) -> str:
    """Render a report as markdown for logs and the README."""
    if not report:
        return ""

    lines = [f"## {report.name}"]
    if report.header:
        lines.append(f"_{report.header}_")
    lines.append("")

    for key, value in report.summary.items():
        lines.append(f"**{key}:** {value}")
    if report.summary:
        lines.append("")

    if report.rows:
        lines.append("| " + " | ".join(report.columns) + " |")
        lines.append("|" + "---|" * len(report.columns))
        for row in report.rows[:max_rows]:
            cells = [f"{v:.6g}" if isinstance(v, float) else str(v) for v in row]
            lines.append("| " + " | ".join(cells) + " |")
        if len(report.rows) > max_rows:
            lines.append(f"| ... {len(report.rows) - max_rows} more rows |")
        lines.append("")

    for c in report.checks:
        mark = "PASS" if c.passed else ("FAIL" if c.fatal else "WARN")
        lines.append(f"- [{mark}] {c.name}" + (f" ({c.detail})" if c.detail else ""))

    lines.append("")
    lines.append(f"**Verdict:** {report.convergence_verdict}")
    return "\n".join(lines)
