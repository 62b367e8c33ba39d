"""Main entry point for the detlab CLI."""

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from src.config import Config
from src.errors import ConfigError, DetlabError, VerdictFailure

__version__ = "0.1.0"

MANIFEST_FILE = "manifest.json"

logger = logging.getLogger(__name__)


def setup_logging():
    """Configure logging based on config."""
    logging.basicConfig(
        level=getattr(logging, Config.LOG_LEVEL, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    # Quiet noisy libraries
    logging.getLogger("langgraph").setLevel(logging.WARNING)
    logging.getLogger("httpx").setLevel(logging.WARNING)


@dataclass
class RunManifest:
    """Written before a run starts and finalized after it ends."""

    config_path: Optional[str]
    selection: list[str]
    out_dir: str
    version: str = __version__
    status: str = "running"
    started_at: float = field(default_factory=time.time)
    finished_at: Optional[float] = None
    timings: dict[str, float] = field(default_factory=dict)
    exit_code: Optional[int] = None

    @property
    def path(self) -> Path:
        return Path(self.out_dir) / MANIFEST_FILE

    def write(self) -> Path:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps(asdict(self), indent=2, sort_keys=True)
        self.path.write_text(payload + "\n", encoding="utf-8")
        return self.path

    def finalize(self, exit_code: int, timings: dict[str, float]) -> Path:
        self.status = "finished"
        self.finished_at = time.time()
        self.timings = {name: round(seconds, 3) for name, seconds in timings.items()}
        self.exit_code = exit_code
        return self.write()


def exit_code_for(state: dict) -> int:
    """Most severe exit code of a finished run; the highest recorded code wins."""
    codes = list(state.get("exit_codes", {}).values())
    if any(not report.passed for report in state.get("reports", {}).values()):
        codes.append(VerdictFailure.exit_code)
    return max(codes, default=0)


def _split_names(values: Optional[list[str]]) -> list[str]:
    return [name for value in values or [] for name in value.split(",") if name.strip()]


def run(args: argparse.Namespace) -> int:
    """Execute the selected experiments and write CSV, JSON and the manifest."""
    from src.lab import load_config
    from src.runner import resolve_selection, run_experiments

    try:
        Config.validate()
    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        return ConfigError.exit_code

    try:
        config = load_config(args.config, tuple(args.set or ()))
        selection = resolve_selection(_split_names(args.only))
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return e.exit_code

    out_dir = str(args.out or config.output_path)
    manifest = RunManifest(
        config_path=str(args.config) if args.config else None,
        selection=selection,
        out_dir=out_dir,
    )
    manifest.write()
    logger.info(f"Starting detlab run: {', '.join(selection)}")

    try:
        state = run_experiments(config, selection, out_dir)
    except DetlabError as e:
        logger.error(f"Run failed: {e}", exc_info=True)
        manifest.finalize(e.exit_code, {})
        return e.exit_code

    code = exit_code_for(state)
    manifest.finalize(code, state.get("timings", {}))
    for name, report in state.get("reports", {}).items():
        logger.info(f"{name}: {report.convergence_verdict}")
    for name, message in state.get("failures", {}).items():
        logger.error(f"{name}: {message}")
    logger.info(f"Run finished with exit code {code}")
    return code


def list_command(args: argparse.Namespace) -> int:
    from src.lab import list_experiments

    entries = list_experiments()
    if args.json:
        print(json.dumps([{"name": n, "description": d} for n, d in entries], indent=2))
    else:
        width = max(len(n) for n, _ in entries)
        for name, description in entries:
            print(f"{name:<{width}}  {description}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detlab", description="ζ-determinant and η-invariant decomposition experiments"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="Run experiments")
    run_parser.add_argument("--config", type=Path, default=None, help="Experiment config file")
    run_parser.add_argument(
        "--only", action="append", help="Comma-separated experiment names (repeatable)"
    )
    run_parser.add_argument(
        "--set", action="append", metavar="KEY=VALUE", help="Override one config key (repeatable)"
    )
    run_parser.add_argument("--out", type=Path, default=None, help="Output directory")
    run_parser.set_defaults(handler=run)

    list_parser = sub.add_parser("list", help="List available experiments")
    list_parser.add_argument("--json", action="store_true", help="Print the list as JSON")
    list_parser.set_defaults(handler=list_command)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    setup_logging()
    args = build_parser().parse_args(argv)
    return args.handler(args)


def cli():
    sys.exit(main())


if __name__ == "__main__":
    cli()
