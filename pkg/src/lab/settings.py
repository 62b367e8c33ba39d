"""Experiment config files.

A config file is flat `key = value` text with `#` comments. Values use a small
literal grammar parsed with `ast`: numbers, lists, tuples (`2, 4, 8`), the
names `pi`, `aps_pos`, `aps_neg`, arithmetic on numbers, and the tagged
constructors `arithmetic(a, d, mult)`, `explicit([..], mult=[..], tail=p)`,
`rotated(aps_pos, theta=[..])`, `sigma(dim, [angles])` and
`geometric(first, count)`.
"""

import ast
import logging
import math
import operator
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Optional

from src.boundary import BoundaryProjection, GrassmannPoint, ProjectionKind
from src.config import Config
from src.errors import ConfigError, DetlabError
from src.spectral import TangentialSpectrum

logger = logging.getLogger(__name__)

_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}

_NAMES = {
    "pi": math.pi,
    "aps_pos": BoundaryProjection.aps_pos(),
    "aps_neg": BoundaryProjection.aps_neg(),
}


def _base_kind(value: Any) -> ProjectionKind:
    if isinstance(value, BoundaryProjection) and value.kind in (
        ProjectionKind.APS_POS,
        ProjectionKind.APS_NEG,
    ):
        return value.kind
    raise ConfigError(f"expected aps_pos or aps_neg as base, got {value!r}")


def _call(name: str, args: list, kwargs: dict) -> Any:
    try:
        if name == "arithmetic":
            return TangentialSpectrum.arithmetic(*args, **kwargs)
        if name == "explicit":
            values = args[0]
            mults = kwargs.get("mult", args[1] if len(args) > 1 else None)
            return TangentialSpectrum.explicit(values, mults, kwargs.get("tail"))
        if name == "rotated":
            theta = kwargs.get("theta", args[1] if len(args) > 1 else ())
            return BoundaryProjection.rotated(_base_kind(args[0]), theta)
        if name == "sigma":
            base = _base_kind(kwargs["base"]) if "base" in kwargs else ProjectionKind.APS_POS
            return BoundaryProjection.sigma(int(args[0]), args[1], base)
        if name == "geometric":
            return GrassmannPoint.geometric(float(args[0]), int(args[1]))
    except (TypeError, IndexError, KeyError) as e:
        raise ConfigError(f"bad arguments to {name}(): {e}") from e
    except DetlabError as e:
        raise ConfigError(f"{name}(): {e}") from e
    raise ConfigError(f"unknown constructor {name}()")


def _evaluate(node: ast.AST) -> Any:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, str, bool)):
        return node.value
    if isinstance(node, (ast.List, ast.Tuple)):
        return [_evaluate(item) for item in node.elts]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        value = _evaluate(node.operand)
        return -value if isinstance(node.op, ast.USub) else value
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        return _BINARY[type(node.op)](_evaluate(node.left), _evaluate(node.right))
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        args = [_evaluate(a) for a in node.args]
        kwargs = {kw.arg: _evaluate(kw.value) for kw in node.keywords}
        return _call(node.func.id, args, kwargs)
    raise ConfigError(f"unsupported value syntax: {ast.dump(node)}")


def parse_value(text: str) -> Any:
    """Parse one config value.

    Raises:
        ConfigError: the text is not in the value grammar.
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as e:
        raise ConfigError(f"cannot parse value {text!r}: {e.msg}") from e
    return _evaluate(tree.body)


def parse_config_text(text: str) -> dict[str, Any]:
    """Parse `key = value` lines into a dict of raw values."""
    values: dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {number}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {number}: empty key")
        values[key] = parse_value(value)
    return values


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters shared by every experiment of one run."""

    spectrum: TangentialSpectrum = field(
        default_factory=lambda: TangentialSpectrum.arithmetic(1.0, 1.0)
    )
    kernel_dim: int = 0
    R_grid: tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)
    mode_cutoff: int = Config.DEFAULT_MODE_CUTOFF
    t0: float = Config.DEFAULT_T0
    ratio_tolerance: float = 1e-4
    eta_tolerance: float = 1e-4
    decay_t: float = 0.5
    theta: tuple[float, ...] = (0.5 * math.pi,)
    p1: BoundaryProjection = field(default_factory=BoundaryProjection.aps_pos)
    p2: BoundaryProjection = field(default_factory=BoundaryProjection.aps_pos)
    point: GrassmannPoint = field(default_factory=lambda: GrassmannPoint((math.pi / 3.0,)))
    out_dir: Optional[str] = None

    def __post_init__(self):
        if not self.R_grid:
            raise ConfigError("R_grid must not be empty")
        if any(r <= 0 for r in self.R_grid) or any(
            b <= a for a, b in zip(self.R_grid, self.R_grid[1:])
        ):
            raise ConfigError(f"R_grid must be increasing and positive, got {self.R_grid}")
        if self.mode_cutoff < 4:
            raise ConfigError(f"mode_cutoff must be >= 4, got {self.mode_cutoff}")
        if not self.t0 > 0 or not self.decay_t > 0:
            raise ConfigError("t0 and decay_t must be positive")
        if self.kernel_dim < 0:
            raise ConfigError(f"kernel_dim must be >= 0, got {self.kernel_dim}")

    @property
    def effective_spectrum(self) -> TangentialSpectrum:
        """The configured spectrum with kernel_dim applied."""
        if self.kernel_dim == self.spectrum.kernel_dimension:
            return self.spectrum
        return TangentialSpectrum(self.spectrum.generator, self.kernel_dim)

    @property
    def output_path(self) -> Path:
        return Path(self.out_dir or Config.OUTPUT_DIR)


def _as_tuple(value: Any) -> tuple[float, ...]:
    if isinstance(value, (int, float)):
        return (float(value),)
    return tuple(float(v) for v in value)


def _coerce(key: str, value: Any) -> Any:
    """Map a raw parsed value onto the ExperimentConfig field type."""
    if key == "spectrum":
        if isinstance(value, list):
            return TangentialSpectrum.explicit(value)
        if not isinstance(value, TangentialSpectrum):
            raise ConfigError(f"spectrum must be arithmetic(..) or explicit(..), got {value!r}")
        return value
    if key in ("R_grid", "theta"):
        return _as_tuple(value)
    if key in ("kernel_dim", "mode_cutoff"):
        return int(value)
    if key in ("t0", "ratio_tolerance", "eta_tolerance", "decay_t"):
        return float(value)
    if key in ("p1", "p2"):
        if not isinstance(value, BoundaryProjection):
            raise ConfigError(f"{key} must be a boundary condition, got {value!r}")
        return value
    if key == "point":
        if isinstance(value, GrassmannPoint):
            return value
        return GrassmannPoint(_as_tuple(value))
    if key == "out_dir":
        return str(value)
    raise ConfigError(f"unknown config key {key!r}")


def build_config(
    values: dict[str, Any], base: Optional[ExperimentConfig] = None
) -> ExperimentConfig:
    base = base or ExperimentConfig()
    try:
        updates = {key: _coerce(key, value) for key, value in values.items()}
    except (TypeError, ValueError) as e:
        raise ConfigError(f"bad config value: {e}") from e
    return replace(base, **updates)


def parse_override(text: str) -> tuple[str, Any]:
    """Parse one `--set KEY=VALUE` argument."""
    if "=" not in text:
        raise ConfigError(f"override must look like KEY=VALUE, got {text!r}")
    key, value = text.split("=", 1)
    return key.strip(), parse_value(value)


def load_config(path: Optional[Path], overrides: tuple[str, ...] = ()) -> ExperimentConfig:
    """Read a config file and apply `--set` overrides in order.

    Raises:
        ConfigError: missing file, bad syntax, unknown key or invalid value.
    """
    values: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        values.update(parse_config_text(path.read_text(encoding="utf-8")))
    for text in overrides:
        key, value = parse_override(text)
        values[key] = value
    config = build_config(values)
    logger.info(
        f"Loaded config: spectrum={config.spectrum.describe()}, R_grid={list(config.R_grid)}, "
        f"mode_cutoff={config.mode_cutoff}"
    )
    return config
