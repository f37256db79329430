"""Run configuration: a flat ``key = value`` format grouped in ``[sections]``.

Grammar (one item per line)::

    # comment                 full-line or trailing, starts with '#'
    [section]                 one of the sections listed in SECTIONS
    key = value               value is a number expression, word or boolean

Number values accept arithmetic on literals and ``pi`` (``2*pi``,
``3000 * pi``, ``13/7``, ``-4*pi``).  Nothing else is evaluated.

Sections and keys::

    [coupling]        gamma_l1, gamma_r1, gamma_l2, gamma_r2    (required, >= 0)
    [atom]            omega_e (required), omega_s (= omega_e), omega_drive (= 0)
    [geometry]        tau (= 0), theta (= 0, or the word 'derived'),
                      markovian (true/false, = false; forces tau = 0)
    [grid]            delta_min, delta_max, steps, omega_min, omega_max, omega_steps
    [special_points]  kind (reflection|transmission|decoupling), tol (= 1e-9)
    [special_tau]     sign (plus|minus|both), tau_min, tau_max
    [verify]          draws (= 10000)
    [output]          path, format (csv|json, = csv)
"""

from __future__ import annotations

import ast
import enum
import math
import operator
from dataclasses import dataclass

from .errors import GiantAtomError, InvalidInputError
from .params import AtomParams, ChiralCoupling, GeometryPhase
from .spectral import PERFECT_TOL, SpecialKind, SweepGrid

SECTIONS = {
    "coupling": {"gamma_l1", "gamma_r1", "gamma_l2", "gamma_r2"},
    "atom": {"omega_e", "omega_s", "omega_drive"},
    "geometry": {"tau", "theta", "markovian"},
    "grid": {"delta_min", "delta_max", "steps", "omega_min", "omega_max", "omega_steps"},
    "special_points": {"kind", "tol"},
    "special_tau": {"sign", "tau_min", "tau_max"},
    "verify": {"draws"},
    "output": {"path", "format"},
}


class ConfigError(InvalidInputError):
    """Configuration text could not be turned into a valid run.

    Attributes:
        key: ``section.key`` the problem concerns, if any.
        line: 1-based line number, if known.
    """

    def __init__(self, message, key=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(key)
        super().__init__(f"{': '.join(where)}: {message}" if where else message)
        self.key = key
        self.line = line


class OutputFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


@dataclass(frozen=True)
class SpecialPointsOptions:
    kind: SpecialKind = SpecialKind.PERFECT_REFLECTION
    tol: float = PERFECT_TOL


@dataclass(frozen=True)
class SpecialTauOptions:
    signs: tuple = ("plus", "minus")
    tau_min: float | None = None
    tau_max: float | None = None


@dataclass(frozen=True)
class RunConfig:
    coupling: ChiralCoupling
    atom: AtomParams
    geometry: GeometryPhase
    markovian: bool = False
    grid: SweepGrid | None = None
    special_points: SpecialPointsOptions = SpecialPointsOptions()
    special_tau: SpecialTauOptions = SpecialTauOptions()
    draws: int = 10_000
    output_path: str | None = None
    output_format: OutputFormat = OutputFormat.CSV


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and type(node.value) in (int, float):
        return node.value
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_eval_node(node.operand))
    raise ValueError("unsupported expression")


def parse_number(text: str) -> float:
    """Evaluate a number expression such as ``-4*pi`` or ``13/7``."""
    try:
        value = float(_eval_node(ast.parse(text.strip(), mode="eval")))
    except (SyntaxError, ValueError, TypeError, ZeroDivisionError, OverflowError) as exc:
        raise ValueError(f"malformed number {text!r}") from exc
    if not math.isfinite(value):
        raise ValueError(f"number {text!r} is not finite")
    return value


def _read_items(text):
    """Split text into {(section, key): (raw_value, line)}."""
    items = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {raw.strip()!r}", line=lineno)
            section = line[1:-1].strip()
            if section not in SECTIONS:
                raise ConfigError(f"unknown section [{section}]", line=lineno)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if section is None:
            raise ConfigError("key outside of any section", key=key, line=lineno)
        full = f"{section}.{key}"
        if key not in SECTIONS[section]:
            raise ConfigError("unknown key", key=full, line=lineno)
        if (section, key) in items:
            raise ConfigError("duplicate key", key=full, line=lineno)
        if not value:
            raise ConfigError("empty value", key=full, line=lineno)
        items[(section, key)] = (value, lineno)
    return items


class _Items:
    def __init__(self, items):
        self._items = items

    def has(self, section, key):
        return (section, key) in self._items

    def line(self, section, key):
        return self._items.get((section, key), (None, None))[1]

    def raw(self, section, key, default=None, required=False):
        if (section, key) not in self._items:
            if required:
                raise ConfigError("missing required key", key=f"{section}.{key}")
            return default
        return self._items[(section, key)][0]

    def number(self, section, key, default=None, required=False):
        raw = self.raw(section, key, required=required)
        if raw is None:
            return default
        try:
            return parse_number(raw)
        except ValueError as exc:
            raise ConfigError(str(exc), key=f"{section}.{key}",
                              line=self.line(section, key)) from None

    def integer(self, section, key, default=None, required=False):
        value = self.number(section, key, required=required)
        if value is None:
            return default
        if value != int(value):
            raise ConfigError("must be an integer", key=f"{section}.{key}",
                              line=self.line(section, key))
        return int(value)

    def word(self, section, key, choices, default=None):
        raw = self.raw(section, key)
        if raw is None:
            return default
        word = raw.lower()
        if word not in choices:
            raise ConfigError(f"must be one of {sorted(choices)}, got {raw!r}",
                              key=f"{section}.{key}", line=self.line(section, key))
        return word


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text.

    Raises:
        ConfigError: Unknown or duplicate keys, missing required keys,
            malformed numbers or values violating a parameter invariant.
            The message names the key and line.
    """
    it = _Items(_read_items(text))

    rates = {}
    for key in ("gamma_l1", "gamma_r1", "gamma_l2", "gamma_r2"):
        rates[key] = it.number("coupling", key, required=True)
        if rates[key] < 0.0:
            raise ConfigError("rate must be >= 0", key=f"coupling.{key}",
                              line=it.line("coupling", key))
    coupling = ChiralCoupling(**rates)

    omega_e = it.number("atom", "omega_e", required=True)
    drive = it.number("atom", "omega_drive", default=0.0)
    if drive < 0.0:
        raise ConfigError("drive must be >= 0", key="atom.omega_drive",
                          line=it.line("atom", "omega_drive"))
    atom = AtomParams(omega_e, it.number("atom", "omega_s", default=omega_e), drive)

    markovian = it.word("geometry", "markovian", {"true", "false"}, "false") == "true"
    tau = it.number("geometry", "tau", default=0.0)
    if tau < 0.0:
        raise ConfigError("tau must be >= 0", key="geometry.tau", line=it.line("geometry", "tau"))
    if markovian and it.has("geometry", "tau") and tau != 0.0:
        raise ConfigError("markovian = true drops the delay; remove tau or set it to 0",
                          key="geometry.tau", line=it.line("geometry", "tau"))
    theta_raw = it.raw("geometry", "theta", default="0")
    if theta_raw.lower() == "derived":
        if markovian:
            raise ConfigError("derived theta needs a delay; not valid with markovian = true",
                              key="geometry.theta", line=it.line("geometry", "theta"))
        geometry = GeometryPhase.derived(omega_e, tau)
    else:
        theta = it.number("geometry", "theta", default=0.0)
        geometry = GeometryPhase.free(0.0 if markovian else tau, theta)

    grid = None
    if any(it.has("grid", k) for k in SECTIONS["grid"]):
        try:
            grid = SweepGrid(
                it.number("grid", "delta_min", required=True),
                it.number("grid", "delta_max", required=True),
                it.integer("grid", "steps", required=True),
                it.number("grid", "omega_min"),
                it.number("grid", "omega_max"),
                it.integer("grid", "omega_steps"),
            )
        except GiantAtomError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc), key="grid") from None

    kind = it.word("special_points", "kind", {k.value for k in SpecialKind}, "reflection")
    tol = it.number("special_points", "tol", default=PERFECT_TOL)
    if not tol > 0.0:
        raise ConfigError("tol must be > 0", key="special_points.tol",
                          line=it.line("special_points", "tol"))
    special_points = SpecialPointsOptions(SpecialKind(kind), tol)

    sign = it.word("special_tau", "sign", {"plus", "minus", "both"}, "both")
    special_tau = SpecialTauOptions(
        ("plus", "minus") if sign == "both" else (sign,),
        it.number("special_tau", "tau_min"),
        it.number("special_tau", "tau_max"),
    )

    draws = it.integer("verify", "draws", default=10_000)
    if draws < 1:
        raise ConfigError("draws must be >= 1", key="verify.draws", line=it.line("verify", "draws"))

    fmt = it.word("output", "format", {"csv", "json"}, "csv")
    return RunConfig(
        coupling=coupling,
        atom=atom,
        geometry=geometry,
        markovian=markovian,
        grid=grid,
        special_points=special_points,
        special_tau=special_tau,
        draws=draws,
        output_path=it.raw("output", "path"),
        output_format=OutputFormat(fmt),
    )
