"""Command-line front end.

Usage::

    giant-atom SUBCOMMAND [--config PATH] [--out PATH] [--format csv|json] [--seed N]

Subcommands: spectrum, heatmap, special-points, special-tau, verify, classify.
Exit status is 0 on success, 1 for input/configuration errors and 2 for
numerical failures (including a failed ``verify``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .config import ConfigError, OutputFormat, RunConfig, parse_config
from .errors import GiantAtomError, InvalidInputError
from .scattering import classify_coupling, markovianity_ratio
from .spectral import (
    find_special_points,
    heatmap_delta_omega,
    special_tau_window,
    sweep_spectrum,
)
from .verify import compare_random_draws

SCHEMA_VERSION = 1
DEFAULT_SEED = 42
SUBCOMMANDS = ("spectrum", "heatmap", "special-points", "special-tau", "verify", "classify")


def fmt_float(x) -> str:
    """17 significant digits, scientific; round-trips through float()."""
    return f"{float(x):.16e}"


class Table:
    """Column names, rows and header comments for one output artifact."""

    def __init__(self, kind, columns, rows, notes=None, extra=None):
        self.kind = kind
        self.columns = list(columns)
        self.rows = rows
        self.notes = dict(notes or {})
        self.extra = dict(extra or {})

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key, value in self.notes.items():
            if isinstance(value, bool):
                value = str(value).lower()
            buf.write(f"# {key}={value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([fmt_float(v) if isinstance(v, float) else v for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            **self.notes,
            **self.extra,
            "columns": self.columns,
            "rows": [list(r) for r in self.rows],
        }
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def _need_grid(config: RunConfig, omega_axis=False):
    if config.grid is None:
        raise ConfigError("this subcommand needs a [grid] section", key="grid")
    if omega_axis and not config.grid.has_omega_axis:
        raise ConfigError("heatmap needs omega_min, omega_max and omega_steps", key="grid")
    return config.grid


def _spectrum(config, seed):
    spec = sweep_spectrum(config.coupling, config.atom, config.geometry, _need_grid(config))
    big_t, big_r = spec.T, spec.R
    rows = [
        (float(d), float(t.real), float(t.imag), float(r.real), float(r.imag),
         float(tt), float(rr))
        for d, t, r, tt, rr in zip(spec.delta, spec.t, spec.r, big_t, big_r)
    ]
    extra = {"decoupled_deltas": [float(d) for d in spec.delta[spec.decoupled]]}
    return Table("spectrum", ["delta", "t_re", "t_im", "r_re", "r_im", "T", "R"], rows,
                 extra=extra)


def _heatmap(config, seed):
    hm = heatmap_delta_omega(config.coupling, config.atom, config.geometry,
                             _need_grid(config, omega_axis=True))
    return Table("heatmap", ["delta", "omega", "T"], list(hm.rows()),
                 notes={"order": "row-major, omega outer, delta inner"})


def _special_points(config, seed):
    grid = _need_grid(config)
    opts = config.special_points
    scan = find_special_points(config.coupling, config.atom, config.geometry,
                               (grid.delta_min, grid.delta_max), opts.kind, opts.tol,
                               n_scan=grid.steps)
    rows = [(p.delta, p.kind.value, p.value) for p in scan]
    return Table("special-points", ["delta", "kind", "T"], rows,
                 notes={"whole_range": scan.whole_range})


def _special_tau(config, seed):
    opts = config.special_tau
    if opts.tau_min is None or opts.tau_max is None:
        raise ConfigError("special-tau needs tau_min and tau_max", key="special_tau")
    rows = []
    for sign in opts.signs:
        for order, tau in special_tau_window(config.atom.omega_e, config.atom.omega_drive,
                                             sign, opts.tau_min, opts.tau_max):
            rows.append((sign, order, tau))
    return Table("special-tau", ["sign", "order", "tau"], rows)


def _verify(config, seed):
    draws = config.draws if config is not None else 10_000
    rep = compare_random_draws(draws, seed)
    rows = [
        ("max_t_deviation", rep.max_t_deviation),
        ("max_abs_r_deviation", rep.max_abs_r_deviation),
        ("max_unitarity_closed", rep.max_unitarity_closed),
        ("max_unitarity_oracle", rep.max_unitarity_oracle),
        ("singular_draws", rep.singular_draws),
    ]
    notes = {"draws": draws, "seed": seed, "passed": rep.passed()}
    return Table("verify", ["metric", "value"], rows, notes=notes), rep.passed()


def _classify(config, seed):
    cls = classify_coupling(config.coupling)
    ratio = markovianity_ratio(config.coupling, config.geometry)
    return Table("classify", ["regime", "symmetric", "tol", "markovianity_ratio"],
                 [(cls.regime.value, str(cls.symmetric).lower(), float(cls.tol), float(ratio))])


_HANDLERS = {
    "spectrum": _spectrum,
    "heatmap": _heatmap,
    "special-points": _special_points,
    "special-tau": _special_tau,
    "classify": _classify,
}


def run(subcommand: str, config: RunConfig | None, out: str | None = None,
        fmt: str | None = None, seed: int = DEFAULT_SEED, stdout=None) -> int:
    """Execute one subcommand and write its artifact.

    Returns the process exit status; errors are reported on stderr.
    """
    stdout = stdout or sys.stdout
    try:
        passed = True
        if subcommand == "verify":
            table, passed = _verify(config, seed)
        elif subcommand in _HANDLERS:
            if config is None:
                raise ConfigError(f"{subcommand} needs --config")
            table = _HANDLERS[subcommand](config, seed)
        else:
            raise InvalidInputError(f"unknown subcommand {subcommand!r}")
        fmt_enum = OutputFormat(fmt) if fmt else (
            config.output_format if config is not None else OutputFormat.CSV)
        text = table.to_json() if fmt_enum is OutputFormat.JSON else table.to_csv()
        path = out or (config.output_path if config is not None else None)
        if path:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        if subcommand == "verify":
            summary = ", ".join(f"{name}={value}" for name, value in table.rows)
            print(f"verify: {summary}", file=sys.stderr)
        if not passed:
            print("verify: closed form and oracle disagree beyond tolerance", file=sys.stderr)
            return 2
        return 0
    except (InvalidInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GiantAtomError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


class _Parser(argparse.ArgumentParser):
    # bad flags are input errors: exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="giant-atom",
        description="Single-photon scattering off a driven chiral Lambda-type giant atom.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="path to the run configuration")
    parser.add_argument("--out", help="output file (default: config output.path, else stdout)")
    parser.add_argument("--format", choices=["csv", "json"], dest="fmt")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"seed for randomised verification (default {DEFAULT_SEED})")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed < 0 or args.seed >= 2 ** 64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return 1
    config = None
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = parse_config(fh.read())
        except (InvalidInputError, OSError, UnicodeDecodeError) as exc:
            print(f"error: {args.config}: {exc}", file=sys.stderr)
            return 1
    return run(args.subcommand, config, args.out, args.fmt, args.seed)


if __name__ == "__main__":
    sys.exit(main())
