"""Command-line interface: ``macroscope tables|compute|plot-data|appendix|export-builtin``."""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path
from typing import Sequence

from . import report
from .dataset import DEFAULT_TOLERANCE, builtin_tables, parse_quantity, parse_records, serialize_records
from .errors import MacroscopeError, MissingParameter
from .matterwave import (
    DoubleSlit,
    MultiSlit,
    SingleSlit,
    beta_mw,
    coherence_time_mw,
    de_broglie_momentum,
    distinguish_time_mw,
    effective_divergence,
    probe_window,
)
from .quantities import (
    ANGLE,
    CODATA2018,
    ENERGY,
    FREQUENCY,
    LENGTH,
    MASS,
    MOMENTUM,
    TIME,
    Dimension,
    Quantity,
)
from .ramsey import (
    cross_section_distinction,
    detuning_absorption,
    distinguish_time_general,
    distinguish_time_ramsey,
    elastic_cross_section,
    hydrogen_levels,
    hydrogenic_matrix_element,
    ramsey_beta,
    system_size_from_einstein_A,
)
from .trap import beta_trap

# ground-state hyperfine splitting of hydrogen
HYDROGEN_HYPERFINE = Quantity(1.420405751768e9, FREQUENCY)

_MW_PARAMS = {"lambda": LENGTH, "p": MOMENTUM, "theta": ANGLE, "d": LENGTH, "M": MASS,
              "L": LENGTH, "D": LENGTH, "d_prime": LENGTH, "l": LENGTH, "N": None, "slits": None}
_RAMSEY_PARAMS = {"nu0": FREQUENCY, "nu_s": FREQUENCY, "r_s": LENGTH, "einstein_A": FREQUENCY, "T": TIME}
_TRAP_PARAMS = {"E": ENERGY, "D": LENGTH}
_APPENDIX_PARAMS = {
    "probe_window": {"M": MASS, "p": MOMENTUM, "lambda": LENGTH, "theta": ANGLE, "d": LENGTH,
                     "L": LENGTH, "D": LENGTH, "exact": None},
    "xsec": {"nu": FREQUENCY, "nu0": FREQUENCY, "n_max": None},
    "pa": {"nu": FREQUENCY, "tau": TIME, "n_max": None},
    "tau_general": {"nu": FREQUENCY, "nu0": FREQUENCY, "n_max": None},
}


class _Params:
    """``key=value`` command-line parameters, parsed against expected dimensions."""

    def __init__(self, pairs: Sequence[str], schema: dict[str, Dimension | None]):
        self.raw: dict[str, str] = {}
        for pair in pairs:
            key, sep, value = pair.partition("=")
            if not sep or not key:
                raise MacroscopeError(f"expected key=value, got {pair!r}")
            if key not in schema:
                raise MacroscopeError(f"unknown parameter {key!r}; expected one of {', '.join(schema)}")
            self.raw[key] = value.strip()
        self.schema = schema

    def __contains__(self, key: str) -> bool:
        return key in self.raw

    def q(self, key: str) -> Quantity:
        if key not in self.raw:
            raise MissingParameter(f"missing parameter {key!r}")
        return parse_quantity(self.raw[key], self.schema[key], allow_interval=False, field=key).lower

    def text(self, key: str, default: str | None = None) -> str:
        if key not in self.raw:
            if default is None:
                raise MissingParameter(f"missing parameter {key!r}")
            return default
        return self.raw[key]

    def integer(self, key: str, default: int) -> int:
        try:
            return int(self.raw.get(key, default))
        except ValueError:
            raise MacroscopeError(f"{key} must be an integer") from None

    def echo(self) -> list[tuple[str, str, str]]:
        return [(f"input {k}", v, "") for k, v in self.raw.items()]


def _need_one(params: _Params, *keys: str) -> str:
    for key in keys:
        if key in params:
            return key
    raise MissingParameter(f"need one of: {', '.join(keys)}")


def _momentum(params: _Params) -> Quantity:
    if _need_one(params, "p", "lambda") == "p":
        return params.q("p")
    return de_broglie_momentum(params.q("lambda"))


def _compute_mw(params: _Params) -> list:
    p = _momentum(params)
    d = params.q("d")
    items = [("p", p.magnitude, "kg*m/s")]
    L = params.q("L") if "L" in params else None
    if "theta" in params:
        theta = params.q("theta")
    elif "slits" in params:
        shape = params.text("slits")
        if shape == "single":
            slits = SingleSlit(d, params.q("L"))
        elif shape == "double":
            slits = DoubleSlit(d, params.q("D"), params.q("d_prime"), params.q("l"))
        elif shape == "multi":
            slits = MultiSlit(params.integer("N", 0), d, params.q("D"), params.q("L"))
        else:
            raise MacroscopeError("slits must be single, double or multi")
        theta, L = effective_divergence(slits)
        items += [("theta", theta.magnitude, "rad"), ("L", L.magnitude, "m")]
    else:
        raise MissingParameter("need theta, or slits=single|double|multi with its geometry")
    if "M" in params and L is not None:
        v = p / params.q("M")
        items += [("v", v.magnitude, "m/s"),
                  ("T", coherence_time_mw(L, v).magnitude, "s"),
                  ("tau", distinguish_time_mw(L, v, p, theta, d).magnitude, "s")]
    items.append(("beta", beta_mw(p, theta, d).magnitude, ""))
    return items


def _compute_ramsey(params: _Params) -> list:
    nu0, nu_s, T = params.q("nu0"), params.q("nu_s"), params.q("T")
    if _need_one(params, "r_s", "einstein_A") == "r_s":
        r_s = params.q("r_s")
    else:
        r_s = system_size_from_einstein_A(params.q("einstein_A"), nu_s)
    return [
        ("r_s", r_s.magnitude, "m"),
        ("r_s/a0", r_s.in_units(CODATA2018.a0), ""),
        ("T", T.magnitude, "s"),
        ("tau", distinguish_time_ramsey(nu0, nu_s, r_s).magnitude, "s"),
        ("beta", ramsey_beta(nu0, nu_s, r_s, T).magnitude, ""),
    ]


def _compute_trap(params: _Params) -> list:
    return [("beta", beta_trap(params.q("E"), params.q("D")).magnitude, "")]


_COMPUTE = {
    "mw": (_MW_PARAMS, _compute_mw),
    "ramsey": (_RAMSEY_PARAMS, _compute_ramsey),
    "trap": (_TRAP_PARAMS, _compute_trap),
}


def _levels_and_nu(params: _Params):
    levels = hydrogen_levels(params.integer("n_max", 10))
    nu21 = levels[0].nu_n1
    nu = params.q("nu") if "nu" in params else nu21 / 2
    return levels, nu, nu21


def _appendix(calc: str, params: _Params) -> list:
    if calc == "probe_window":
        M, theta, d, L = params.q("M"), params.q("theta"), params.q("d"), params.q("L")
        p = _momentum(params)
        exact = params.text("exact", "0") in ("1", "true", "yes")
        D = params.q("D") if "D" in params else None
        win = probe_window(M, p, theta, d, L, D=D, exact=exact)
        direct = distinguish_time_mw(L, p / M, p, theta, d)
        return [
            ("omega_max", win.omega_max.magnitude, "rad/s"),
            ("delta_omega_max", win.delta_omega_max.magnitude, "rad/s"),
            ("tau_window", win.tau.magnitude, "s"),
            ("tau_direct", direct.magnitude, "s"),
            ("rel_diff", abs(win.tau.magnitude / direct.magnitude - 1), ""),
        ]
    if calc == "xsec":
        levels, nu, _ = _levels_and_nu(params)
        nu0 = params.q("nu0") if "nu0" in params else HYDROGEN_HYPERFINE
        return [
            ("nu", nu.magnitude, "Hz"),
            ("nu0", nu0.magnitude, "Hz"),
            ("sigma_F0", elastic_cross_section(0, nu, levels, nu0).magnitude, "m^2"),
            ("sigma_F1", elastic_cross_section(1, nu, levels, nu0).magnitude, "m^2"),
            ("delta_sigma", cross_section_distinction(nu, levels, nu0).magnitude, "m^2"),
        ]
    if calc == "pa":
        levels, nu, _ = _levels_and_nu(params)
        tau = params.q("tau")
        return [
            ("nu", nu.magnitude, "Hz"),
            ("tau", tau.magnitude, "s"),
            ("P_a", detuning_absorption(nu, tau, levels).magnitude, "m^2*s (relative)"),
        ]
    if calc == "tau_general":
        levels, nu, nu21 = _levels_and_nu(params)
        nu0 = params.q("nu0") if "nu0" in params else HYDROGEN_HYPERFINE
        general = distinguish_time_general(nu, levels, nu0)
        simple = distinguish_time_ramsey(nu0, nu21, hydrogenic_matrix_element(2))
        return [
            ("nu", nu.magnitude, "Hz"),
            ("nu0", nu0.magnitude, "Hz"),
            ("tau_general", general.magnitude, "s"),
            ("tau_simplified", simple.magnitude, "s"),
            ("ratio", general.magnitude / simple.magnitude, ""),
        ]
    raise MacroscopeError(f"unknown calculator {calc!r}")


def _render_values(items, fmt_name: str) -> str:
    if fmt_name == "json":
        return report.values_json(items)
    if fmt_name == "csv":
        return report.values_csv(items)
    return report.values_text(items)


def _load(args) -> list:
    if args.input:
        return parse_records(Path(args.input).read_text(encoding="utf-8"))
    t1, t2 = builtin_tables()
    return t1 + t2


def _use_color(args) -> bool:
    return (args.format == "text" and "MACROSCOPE_NO_COLOR" not in os.environ
            and sys.stdout.isatty())


def cmd_tables(args) -> int:
    kinds = {"1": ["matterwave"], "2": ["ramsey"], "both": ["matterwave", "ramsey", "trap"]}[args.which]
    groups = report.table_groups(_load(args), kinds, args.tolerance, args.workers)
    if not groups:
        raise MacroscopeError("no records for the requested table")
    if args.format == "csv":
        sys.stdout.write(report.tables_csv(groups))
    elif args.format == "json":
        sys.stdout.write(report.tables_json(groups, args.tolerance))
    else:
        sys.stdout.write(report.tables_text(groups, args.tolerance, _use_color(args)))
    bad = [(kind, i, r) for kind, rs in groups for i, r in enumerate(rs, start=1) if not r.ok]
    for kind, i, res in bad:
        reason = res.error or f"deviation {res.deviation:.2%} exceeds tolerance {args.tolerance:.0%}"
        print(f"{kind} row {i} ({res.label}): {reason}", file=sys.stderr)
    return 1 if bad else 0


def cmd_compute(args) -> int:
    schema, fn = _COMPUTE[args.kind]
    params = _Params(args.params, schema)
    items = params.echo() + fn(params)
    sys.stdout.write(_render_values(items, args.format))
    return 0


def cmd_plotdata(args) -> int:
    series = report.plot_series(args.series, _load(args), args.tolerance)
    if args.format == "json":
        sys.stdout.write(report.series_json(series))
    else:
        sys.stdout.write(report.series_csv(series))
    return 0


def cmd_appendix(args) -> int:
    params = _Params(args.params, _APPENDIX_PARAMS[args.calc])
    items = params.echo() + _appendix(args.calc, params)
    sys.stdout.write(_render_values(items, args.format))
    return 0


def cmd_export(args) -> int:
    t1, t2 = builtin_tables()
    records = {"1": t1, "2": t2, "both": t1 + t2}[args.which]
    text = serialize_records(records)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return 0


def _tolerance(text: str) -> float:
    value = float(text)
    if not (math.isfinite(value) and value >= 0):
        raise argparse.ArgumentTypeError("tolerance must be a finite number >= 0")
    return value


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--format", choices=("text", "csv", "json"), default=default("text"),
                        help="output format (default: text)")
    parser.add_argument("--tolerance", type=_tolerance, default=default(DEFAULT_TOLERANCE),
                        help="relative tolerance for published-beta agreement (default: 0.10)")
    parser.add_argument("--input", metavar="FILE", default=default(None),
                        help="record file to use instead of the built-in tables")
    parser.add_argument("--workers", type=int, default=default(None), help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macroscope",
        description="Macroscopicity beta = T/tau of quantum-superposition experiments.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", parents=[common], help="reproduce the published beta tables")
    p.add_argument("--which", choices=("1", "2", "both"), default="both")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("compute", parents=[common], help="beta for ad-hoc parameters",
                       description="kinds: mw (lambda|p, theta|slits geometry, d; optional M, L), "
                                   "ramsey (nu0, nu_s, r_s|einstein_A, T), trap (E, D)")
    p.add_argument("kind", choices=sorted(_COMPUTE))
    p.add_argument("params", nargs="*", metavar="key=value")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("plot-data", parents=[common], help="data series behind the beta plots")
    p.add_argument("series", choices=sorted(report.SERIES))
    p.set_defaults(func=cmd_plotdata)

    p = sub.add_parser("appendix", parents=[common], help="probe-window and scattering calculators")
    p.add_argument("calc", choices=sorted(_APPENDIX_PARAMS))
    p.add_argument("params", nargs="*", metavar="key=value")
    p.set_defaults(func=cmd_appendix)

    p = sub.add_parser("export-builtin", parents=[common], help="write the built-in tables as a record file")
    p.add_argument("--which", choices=("1", "2", "both"), default="both")
    p.add_argument("--output", "-o", metavar="FILE")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MacroscopeError, OSError) as exc:
        print(f"macroscope: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
