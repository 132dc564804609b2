"""Record file format, built-in tables and batch evaluation.

The record format is line oriented::

    # comment
    kind = matterwave
    label = Neutron 1988
    year = 1988
    citation = 1988neutron
    mass = 1 u
    lambda = 1901+-70 pm
    d = 96 um
    theta = 15.2 urad
    published_beta = 0.60+-0.02

Blocks are separated by blank lines. A value is ``number [unit]``,
``lo..hi [unit]`` or ``x+-e [unit]``; units come from :data:`UNITS`.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Union

from .errors import MacroscopeError, ParseError, UnitError, ValidationError
from .matterwave import (
    DoubleSlit,
    MatterWaveRecord,
    MultiSlit,
    SingleSlit,
    beta_mw_from_wavelength,
    beta_mw_interval,
    coherence_time_mw,
    de_broglie_momentum,
    distinguish_time_mw,
    effective_divergence,
    record_divergence,
)
from .quantities import (
    ANGLE,
    CODATA2018,
    DIMENSIONLESS,
    ENERGY,
    FREQUENCY,
    LENGTH,
    MASS,
    MOMENTUM,
    TIME,
    Dimension,
    Interval,
    Quantity,
    interval_map_monotone,
)
from .ramsey import RamseyRecord, beta_ramsey, distinguish_time_ramsey
from .trap import TrapRecord, beta_trap

__all__ = [
    "UNITS", "ExperimentRecord", "BetaResult", "DEFAULT_TOLERANCE",
    "parse_quantity", "parse_records", "serialize_records", "builtin_tables",
    "evaluate_record", "evaluate_all", "summarize", "record_label", "record_kind",
]

ExperimentRecord = Union[MatterWaveRecord, RamseyRecord, TrapRecord]

DEFAULT_TOLERANCE = 0.10

_C = CODATA2018

UNITS: dict[str, tuple[float, Dimension]] = {
    "": (1.0, DIMENSIONLESS),
    "u": (_C.u.magnitude, MASS),
    "kg": (1.0, MASS),
    "pm": (1e-12, LENGTH),
    "nm": (1e-9, LENGTH),
    "um": (1e-6, LENGTH),
    "m": (1.0, LENGTH),
    "a0": (_C.a0.magnitude, LENGTH),
    "urad": (1e-6, ANGLE),
    "rad": (1.0, ANGLE),
    "Hz": (1.0, FREQUENCY),
    "GHz": (1e9, FREQUENCY),
    "THz": (1e12, FREQUENCY),
    "1/s": (1.0, FREQUENCY),
    "ms": (1e-3, TIME),
    "s": (1.0, TIME),
    "eV": (_C.eV.magnitude, ENERGY),
    "J": (1.0, ENERGY),
    "kg*m/s": (1.0, MOMENTUM),
}

# unit written by the serializer for each dimension (exact SI, lossless)
_SI_UNIT = {MASS: "kg", LENGTH: "m", FREQUENCY: "Hz", TIME: "s",
            ENERGY: "J", MOMENTUM: "kg*m/s"}

_NUM = r"[-+]?(?:\d+(?:\.\d+)?|\.\d+)(?:[eE][-+]?\d+)?"
_VALUE_RE = re.compile(rf"^(?P<a>{_NUM})(?:\s*(?P<op>\.\.|\+-|±)\s*(?P<b>{_NUM}))?\s*(?P<unit>.*?)\s*$")

# key -> (dimension, interval allowed)
_QUANTITY_FIELDS: dict[str, tuple[Dimension, bool]] = {
    "mass": (MASS, False),
    "lambda": (LENGTH, True),
    "lambda_nominal": (LENGTH, False),
    "d": (LENGTH, False),
    "theta": (ANGLE, False),
    "slit_separation": (LENGTH, False),
    "collimator_width": (LENGTH, False),
    "collimator_distance": (LENGTH, False),
    "flight_length": (LENGTH, False),
    "published_beta": (DIMENSIONLESS, True),
    "nu0": (FREQUENCY, False),
    "nu_s": (FREQUENCY, False),
    "r_s": (LENGTH, False),
    "einstein_a": (FREQUENCY, False),
    "coherence_time": (TIME, False),
    "energy": (ENERGY, False),
    "separation": (LENGTH, False),
}
_INT_FIELDS = {"year", "n_slits"}
_COMMON_KEYS = ("kind", "year", "citation", "note")
_KIND_KEYS = {
    "matterwave": ("label", "mass", "lambda", "lambda_nominal", "d", "theta", "slits",
                   "slit_separation", "collimator_width", "collimator_distance",
                   "flight_length", "n_slits", "published_beta"),
    "ramsey": ("atom", "nu0", "nu_s", "r_s", "einstein_a", "coherence_time", "published_beta"),
    "trap": ("label", "energy", "separation"),
}
_REQUIRED = {
    "matterwave": ("label", "mass", "d"),
    "ramsey": ("atom", "nu0", "nu_s", "coherence_time"),
    "trap": ("label", "energy", "separation"),
}
_SLIT_KEYS = {
    "single": ("flight_length",),
    "double": ("slit_separation", "collimator_width", "collimator_distance"),
    "multi": ("n_slits", "slit_separation", "flight_length"),
}


def parse_quantity(text: str, dim: Dimension | None = None, *, allow_interval: bool = True,
                   line: int | None = None, field: str | None = None) -> Interval:
    """Parse ``number [unit]``, ``lo..hi [unit]`` or ``x+-e [unit]`` into SI.

    A single number becomes a degenerate interval. When ``dim`` is given,
    the unit must carry that dimension.
    """
    m = _VALUE_RE.match(text.strip())
    if m is None:
        raise ParseError(f"cannot read value {text!r}", line, field)
    unit = m.group("unit")
    if unit not in UNITS:
        raise UnitError(f"unknown unit {unit!r}", line, field)
    scale, udim = UNITS[unit]
    if dim is not None and udim != dim:
        raise UnitError(f"unit {unit or '(none)'!r} has dimension [{udim}], expected [{dim}]", line, field)
    a = float(m.group("a"))
    op = m.group("op")
    if op is None:
        return Interval(a * scale, a * scale, udim)
    if not allow_interval:
        raise ParseError("a single value is required here", line, field)
    b = float(m.group("b"))
    if op == "..":
        if a > b:
            raise ValidationError(f"range {a}..{b} is reversed", line, field)
        return Interval(a * scale, b * scale, udim)
    if b < 0:
        raise ValidationError("uncertainty must be >= 0", line, field)
    return Interval((a - b) * scale, (a + b) * scale, udim)


def _blocks(text: str) -> Iterable[tuple[int, dict[str, tuple[int, str]]]]:
    block: dict[str, tuple[int, str]] = {}
    start = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if block:
                yield start, block
                block = {}
            continue
        if line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ParseError(f"expected 'key = value', got {raw!r}", lineno)
        if not re.fullmatch(r"[a-z][a-z0-9_]*", key):
            raise ParseError(f"keys are lower_snake_case, got {key!r}", lineno, key)
        if key in block:
            raise ParseError("duplicate key in record", lineno, key)
        if not block:
            start = lineno
        block[key] = (lineno, value)
    if block:
        yield start, block


def _build(start: int, block: dict[str, tuple[int, str]]) -> ExperimentRecord:
    if "kind" not in block:
        raise ValidationError("record has no 'kind'", start, "kind")
    kind_line, kind = block["kind"]
    if kind not in _KIND_KEYS:
        raise ValidationError(f"unknown kind {kind!r}", kind_line, "kind")
    allowed = set(_COMMON_KEYS) | set(_KIND_KEYS[kind])
    for key, (lineno, _) in block.items():
        if key not in allowed:
            raise ParseError(f"key not valid for kind {kind!r}", lineno, key)
    for key in _REQUIRED[kind] + ("year", "citation"):
        if key not in block:
            raise ValidationError("missing required field", start, key)

    values: dict[str, object] = {}
    for key, (lineno, raw) in block.items():
        if key in _QUANTITY_FIELDS:
            dim, ranged = _QUANTITY_FIELDS[key]
            iv = parse_quantity(raw, dim, allow_interval=ranged, line=lineno, field=key)
            if not iv.lo > 0:
                raise ValidationError(f"must be > 0, got {raw!r}", lineno, key)
            values[key] = iv
        elif key in _INT_FIELDS:
            try:
                values[key] = int(raw)
            except ValueError:
                raise ParseError(f"expected an integer, got {raw!r}", lineno, key) from None
        else:
            if not raw:
                raise ValidationError("must not be empty", lineno, key)
            values[key] = raw

    year = values["year"]
    if not 1900 < year < 2100:
        raise ValidationError(f"year {year} outside (1900, 2100)", block["year"][0], "year")

    def scalar(key: str) -> Quantity | None:
        iv = values.get(key)
        return None if iv is None else iv.lower

    common = dict(year=year, citation=values["citation"], note=values.get("note", ""))
    try:
        if kind == "matterwave":
            return _build_matterwave(start, block, values, scalar, common)
        if kind == "ramsey":
            return RamseyRecord(
                atom=values["atom"], nu0=scalar("nu0"), nu_s=scalar("nu_s"),
                T=scalar("coherence_time"), r_s=scalar("r_s"), einstein_A=scalar("einstein_a"),
                published_beta=values.get("published_beta"), **common)
        return TrapRecord(label=values["label"], E=scalar("energy"), D_sep=scalar("separation"), **common)
    except ValidationError as exc:
        line = block[exc.field][0] if exc.field in block else start
        raise ValidationError(exc.detail, line, exc.field) from None
    except MacroscopeError as exc:
        raise ValidationError(str(exc), start) from None


def _build_matterwave(start, block, values, scalar, common) -> MatterWaveRecord:
    d = scalar("d")
    slits = None
    if "slits" in values:
        shape = values["slits"]
        if shape not in _SLIT_KEYS:
            raise ValidationError(f"slits must be one of {sorted(_SLIT_KEYS)}", block["slits"][0], "slits")
        for key in _SLIT_KEYS[shape]:
            if key not in values:
                raise ValidationError(f"required by slits = {shape}", start, key)
        if shape == "single":
            slits = SingleSlit(d=d, L=scalar("flight_length"))
        elif shape == "double":
            slits = DoubleSlit(d=d, D=scalar("slit_separation"), d_prime=scalar("collimator_width"),
                               l=scalar("collimator_distance"))
        else:
            slits = MultiSlit(N=values["n_slits"], d=d, D=scalar("slit_separation"), L=scalar("flight_length"))
    theta = scalar("theta")
    published = values.get("published_beta")
    nominal = scalar("lambda_nominal")
    wavelength = values.get("lambda")
    if wavelength is None:
        if nominal is None or published is None:
            raise ValidationError("missing required field (lambda, or lambda_nominal with published_beta)",
                                  start, "lambda")
        wavelength = _reconstruct_wavelength(nominal, published, theta, slits, d)
    return MatterWaveRecord(label=values["label"], mass=scalar("mass"), wavelength=wavelength, d=d,
                            slits=slits, theta_override=theta, published_beta=published,
                            wavelength_nominal=nominal, **common)


def _reconstruct_wavelength(nominal, published: Interval, theta, slits, d) -> Interval:
    """Wavelength range implied by a published beta range (beta is proportional to 1/lambda)."""
    if theta is None:
        theta = effective_divergence(slits)[0]
    beta_nominal = beta_mw_from_wavelength(nominal, theta, d).magnitude
    return interval_map_monotone(
        published, lambda b: nominal * (beta_nominal / b.magnitude), "decreasing")


def parse_records(text: str) -> list[ExperimentRecord]:
    """Parse and validate every record in ``text``; the first error aborts."""
    return [_build(start, block) for start, block in _blocks(text)]


def _fmt_number(x: float) -> str:
    return repr(float(x))


def _fmt_interval(iv: Interval, unit: str | None = None) -> str:
    if unit is None:
        unit = _SI_UNIT.get(iv.dim, "")
    body = _fmt_number(iv.lo) if iv.is_degenerate else f"{_fmt_number(iv.lo)}..{_fmt_number(iv.hi)}"
    return f"{body} {unit}".rstrip()


def _fmt_quantity(q: Quantity, unit: str | None = None) -> str:
    return _fmt_interval(Interval(q.magnitude, q.magnitude, q.dim), unit)


def _serialize_one(rec: ExperimentRecord) -> list[str]:
    lines: list[tuple[str, str]] = []
    if isinstance(rec, MatterWaveRecord):
        lines += [("kind", "matterwave"), ("label", rec.label)]
    elif isinstance(rec, RamseyRecord):
        lines += [("kind", "ramsey"), ("atom", rec.atom)]
    else:
        lines += [("kind", "trap"), ("label", rec.label)]
    lines += [("year", str(rec.year)), ("citation", rec.citation)]
    if isinstance(rec, MatterWaveRecord):
        lines += [("mass", _fmt_quantity(rec.mass)), ("lambda", _fmt_interval(rec.wavelength))]
        if rec.wavelength_nominal is not None:
            lines.append(("lambda_nominal", _fmt_quantity(rec.wavelength_nominal)))
        lines.append(("d", _fmt_quantity(rec.d)))
        if rec.theta_override is not None:
            lines.append(("theta", _fmt_quantity(rec.theta_override, "rad")))
        s = rec.slits
        if isinstance(s, SingleSlit):
            lines += [("slits", "single"), ("flight_length", _fmt_quantity(s.L))]
        elif isinstance(s, DoubleSlit):
            lines += [("slits", "double"), ("slit_separation", _fmt_quantity(s.D)),
                      ("collimator_width", _fmt_quantity(s.d_prime)),
                      ("collimator_distance", _fmt_quantity(s.l))]
        elif isinstance(s, MultiSlit):
            lines += [("slits", "multi"), ("n_slits", str(s.N)),
                      ("slit_separation", _fmt_quantity(s.D)), ("flight_length", _fmt_quantity(s.L))]
    elif isinstance(rec, RamseyRecord):
        lines += [("nu0", _fmt_quantity(rec.nu0)), ("nu_s", _fmt_quantity(rec.nu_s))]
        if rec.r_s is not None:
            lines.append(("r_s", _fmt_quantity(rec.r_s)))
        if rec.einstein_A is not None:
            lines.append(("einstein_a", _fmt_quantity(rec.einstein_A)))
        lines.append(("coherence_time", _fmt_quantity(rec.T)))
    else:
        lines += [("energy", _fmt_quantity(rec.E)), ("separation", _fmt_quantity(rec.D_sep))]
    published = getattr(rec, "published_beta", None)
    if published is not None:
        lines.append(("published_beta", _fmt_interval(published)))
    if rec.note:
        lines.append(("note", rec.note))
    return [f"{k} = {v}" for k, v in lines]


def serialize_records(records: Iterable[ExperimentRecord]) -> str:
    """Lossless text form of ``records`` (SI units, shortest round-trip floats)."""
    return "\n".join("\n".join(_serialize_one(r)) + "\n" for r in records)


def builtin_tables() -> tuple[list[MatterWaveRecord], list[RamseyRecord]]:
    """The published matter-wave table and Ramsey table, in row order."""
    text = resources.files("macroscope").joinpath("data/tables.rec").read_text(encoding="utf-8")
    records = parse_records(text)
    table1 = [r for r in records if isinstance(r, MatterWaveRecord)]
    table2 = [r for r in records if isinstance(r, RamseyRecord)]
    return table1, table2


def record_kind(rec: ExperimentRecord) -> str:
    if isinstance(rec, MatterWaveRecord):
        return "matterwave"
    if isinstance(rec, RamseyRecord):
        return "ramsey"
    return "trap"


def record_label(rec: ExperimentRecord) -> str:
    if isinstance(rec, RamseyRecord):
        return f"{rec.atom} {rec.year} [{rec.citation}]"
    return rec.label


@dataclass(frozen=True)
class BetaResult:
    """beta = T / tau for one record, with the published comparison.

    ``tau`` and ``T`` are ``None`` when the record lacks what they need
    (a matter-wave row without flight length). ``error`` is set instead of
    ``beta`` when evaluation failed.
    """

    record: ExperimentRecord
    beta: Interval | None
    tau: Interval | None = None
    T: Interval | None = None
    published_beta: Interval | None = None
    deviation: float | None = None
    agrees: bool | None = None
    error: str | None = None

    @property
    def label(self) -> str:
        return record_label(self.record)

    @property
    def ok(self) -> bool:
        return self.error is None and self.agrees is not False


def _relative_deviation(computed: Interval, published: Interval) -> float:
    pairs = [(computed.lo, published.lo), (computed.hi, published.hi),
             (computed.midpoint, published.midpoint)]
    return max(abs(c - p) / abs(p) for c, p in pairs)


def _mw_times(rec: MatterWaveRecord) -> tuple[Interval | None, Interval | None]:
    if rec.slits is None:
        return None, None
    _, L = effective_divergence(rec.slits)
    theta = record_divergence(rec)

    def speed(lam: Quantity) -> Quantity:
        return de_broglie_momentum(lam) / rec.mass

    T = interval_map_monotone(rec.wavelength, lambda lam: coherence_time_mw(L, speed(lam)), "increasing")
    tau = interval_map_monotone(
        rec.wavelength,
        lambda lam: distinguish_time_mw(L, speed(lam), de_broglie_momentum(lam), theta, rec.d),
        "increasing")
    return tau, T


def evaluate_record(rec: ExperimentRecord, tolerance: float = DEFAULT_TOLERANCE) -> BetaResult:
    try:
        tau = T = None
        if isinstance(rec, MatterWaveRecord):
            beta = beta_mw_interval(rec)
            tau, T = _mw_times(rec)
        elif isinstance(rec, RamseyRecord):
            beta = Interval.exact(beta_ramsey(rec))
            tau = Interval.exact(distinguish_time_ramsey(rec.nu0, rec.nu_s, rec.system_size))
            T = Interval.exact(rec.T)
        elif isinstance(rec, TrapRecord):
            beta = Interval.exact(beta_trap(rec.E, rec.D_sep))
        else:
            raise TypeError(f"not an experiment record: {type(rec).__name__}")
    except MacroscopeError as exc:
        return BetaResult(rec, None, error=f"{type(exc).__name__}: {exc}")
    published = getattr(rec, "published_beta", None)
    deviation = agrees = None
    if published is not None:
        deviation = _relative_deviation(beta, published)
        agrees = deviation <= tolerance
    return BetaResult(rec, beta, tau, T, published, deviation, agrees)


def evaluate_all(records: Iterable[ExperimentRecord], tolerance: float = DEFAULT_TOLERANCE,
                 workers: int | None = None) -> list[BetaResult]:
    """One result per record, in input order; failures are collected, not raised."""
    records = list(records)
    if workers and workers > 1 and len(records) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda r: evaluate_record(r, tolerance), records))
    return [evaluate_record(r, tolerance) for r in records]


def summarize(results: Iterable[BetaResult]) -> dict[str, int]:
    counts = {"total": 0, "agree": 0, "disagree": 0, "unpublished": 0, "errors": 0}
    for res in results:
        counts["total"] += 1
        if res.error is not None:
            counts["errors"] += 1
        elif res.agrees is None:
            counts["unpublished"] += 1
        elif res.agrees:
            counts["agree"] += 1
        else:
            counts["disagree"] += 1
    return counts
