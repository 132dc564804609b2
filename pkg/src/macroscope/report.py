"""Plot series and deterministic text / CSV / JSON rendering of results."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .dataset import BetaResult, ExperimentRecord, evaluate_all, record_kind
from .errors import EmptyDataset, MacroscopeError
from .quantities import CODATA2018

SERIES = {
    # name: (record kind, x axis)
    "beta_vs_mass": ("matterwave", "mass_u"),
    "beta_vs_year_mw": ("matterwave", "year"),
    "beta_vs_year_ramsey": ("ramsey", "year"),
}

TABLE_TITLES = {
    "matterwave": "Matter-wave interferometers",
    "ramsey": "Ramsey-like interferometers",
    "trap": "Trapped-particle superpositions",
}

CSV_HEADER = ("table", "row", "label", "year", "citation", "beta_lo", "beta_hi",
              "published_lo", "published_hi", "max_rel_dev", "status")


def fmt(x: float | None) -> str:
    """Four significant digits, scientific notation, locale independent."""
    return "" if x is None else f"{x:.3e}"


@dataclass(frozen=True)
class PlotSeries:
    name: str
    x_axis: str
    points: list[tuple[float, float, str]] = field(default_factory=list)
    y_axis: str = "beta"

    def __post_init__(self):
        xs = [p[0] for p in self.points]
        if xs != sorted(xs):
            raise ValueError("plot points must be sorted by x")
        if any(p[1] <= 0 for p in self.points):
            raise ValueError("plot y values must be positive")


def _x_value(rec: ExperimentRecord, axis: str) -> float:
    if axis == "mass_u":
        return rec.mass.in_units(CODATA2018.u)
    return float(rec.year)


def plot_series(name: str, records: Iterable[ExperimentRecord], tolerance: float = 0.10) -> PlotSeries:
    """Data behind a beta-versus-mass or beta-versus-year scatter plot.

    Range rows contribute two points (both beta endpoints); exact rows one.
    Points are sorted by x, ties kept in input order.
    """
    if name not in SERIES:
        raise ValueError(f"unknown series {name!r}; choose from {sorted(SERIES)}")
    kind, axis = SERIES[name]
    chosen = [r for r in records if record_kind(r) == kind]
    if not chosen:
        raise EmptyDataset(f"no {kind} records for series {name}")
    points = []
    for res in evaluate_all(chosen, tolerance):
        if res.error is not None:
            raise MacroscopeError(f"{res.label}: {res.error}")
        x = _x_value(res.record, axis)
        if res.beta.is_degenerate:
            points.append((x, res.beta.lo, res.label))
        else:
            points.append((x, res.beta.lo, f"{res.label} [lo]"))
            points.append((x, res.beta.hi, f"{res.label} [hi]"))
    points.sort(key=lambda p: p[0])
    return PlotSeries(name, axis, points)


def series_csv(series: PlotSeries) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow((series.x_axis, series.y_axis, "label"))
    for x, y, label in series.points:
        w.writerow((repr(x), fmt(y), label))
    return buf.getvalue()


def series_json(series: PlotSeries) -> str:
    doc = {
        "name": series.name,
        "x_axis": series.x_axis,
        "y_axis": series.y_axis,
        "points": [{"x": x, "y": y, "label": label} for x, y, label in series.points],
    }
    return json.dumps(doc, indent=2) + "\n"


def _status(res: BetaResult) -> str:
    if res.error is not None:
        return "ERROR"
    if res.agrees is None:
        return "NO-REF"
    return "AGREE" if res.agrees else "DISAGREE"


def _iv(iv) -> str:
    if iv is None:
        return "-"
    if iv.is_degenerate:
        return fmt(iv.lo)
    return f"{fmt(iv.lo)} .. {fmt(iv.hi)}"


def _rows(groups: Sequence[tuple[str, list[BetaResult]]]):
    for kind, results in groups:
        for i, res in enumerate(results, start=1):
            yield kind, i, res


def tables_text(groups: Sequence[tuple[str, list[BetaResult]]], tolerance: float,
                color: bool = False) -> str:
    out = []
    paint = {"AGREE": "\x1b[32m", "DISAGREE": "\x1b[31m", "ERROR": "\x1b[31m"}
    for kind, results in groups:
        out.append(f"{TABLE_TITLES[kind]} ({len(results)} rows, tolerance {tolerance:.0%})")
        out.append(f"{'#':>3}  {'label':<34} {'year':>4}  {'beta computed':<22}  "
                   f"{'beta published':<22}  {'max dev':>8}  status")
        for i, res in enumerate(results, start=1):
            status = _status(res)
            dev = "-" if res.deviation is None else f"{res.deviation:.2%}"
            shown = f"{paint[status]}{status}\x1b[0m" if color and status in paint else status
            out.append(f"{i:>3}  {res.label:<34} {res.record.year:>4}  {_iv(res.beta):<22}  "
                       f"{_iv(res.published_beta):<22}  {dev:>8}  {shown}")
            if res.error is not None:
                out.append(f"     error: {res.error}")
        ok = sum(1 for r in results if r.ok)
        out.append(f"{ok}/{len(results)} rows OK")
        out.append("")
    return "\n".join(out)


def tables_csv(groups: Sequence[tuple[str, list[BetaResult]]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for kind, i, res in _rows(groups):
        beta, pub = res.beta, res.published_beta
        w.writerow((
            kind, i, res.label, res.record.year, res.record.citation,
            fmt(beta.lo if beta else None), fmt(beta.hi if beta else None),
            fmt(pub.lo if pub else None), fmt(pub.hi if pub else None),
            fmt(res.deviation), _status(res),
        ))
    return buf.getvalue()


def _iv_json(iv):
    return None if iv is None else {"lo": iv.lo, "hi": iv.hi}


def tables_json(groups: Sequence[tuple[str, list[BetaResult]]], tolerance: float) -> str:
    doc = {"tolerance": tolerance, "tables": []}
    for kind, results in groups:
        rows = []
        for i, res in enumerate(results, start=1):
            rows.append({
                "row": i,
                "label": res.label,
                "year": res.record.year,
                "citation": res.record.citation,
                "beta": _iv_json(res.beta),
                "tau_s": _iv_json(res.tau),
                "T_s": _iv_json(res.T),
                "published_beta": _iv_json(res.published_beta),
                "max_rel_dev": res.deviation,
                "status": _status(res),
                "error": res.error,
            })
        doc["tables"].append({"kind": kind, "title": TABLE_TITLES[kind], "rows": rows})
    return json.dumps(doc, indent=2) + "\n"


def values_text(items: Sequence[tuple[str, float | str, str]]) -> str:
    """Aligned ``name = value unit`` lines; strings are echoed verbatim."""
    width = max((len(name) for name, _, _ in items), default=0)
    lines = []
    for name, value, unit in items:
        shown = value if isinstance(value, str) else fmt(value)
        lines.append(f"{name:<{width}} = {shown} {unit}".rstrip())
    return "\n".join(lines) + "\n"


def values_json(items: Sequence[tuple[str, float | str, str]]) -> str:
    doc = {name: {"value": value, "unit": unit} for name, value, unit in items}
    return json.dumps(doc, indent=2) + "\n"


def values_csv(items: Sequence[tuple[str, float | str, str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("name", "value", "unit"))
    for name, value, unit in items:
        w.writerow((name, value if isinstance(value, str) else fmt(value), unit))
    return buf.getvalue()


def table_groups(records: Iterable[ExperimentRecord], kinds: Sequence[str],
                 tolerance: float, workers: int | None = None) -> list[tuple[str, list[BetaResult]]]:
    records = list(records)
    groups = []
    for kind in kinds:
        chosen = [r for r in records if record_kind(r) == kind]
        if chosen:
            groups.append((kind, evaluate_all(chosen, tolerance, workers)))
    return groups


__all__ = [
    "PlotSeries", "SERIES", "plot_series", "series_csv", "series_json", "tables_text",
    "tables_csv", "tables_json", "values_text", "values_json", "values_csv", "table_groups", "fmt",
]
