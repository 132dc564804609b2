"""Acceptance criteria, one PASS/FAIL line each (shown in the terminal summary)."""

import math
import random
import subprocess
import sys
import time
from pathlib import Path

from conftest import ACCEPTANCE_LINES
from macroscope import dataset, matterwave as mw, ramsey, report, trap
from macroscope.quantities import (
    ACTION,
    AREA,
    CODATA2018 as C,
    DIMENSIONLESS,
    FREQUENCY,
    LENGTH,
    MASS,
    MOMENTUM,
    SPEED,
    TIME,
    Interval,
    Quantity,
    interval_map_monotone,
    propagate_relative,
)
from reference_data import D1_LINES, HYDROGEN_HYPERFINE_HZ

GOLDEN = Path(__file__).parent / "golden"
TOL = 0.10
A0 = C.a0.magnitude


def verdict(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] AC{number} {title}: {detail}")
    assert ok, detail


def _table(index):
    start = time.perf_counter()
    table = dataset.builtin_tables()[index]
    results = dataset.evaluate_all(table, TOL)
    return table, results, time.perf_counter() - start


def _by_label(results, label):
    (res,) = [r for r in results if r.label.startswith(label)]
    return res


def test_ac1_matterwave_table():
    table, results, elapsed = _table(0)
    agree = sum(r.agrees is True for r in results)
    anchors = [
        ("Electron 2013", (5.6e-4, 5.6e-4)),
        ("Neutron 1988 (96", (0.58, 0.62)),
        ("Molecule 2019", (0.44, 0.48)),
    ]
    anchors_ok = all(
        abs(_by_label(results, name).beta.lo / lo - 1) <= TOL
        and abs(_by_label(results, name).beta.hi / hi - 1) <= TOL
        for name, (lo, hi) in anchors)
    worst = max(r.deviation for r in results)
    ok = len(table) == 14 and agree == 14 and anchors_ok and elapsed < 1.0
    verdict(1, "matter-wave table", ok,
            f"{agree}/{len(table)} rows within 10% (worst {worst:.2%}), anchors ok={anchors_ok}, "
            f"{elapsed * 1e3:.1f} ms")


def test_ac2_ramsey_table():
    table, results, elapsed = _table(1)
    agree = sum(r.agrees is True for r in results)
    anchors = [("39K 1950", 0.006), ("23Na 1989", 14), ("133Cs 1993", 70), ("87Rb 2013 [2013Rb]", 370)]
    anchors_ok = all(abs(_by_label(results, n).beta.lo / v - 1) <= TOL for n, v in anchors)
    worst = max(r.deviation for r in results)
    ok = len(table) == 14 and agree == 14 and anchors_ok and elapsed < 1.0
    verdict(2, "Ramsey table", ok,
            f"{agree}/{len(table)} rows within 10% (worst {worst:.2%}), anchors ok={anchors_ok}, "
            f"{elapsed * 1e3:.1f} ms")


def _log_uniform(rng, centre):
    # six decades around the centre value
    return centre * 10 ** rng.uniform(-3, 3)


def test_ac3_probe_window_identity():
    rng = random.Random(20240601)
    worst, n = 0.0, 0
    while n < 1000:
        M = _log_uniform(rng, 1e-24)
        p = _log_uniform(rng, 1e-24)
        if p / M >= 0.1 * C.c.magnitude:
            continue  # keep the particle well below light speed
        theta = _log_uniform(rng, 1e-6)
        d = _log_uniform(rng, 1e-7)
        L = _log_uniform(rng, 1.0)
        window = mw.probe_window(M, p, theta, d, L)
        direct = mw.distinguish_time_mw(L, p / M, p, theta, d)
        worst = max(worst, abs(window.tau.magnitude / direct.magnitude - 1))
        n += 1
    verdict(3, "probe-window identity", worst < 1e-12,
            f"{n} samples over 6 decades, max relative difference {worst:.1e}")


def test_ac4_bridge():
    levels = ramsey.hydrogen_levels(n_max=2)
    nu21 = levels[0].nu_n1
    r21 = ramsey.hydrogenic_matrix_element(2)
    ratios = []
    for k in range(31):
        nu0 = nu21 * 10 ** (-7 + 3 * k / 30)
        general = ramsey.distinguish_time_general(nu21 / 2, levels, nu0)
        simple = ramsey.distinguish_time_ramsey(nu0, nu21, r21)
        ratios.append(float(general / simple))
    ok = all(0.5 <= r <= 2.0 for r in ratios)
    verdict(4, "scattering bridge", ok,
            f"tau_general/tau_simplified in [{min(ratios):.4f}, {max(ratios):.4f}] "
            f"for nu0/nu21 in [1e-7, 1e-4]")


def test_ac5_einstein_inversion():
    rng = random.Random(7)
    worst = 0.0
    for _ in range(100):
        r_s = _log_uniform(rng, 5 * A0)
        nu_s = _log_uniform(rng, 4e14)
        back = ramsey.system_size_from_einstein_A(ramsey.einstein_A(r_s, nu_s), nu_s)
        worst = max(worst, abs(back.magnitude / r_s - 1))
    nu_s, A = D1_LINES["87Rb"]
    rb = ramsey.system_size_from_einstein_A(A, nu_s).magnitude / A0
    ok = worst < 1e-12 and abs(rb / 5.2 - 1) <= 0.03
    verdict(5, "Einstein-A inversion", ok,
            f"100 pairs, max relative error {worst:.1e}; Rb D1 r_s = {rb:.3f} a0 (5.2 expected)")


def test_ac6_neutron_uncertainty():
    centre = mw.beta_mw_from_wavelength(1901e-12, 15.2e-6, 96e-6)
    half = propagate_relative(centre, 70 / 1901, 1).half_width
    mapped = interval_map_monotone(
        Interval(1831e-12, 1971e-12, LENGTH),
        lambda lam: mw.beta_mw_from_wavelength(lam, 15.2e-6, 96e-6), "decreasing")
    ok = abs(half - 0.022) <= 0.003 and abs(mapped.half_width - 0.022) <= 0.003
    verdict(6, "neutron uncertainty", ok,
            f"half-width {half:.4f} (first order), {mapped.half_width:.4f} (interval map)")


def test_ac7_figure_data():
    t1, t2 = dataset.builtin_tables()
    mass = report.plot_series("beta_vs_mass", t1)
    years = report.plot_series("beta_vs_year_ramsey", t2)
    below_one = all(y < 1 for _, y, _ in mass.points)
    x_max, y_max, _ = max(years.points, key=lambda pt: pt[1])
    big = [r for r in t2 if float(ramsey.beta_ramsey(r)) >= 100]
    big_ok = all(r.year >= 2013 and r.T.magnitude >= 0.6 for r in big)
    ok = below_one and x_max == 2013 and abs(y_max / 370 - 1) <= TOL and big_ok
    verdict(7, "figure data", ok,
            f"mass series max {max(y for _, y, _ in mass.points):.3f}; Ramsey max {y_max:.1f} "
            f"in {x_max:.0f}; {len(big)} rows with beta >= 100 all from 2013+ with T >= 0.6 s: {big_ok}")


def _dimension_cases():
    t1, t2 = dataset.builtin_tables()
    levels = ramsey.hydrogen_levels()
    nu = levels[0].nu_n1 / 2
    nu0 = Quantity(HYDROGEN_HYPERFINE_HZ, FREQUENCY)
    p = mw.de_broglie_momentum(1e-12)
    single = mw.SingleSlit(1e-6, 1.0)
    double = mw.DoubleSlit(1e-7, 2e-6, 1e-6, 1.0)
    window = mw.probe_window(1e-25, p, 1e-6, 1e-7, 1.0)
    res_mw = dataset.evaluate_record(t1[0])
    res_r = dataset.evaluate_record(t2[0])
    return [
        ("de_broglie_momentum", mw.de_broglie_momentum(1e-12).dim, MOMENTUM),
        ("effective_divergence theta", mw.effective_divergence(double)[0].dim, DIMENSIONLESS),
        ("effective_divergence L", mw.effective_divergence(double)[1].dim, LENGTH),
        ("record_divergence", mw.record_divergence(t1[0]).dim, DIMENSIONLESS),
        ("coherence_time_mw", mw.coherence_time_mw(1.0, 100.0).dim, TIME),
        ("distinguish_time_mw", mw.distinguish_time_mw(1.0, 100.0, p, 1e-6, 1e-7).dim, TIME),
        ("beta_mw", mw.beta_mw(p, 1e-6, 1e-7).dim, DIMENSIONLESS),
        ("beta_mw_from_wavelength", mw.beta_mw_from_wavelength(1e-12, 1e-6, 1e-7).dim, DIMENSIONLESS),
        ("beta_mw_interval", mw.beta_mw_interval(t1[2]).dim, DIMENSIONLESS),
        ("probe_window omega", window.omega_max.dim, FREQUENCY),
        ("probe_window delta_omega", window.delta_omega_max.dim, FREQUENCY),
        ("probe_window tau", window.tau.dim, TIME),
        ("single slit L", mw.effective_divergence(single)[1].dim, LENGTH),
        ("einstein_A", ramsey.einstein_A(5 * A0, 3.77e14).dim, FREQUENCY),
        ("system_size_from_einstein_A", ramsey.system_size_from_einstein_A(3.6e7, 3.77e14).dim, LENGTH),
        ("distinguish_time_ramsey", ramsey.distinguish_time_ramsey(6.8e9, 3.77e14, 5 * A0).dim, TIME),
        ("ramsey_beta", ramsey.ramsey_beta(6.8e9, 3.77e14, 5 * A0, 1.0).dim, DIMENSIONLESS),
        ("beta_ramsey", ramsey.beta_ramsey(t2[0]).dim, DIMENSIONLESS),
        ("hydrogenic_matrix_element", ramsey.hydrogenic_matrix_element(3).dim, LENGTH),
        ("rydberg_frequency", ramsey.rydberg_frequency().dim, FREQUENCY),
        ("level r^2", levels[0].r_n1_sq.dim, AREA),
        ("elastic_cross_section", ramsey.elastic_cross_section(1, nu, levels, nu0).dim, AREA),
        ("cross_section_distinction", ramsey.cross_section_distinction(nu, levels, nu0).dim, AREA),
        ("detuning_absorption", ramsey.detuning_absorption(nu, 1e-15, levels).dim, AREA * TIME),
        ("distinguish_time_general", ramsey.distinguish_time_general(nu, levels, nu0).dim, TIME),
        ("beta_trap", trap.beta_trap(C.eV, 1e-6).dim, DIMENSIONLESS),
        ("result beta (mw)", res_mw.beta.dim, DIMENSIONLESS),
        ("result beta (ramsey)", res_r.beta.dim, DIMENSIONLESS),
        ("result tau (ramsey)", res_r.tau.dim, TIME),
        ("result T (ramsey)", res_r.T.dim, TIME),
        ("constant hbar", C.hbar.dim, ACTION),
        ("constant c", C.c.dim, SPEED),
        ("constant u", C.u.dim, MASS),
    ]


def test_ac8_dimensions():
    cases = _dimension_cases()
    bad = [f"{name}: [{got}] != [{want}]" for name, got, want in cases if got != want]
    verdict(8, "dimensional soundness", not bad,
            f"{len(cases)} operations checked, {len(bad)} violations" + (f": {bad}" if bad else ""))


def _cli(tmp_path, *argv):
    proc = subprocess.run([sys.executable, "-m", "macroscope", *argv], cwd=tmp_path,
                          capture_output=True, check=False)
    return proc.returncode, proc.stdout


def test_ac9_golden_csv(tmp_path):
    matches = []
    for attempt in range(2):
        rec = tmp_path / f"builtin{attempt}.rec"
        code, _ = _cli(tmp_path, "export-builtin", "-o", str(rec))
        assert code == 0
        for which in ("1", "2"):
            code, out = _cli(tmp_path, "tables", "--which", which, "--input", str(rec), "--format", "csv")
            golden = (GOLDEN / f"table{which}.csv").read_bytes()
            matches.append(code == 0 and out == golden)
    verdict(9, "export/parse/evaluate golden CSV", all(matches),
            f"{sum(matches)}/{len(matches)} byte-identical comparisons (2 runs x 2 tables)")
