"""Macroscopicity of Ramsey-like (hyperfine superposition) interferometers.

Simplified route: the distinguishing time of two hyperfine states split by
nu0 in an atom of optical frequency nu_s and size r_s is

    tau = 9 / (8 pi^3 alpha nu0) * (c / (r_s nu_s))^2

and beta = T / tau. The general route evaluates the hyperfine-dependent
elastic photon cross-section of a hydrogenic ground state, the resulting
cross-section difference, and the distinguishing time implied by balancing
it against detuned absorption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    EmptyLevelSet,
    InvalidQuantumNumber,
    NearResonance,
    ValidationError,
    ZeroDistinction,
)
from .quantities import (
    AREA,
    CODATA2018,
    DIMENSIONLESS,
    FREQUENCY,
    LENGTH,
    TIME,
    Interval,
    Quantity,
    QuantityLike,
    coerce,
    positive,
)

__all__ = [
    "RamseyRecord", "HydrogenicLevel", "RESONANCE_GUARD",
    "einstein_A", "system_size_from_einstein_A", "distinguish_time_ramsey",
    "beta_ramsey", "ramsey_beta", "hydrogenic_matrix_element", "rydberg_frequency",
    "hydrogen_levels", "elastic_cross_section", "cross_section_distinction",
    "detuning_absorption", "distinguish_time_general",
]

_C = CODATA2018
_ALPHA = _C.alpha.magnitude
_LIGHT = _C.c.magnitude
_PI3 = math.pi ** 3

RESONANCE_GUARD = 1e-6

# Output dimensions of the level sums, evaluated symbolically by the engine.
_HZ = Quantity(1.0, FREQUENCY)
_R2 = Quantity(1.0, AREA)
_SIGMA_DIM = (_C.alpha ** 2 / _C.c ** 2 * _HZ ** 4 * (_R2 / _HZ) ** 2).dim
_ABSORPTION_DIM = (_HZ * _R2 / _HZ ** 2).dim
_TAU_GENERAL_DIM = (_C.alpha * _HZ / Quantity(1.0, _SIGMA_DIM) * _R2 / _HZ ** 2).dim


@dataclass(frozen=True)
class RamseyRecord:
    atom: str
    nu0: Quantity
    nu_s: Quantity
    T: Quantity
    r_s: Quantity | None = None
    einstein_A: Quantity | None = None
    published_beta: Interval | None = None
    year: int | None = None
    citation: str = ""
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "nu0", positive(self.nu0, FREQUENCY, "nu0"))
        object.__setattr__(self, "nu_s", positive(self.nu_s, FREQUENCY, "nu_s"))
        object.__setattr__(self, "T", positive(self.T, TIME, "T"))
        if self.r_s is not None:
            object.__setattr__(self, "r_s", positive(self.r_s, LENGTH, "r_s"))
        if self.einstein_A is not None:
            object.__setattr__(self, "einstein_A", positive(self.einstein_A, FREQUENCY, "einstein_a"))
        if self.r_s is None and self.einstein_A is None:
            raise ValidationError("need r_s or einstein_a", field="r_s")
        if not self.nu0 < self.nu_s:
            raise ValidationError("hyperfine splitting must lie below the optical frequency", field="nu0")
        if self.published_beta is not None and self.published_beta.dim != DIMENSIONLESS:
            raise ValidationError("published beta must be dimensionless", field="published_beta")

    @property
    def system_size(self) -> Quantity:
        # an explicit r_s wins over the one implied by A
        if self.r_s is not None:
            return self.r_s
        return system_size_from_einstein_A(self.einstein_A, self.nu_s)


@dataclass(frozen=True)
class HydrogenicLevel:
    """An np intermediate level: transition frequency to 1s and |<np|r|1s>|^2."""

    n: int
    nu_n1: Quantity
    r_n1_sq: Quantity

    def __post_init__(self):
        if self.n < 2:
            raise InvalidQuantumNumber(f"n must be >= 2, got {self.n}")
        object.__setattr__(self, "nu_n1", positive(self.nu_n1, FREQUENCY, "nu_n1"))
        object.__setattr__(self, "r_n1_sq", positive(self.r_n1_sq, AREA, "r_n1_sq"))


def einstein_A(r_s: QuantityLike, nu_s: QuantityLike) -> Quantity:
    """Spontaneous rate A = 32 alpha pi^3 nu_s^3 r_s^2 / (9 c^2)."""
    r_s = positive(r_s, LENGTH, "r_s")
    nu_s = positive(nu_s, FREQUENCY, "nu_s")
    return 32 * _C.alpha * _PI3 * nu_s ** 3 * r_s ** 2 / (9 * _C.c ** 2)


def system_size_from_einstein_A(A: QuantityLike, nu_s: QuantityLike) -> Quantity:
    """Invert :func:`einstein_A` for the system size r_s."""
    A = positive(A, FREQUENCY, "A")
    nu_s = positive(nu_s, FREQUENCY, "nu_s")
    return (9 * _C.c ** 2 * A / (32 * _C.alpha * _PI3 * nu_s ** 3)).sqrt()


def distinguish_time_ramsey(nu0: QuantityLike, nu_s: QuantityLike, r_s: QuantityLike) -> Quantity:
    nu0 = positive(nu0, FREQUENCY, "nu0")
    nu_s = positive(nu_s, FREQUENCY, "nu_s")
    r_s = positive(r_s, LENGTH, "r_s")
    return 9 / (8 * _PI3 * _C.alpha * nu0) * (_C.c / (r_s * nu_s)) ** 2


def ramsey_beta(nu0: QuantityLike, nu_s: QuantityLike, r_s: QuantityLike, T: QuantityLike) -> Quantity:
    """beta = 8 pi^3 alpha (r_s nu_s)^2 nu0 T / (9 c^2)."""
    nu0 = positive(nu0, FREQUENCY, "nu0")
    nu_s = positive(nu_s, FREQUENCY, "nu_s")
    r_s = positive(r_s, LENGTH, "r_s")
    T = positive(T, TIME, "T")
    return 8 * _PI3 * _C.alpha * (r_s * nu_s) ** 2 * nu0 * T / (9 * _C.c ** 2)


def beta_ramsey(record: RamseyRecord) -> Quantity:
    return ramsey_beta(record.nu0, record.nu_s, record.system_size, record.T)


def hydrogenic_matrix_element(n: int) -> Quantity:
    """|<np|r|1s>| for hydrogen, from the closed-form radial integral."""
    if int(n) != n or n < 2:
        raise InvalidQuantumNumber(f"n must be an integer >= 2, got {n}")
    n = int(n)
    # logs keep the (n-1)^(n-5/2) / (n+1)^(n+5/2) ratio finite for large n
    log_r = (4 * math.log(2) + 3.5 * math.log(n)
             + (n - 2.5) * math.log(n - 1) - (n + 2.5) * math.log(n + 1))
    return math.exp(log_r) * _C.a0


def rydberg_frequency() -> Quantity:
    """Infinite-mass Rydberg frequency, alpha c / (4 pi a0)."""
    return _C.alpha * _C.c / (4 * math.pi * _C.a0)


def hydrogen_levels(n_max: int = 10, n_min: int = 2) -> list[HydrogenicLevel]:
    """np levels n_min..n_max of hydrogen (``n_max=2`` keeps only the dominant 2p)."""
    if n_min < 2 or n_max < n_min:
        raise InvalidQuantumNumber(f"need 2 <= n_min <= n_max, got {n_min}..{n_max}")
    ry = rydberg_frequency()
    return [
        HydrogenicLevel(n, ry * (1 - 1 / n ** 2), hydrogenic_matrix_element(n) ** 2)
        for n in range(n_min, n_max + 1)
    ]


def _raw_levels(levels: Sequence[HydrogenicLevel]) -> list[tuple[float, float]]:
    if not levels:
        raise EmptyLevelSet("at least one intermediate level is required")
    return [(lv.nu_n1.magnitude, lv.r_n1_sq.magnitude) for lv in levels]


def _check_denominator(nu_n1: float, shifted: float, nu: float, guard: float) -> None:
    if abs(shifted * shifted - nu * nu) <= guard * nu_n1 * nu_n1:
        raise NearResonance(
            f"photon frequency {nu:.6g} Hz within guard band of resonance at {shifted:.6g} Hz")


def _amplitude_term(x: float, nu: float) -> float:
    return -2.0 * x / (x * x - nu * nu)


def _prefactor(nu: float) -> float:
    return 16 * _PI3 * _ALPHA ** 2 / (3 * _LIGHT ** 2) * nu ** 4


def elastic_cross_section(F: int, nu: QuantityLike, levels: Sequence[HydrogenicLevel],
                          nu0: QuantityLike, *, guard: float = RESONANCE_GUARD) -> Quantity:
    """Elastic photon cross-section of the hyperfine state F (0 or 1), off resonance."""
    if F not in (0, 1):
        raise ValueError(f"F must be 0 or 1, got {F!r}")
    nu = positive(nu, FREQUENCY, "nu").magnitude
    nu0 = coerce(nu0, FREQUENCY, "nu0").magnitude
    if nu0 < 0:
        raise ValueError("nu0 must be >= 0")
    total = 0.0
    for nu_n1, r_sq in _raw_levels(levels):
        x = nu_n1 - F * nu0
        _check_denominator(nu_n1, x, nu, guard)
        total += r_sq / 3 * _amplitude_term(x, nu)
    return Quantity(_prefactor(nu) * total * total, _SIGMA_DIM)


def cross_section_distinction(nu: QuantityLike, levels: Sequence[HydrogenicLevel],
                              nu0: QuantityLike, *, guard: float = RESONANCE_GUARD) -> Quantity:
    """|sigma(1, nu) - sigma(0, nu)|.

    Evaluated as |S1 - S0| |S1 + S0| with the per-level amplitude difference
    in closed form, so tiny splittings do not cancel catastrophically.
    """
    nu = positive(nu, FREQUENCY, "nu").magnitude
    nu0 = coerce(nu0, FREQUENCY, "nu0").magnitude
    if nu0 < 0:
        raise ValueError("nu0 must be >= 0")
    s_sum = 0.0
    s_diff = 0.0
    for nu_n1, r_sq in _raw_levels(levels):
        x0, x1 = nu_n1, nu_n1 - nu0
        _check_denominator(nu_n1, x0, nu, guard)
        _check_denominator(nu_n1, x1, nu, guard)
        g0 = _amplitude_term(x0, nu)
        g1 = _amplitude_term(x1, nu)
        dg = -2.0 * nu0 * (x0 * x1 + nu * nu) / ((x1 * x1 - nu * nu) * (x0 * x0 - nu * nu))
        s_sum += r_sq / 3 * (g0 + g1)
        s_diff += r_sq / 3 * dg
    return Quantity(_prefactor(nu) * abs(s_diff * s_sum), _SIGMA_DIM)


def _detuning(nu_n1: float, nu: float, guard: float) -> float:
    delta = nu_n1 - nu
    if abs(delta) <= guard * nu_n1:
        raise NearResonance(f"photon frequency {nu:.6g} Hz within guard band of {nu_n1:.6g} Hz")
    return delta


def detuning_absorption(nu: QuantityLike, tau: QuantityLike, levels: Sequence[HydrogenicLevel],
                        *, guard: float = RESONANCE_GUARD) -> Quantity:
    """Detuned-absorption expression, up to an unknown constant factor.

    Only ratios of the returned value (units m^2 s) are meaningful.
    """
    nu = positive(nu, FREQUENCY, "nu").magnitude
    tau = coerce(tau, TIME, "tau").magnitude
    if tau < 0:
        raise ValueError("tau must be >= 0")
    total = 0.0
    for nu_n1, r_sq in _raw_levels(levels):
        delta = _detuning(nu_n1, nu, guard)
        total += r_sq / delta ** 2 * math.sin(delta * tau / 2) ** 2
    return Quantity(nu * total, _ABSORPTION_DIM)


def distinguish_time_general(nu: QuantityLike, levels: Sequence[HydrogenicLevel],
                             nu0: QuantityLike, *, guard: float = RESONANCE_GUARD) -> Quantity:
    """tau = (2 alpha nu / (3 dsigma)) * sum_n |r_n1|^2 / (nu_n1 - nu)^2."""
    dsigma = cross_section_distinction(nu, levels, nu0, guard=guard).magnitude
    if dsigma == 0:
        raise ZeroDistinction("cross-sections of F=0 and F=1 coincide; no finite distinguishing time")
    nu = positive(nu, FREQUENCY, "nu").magnitude
    total = sum(r_sq / _detuning(nu_n1, nu, guard) ** 2 for nu_n1, r_sq in _raw_levels(levels))
    return Quantity(2 * _ALPHA * nu / (3 * dsigma) * total, _TAU_GENERAL_DIM)
