"""Macroscopicity of matter-wave (slit) interferometers.

A particle of mass M and momentum p flies a distance L to a slit plate.
The observed coherence time is the flight time T = L/v, and the time
needed to repeatably tell the two paths apart is

    tau = 8 hbar L / (v p theta d),

so that beta = T / tau = p theta d / (8 hbar), independent of L and M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DegenerateGeometry, NonPositiveInput, UnphysicalInput, ValidationError
from .quantities import (
    ANGLE,
    CODATA2018,
    DIMENSIONLESS,
    LENGTH,
    MASS,
    MOMENTUM,
    SPEED,
    Interval,
    Quantity,
    QuantityLike,
    coerce,
    interval_map_monotone,
    positive,
)

__all__ = [
    "SingleSlit", "DoubleSlit", "MultiSlit", "SlitConfig", "MatterWaveRecord",
    "ProbeWindow", "de_broglie_momentum", "effective_divergence", "coherence_time_mw",
    "distinguish_time_mw", "beta_mw", "beta_mw_from_wavelength", "beta_mw_interval",
    "probe_window", "record_divergence",
]

_C = CODATA2018


def _lengths(obj, *names: str) -> None:
    for name in names:
        object.__setattr__(obj, name, positive(getattr(obj, name), LENGTH, name))


@dataclass(frozen=True)
class SingleSlit:
    d: Quantity
    L: Quantity

    def __post_init__(self):
        _lengths(self, "d", "L")


@dataclass(frozen=True)
class DoubleSlit:
    """Two slits (width d, separation D) behind a collimator of width d_prime at distance l."""

    d: Quantity
    D: Quantity
    d_prime: Quantity
    l: Quantity

    def __post_init__(self):
        _lengths(self, "d", "D", "d_prime", "l")
        if self.D <= self.d_prime:
            raise DegenerateGeometry(
                f"slit separation D={self.D.magnitude!r} m must exceed collimator width "
                f"d'={self.d_prime.magnitude!r} m")


@dataclass(frozen=True)
class MultiSlit:
    N: int
    d: Quantity
    D: Quantity
    L: Quantity

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 3:
            raise ValidationError(f"multi-slit needs N >= 3 slits, got {self.N}", field="n_slits")
        object.__setattr__(self, "N", int(self.N))
        _lengths(self, "d", "D", "L")
        if self.D <= self.d:
            raise DegenerateGeometry("slit period D must exceed slit width d")


SlitConfig = Union[SingleSlit, DoubleSlit, MultiSlit]


@dataclass(frozen=True)
class MatterWaveRecord:
    label: str
    mass: Quantity
    wavelength: Interval
    d: Quantity
    slits: SlitConfig | None = None
    theta_override: Quantity | None = None
    published_beta: Interval | None = None
    wavelength_nominal: Quantity | None = None
    year: int | None = None
    citation: str = ""
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "mass", positive(self.mass, MASS, "mass"))
        object.__setattr__(self, "d", positive(self.d, LENGTH, "d"))
        if self.wavelength.dim != LENGTH:
            raise ValidationError("wavelength must be a length", field="lambda")
        if not self.wavelength.lo > 0:
            raise ValidationError(f"wavelength must be > 0, got {self.wavelength.lo!r} m", field="lambda")
        if self.theta_override is not None:
            theta = coerce(self.theta_override, ANGLE, "theta")
            if not theta.magnitude > 0:
                raise ValidationError("theta must be > 0", field="theta")
            object.__setattr__(self, "theta_override", theta)
        elif self.slits is None:
            raise ValidationError("need either theta or a slit geometry", field="theta")
        if self.slits is not None and self.slits.d != self.d:
            raise ValidationError("slit width d disagrees with slit geometry", field="d")
        if self.wavelength_nominal is not None:
            object.__setattr__(self, "wavelength_nominal",
                               positive(self.wavelength_nominal, LENGTH, "lambda_nominal"))
        if self.published_beta is not None and self.published_beta.dim != DIMENSIONLESS:
            raise ValidationError("published beta must be dimensionless", field="published_beta")

    @property
    def nominal_wavelength(self) -> Quantity:
        if self.wavelength_nominal is not None:
            return self.wavelength_nominal
        return Quantity(self.wavelength.midpoint, LENGTH)


@dataclass(frozen=True)
class ProbeWindow:
    """Largest probe-photon angular frequency and bandwidth, and the time they imply."""

    omega_max: Quantity
    delta_omega_max: Quantity
    tau: Quantity

    def __post_init__(self):
        if self.delta_omega_max > self.omega_max:
            raise UnphysicalInput("probe bandwidth exceeds probe frequency (v*theta > c)")


def de_broglie_momentum(wavelength: QuantityLike) -> Quantity:
    """p = 2 pi hbar / lambda."""
    lam = positive(wavelength, LENGTH, "lambda")
    return 2 * math.pi * _C.hbar / lam


def effective_divergence(slits: SlitConfig) -> tuple[Quantity, Quantity]:
    """Effective path angle theta and source-to-plate distance L for a slit geometry."""
    if isinstance(slits, SingleSlit):
        return slits.d / slits.L, slits.L
    if isinstance(slits, DoubleSlit):
        spread = slits.D - slits.d_prime
        if spread.magnitude <= 0:
            raise DegenerateGeometry("D <= d' gives zero divergence")
        theta = spread / slits.l
        return theta, slits.D / theta
    if isinstance(slits, MultiSlit):
        return slits.D / slits.L, slits.L
    raise TypeError(f"not a slit configuration: {slits!r}")


def record_divergence(record: MatterWaveRecord) -> Quantity:
    if record.theta_override is not None:
        return record.theta_override
    return effective_divergence(record.slits)[0]


def coherence_time_mw(L: QuantityLike, v: QuantityLike) -> Quantity:
    """Flight time T = L / v."""
    return positive(L, LENGTH, "L") / positive(v, SPEED, "v")


def distinguish_time_mw(L: QuantityLike, v: QuantityLike, p: QuantityLike,
                        theta: QuantityLike, d: QuantityLike) -> Quantity:
    L = positive(L, LENGTH, "L")
    v = positive(v, SPEED, "v")
    p = positive(p, MOMENTUM, "p")
    theta = positive(theta, ANGLE, "theta")
    d = positive(d, LENGTH, "d")
    return 8 * _C.hbar * L / (v * p * theta * d)


def beta_mw(p: QuantityLike, theta: QuantityLike, d: QuantityLike) -> Quantity:
    """beta = p theta d / (8 hbar)."""
    p = positive(p, MOMENTUM, "p")
    theta = positive(theta, ANGLE, "theta")
    d = positive(d, LENGTH, "d")
    return p * theta * d / (8 * _C.hbar)


def beta_mw_from_wavelength(wavelength: QuantityLike, theta: QuantityLike, d: QuantityLike) -> Quantity:
    """Same as :func:`beta_mw` with p from the de Broglie relation (= pi theta d / 4 lambda)."""
    return beta_mw(de_broglie_momentum(wavelength), theta, d)


def beta_mw_interval(record: MatterWaveRecord) -> Interval:
    theta = record_divergence(record)
    return interval_map_monotone(
        record.wavelength,
        lambda lam: beta_mw_from_wavelength(lam, theta, record.d),
        "decreasing",
    )


def probe_window(M: QuantityLike, p: QuantityLike, theta: QuantityLike, d: QuantityLike,
                 L: QuantityLike, *, D: QuantityLike | None = None, exact: bool = False) -> ProbeWindow:
    """Probe-photon window for distinguishing the two paths by backscattering.

    The photon recoil 2 hbar omega / c must stay below the slit-induced
    momentum spread p d / (2L); the Doppler resolution (Mc/2)(dw/w) must
    resolve the path momentum difference p theta / 2. Emission plus
    detection costs twice the minimum interaction time 1/dw.

    With ``exact=True`` the spread uses sqrt(L^2 + D^2/4) in place of L,
    which needs the slit separation ``D``.
    """
    M = positive(M, MASS, "M")
    p = positive(p, MOMENTUM, "p")
    theta = positive(theta, ANGLE, "theta")
    d = positive(d, LENGTH, "d")
    L = positive(L, LENGTH, "L")
    if exact:
        if D is None:
            raise NonPositiveInput("exact probe window needs the slit separation D")
        D = positive(D, LENGTH, "D")
        L = (L ** 2 + D ** 2 / 4).sqrt()
    omega_max = _C.c * p * d / (4 * _C.hbar * L)
    delta_omega_max = omega_max * p * theta / (M * _C.c)
    tau = 2 / delta_omega_max
    return ProbeWindow(omega_max, delta_omega_max, tau)
