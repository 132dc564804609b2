"""Dimension-checked quantities, constants and interval arithmetic.

Every magnitude is held in SI base units. Unit parsing and pretty
printing happen at the dataset / CLI boundary, never here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Callable, Literal, Union

from .errors import DimensionMismatch, NegativeError, NonPositiveInput

_BASE_SYMBOLS = ("kg", "m", "s", "A", "K", "mol", "cd")


@dataclass(frozen=True)
class Dimension:
    """Integer exponents of the seven SI base dimensions."""

    mass: int = 0
    length: int = 0
    time: int = 0
    current: int = 0
    temperature: int = 0
    amount: int = 0
    luminosity: int = 0

    def exponents(self) -> tuple[int, ...]:
        return (self.mass, self.length, self.time, self.current,
                self.temperature, self.amount, self.luminosity)

    def __mul__(self, other: Dimension) -> Dimension:
        return Dimension(*(a + b for a, b in zip(self.exponents(), other.exponents())))

    def __truediv__(self, other: Dimension) -> Dimension:
        return Dimension(*(a - b for a, b in zip(self.exponents(), other.exponents())))

    def __pow__(self, power: int) -> Dimension:
        if int(power) != power:
            raise DimensionMismatch(f"non-integer power {power} of a dimension")
        return Dimension(*(a * int(power) for a in self.exponents()))

    @property
    def is_dimensionless(self) -> bool:
        return not any(self.exponents())

    def __str__(self) -> str:
        parts = [sym if e == 1 else f"{sym}^{e}"
                 for sym, e in zip(_BASE_SYMBOLS, self.exponents()) if e]
        return "·".join(parts) if parts else "1"


DIMENSIONLESS = Dimension()
MASS = Dimension(mass=1)
LENGTH = Dimension(length=1)
TIME = Dimension(time=1)
AREA = LENGTH ** 2
FREQUENCY = TIME ** -1
SPEED = LENGTH / TIME
MOMENTUM = MASS * SPEED
ENERGY = MOMENTUM * SPEED
ACTION = ENERGY * TIME
ANGLE = DIMENSIONLESS


@dataclass(frozen=True)
class Quantity:
    """A finite real magnitude (SI) tagged with its dimension."""

    magnitude: float
    dim: Dimension = DIMENSIONLESS

    def __post_init__(self) -> None:
        value = float(self.magnitude)
        if not math.isfinite(value):
            raise ValueError(f"quantity magnitude must be finite, got {self.magnitude!r}")
        object.__setattr__(self, "magnitude", value)

    def _other(self, other: QuantityLike) -> Quantity:
        if isinstance(other, Quantity):
            return other
        if isinstance(other, Real):
            return Quantity(float(other))
        return NotImplemented

    def _same_dim(self, other: Quantity, op: str) -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"cannot {op} [{self.dim}] and [{other.dim}]")

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "add")
        return Quantity(self.magnitude + other.magnitude, self.dim)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        self._same_dim(other, "subtract")
        return Quantity(self.magnitude - other.magnitude, self.dim)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Quantity(self.magnitude * other.magnitude, self.dim * other.dim)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Quantity(self.magnitude / other.magnitude, self.dim / other.dim)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, power: int) -> Quantity:
        return Quantity(self.magnitude ** power, self.dim ** power)

    def __neg__(self) -> Quantity:
        return Quantity(-self.magnitude, self.dim)

    def __abs__(self) -> Quantity:
        return Quantity(abs(self.magnitude), self.dim)

    def sqrt(self) -> Quantity:
        halves = [e / 2 for e in self.dim.exponents()]
        if any(h != int(h) for h in halves):
            raise DimensionMismatch(f"square root of [{self.dim}] is not a dimension")
        return Quantity(math.sqrt(self.magnitude), Dimension(*(int(h) for h in halves)))

    def _cmp(self, other, op: str) -> tuple[float, float]:
        other = self._other(other)
        self._same_dim(other, op)
        return self.magnitude, other.magnitude

    def __lt__(self, other):
        a, b = self._cmp(other, "compare")
        return a < b

    def __le__(self, other):
        a, b = self._cmp(other, "compare")
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp(other, "compare")
        return a > b

    def __ge__(self, other):
        a, b = self._cmp(other, "compare")
        return a >= b

    def __float__(self) -> float:
        if not self.dim.is_dimensionless:
            raise DimensionMismatch(f"only dimensionless quantities convert to float, got [{self.dim}]")
        return self.magnitude

    def in_units(self, unit: Quantity) -> float:
        """Magnitude expressed as a multiple of ``unit``."""
        self._same_dim(unit, "convert")
        return self.magnitude / unit.magnitude

    def __str__(self) -> str:
        if self.dim.is_dimensionless:
            return f"{self.magnitude:.4g}"
        return f"{self.magnitude:.4g} {self.dim}"


QuantityLike = Union[Quantity, float, int]


def coerce(value: QuantityLike, dim: Dimension, name: str = "value") -> Quantity:
    """Accept a Quantity of dimension ``dim`` or a bare number taken as SI."""
    if isinstance(value, Quantity):
        if value.dim != dim:
            raise DimensionMismatch(f"{name} must have dimension [{dim}], got [{value.dim}]")
        return value
    if isinstance(value, Real) and not isinstance(value, bool):
        return Quantity(float(value), dim)
    raise TypeError(f"{name}: expected Quantity or real number, got {type(value).__name__}")


def positive(value: QuantityLike, dim: Dimension, name: str) -> Quantity:
    q = coerce(value, dim, name)
    if not q.magnitude > 0:
        raise NonPositiveInput(f"{name} must be > 0, got {q.magnitude!r}")
    return q


def q_combine(a: Quantity, b: Quantity, op: Literal["mul", "div", "add", "sub"]) -> Quantity:
    ops = {"mul": Quantity.__mul__, "div": Quantity.__truediv__,
           "add": Quantity.__add__, "sub": Quantity.__sub__}
    try:
        return ops[op](a, b)
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` of one dimension; ``lo == hi`` is an exact value."""

    lo: float
    hi: float
    dim: Dimension = DIMENSIONLESS

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"interval lower bound {lo} exceeds upper bound {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def exact(cls, value: QuantityLike, dim: Dimension | None = None) -> Interval:
        q = value if isinstance(value, Quantity) else Quantity(float(value), dim or DIMENSIONLESS)
        return cls(q.magnitude, q.magnitude, q.dim)

    @classmethod
    def from_center(cls, center: float, error: float, dim: Dimension = DIMENSIONLESS) -> Interval:
        if error < 0:
            raise NegativeError(f"uncertainty must be >= 0, got {error}")
        return cls(center - error, center + error, dim)

    @property
    def lower(self) -> Quantity:
        return Quantity(self.lo, self.dim)

    @property
    def upper(self) -> Quantity:
        return Quantity(self.hi, self.dim)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.hi - self.lo)

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: QuantityLike) -> bool:
        q = coerce(value, self.dim)
        return self.lo <= q.magnitude <= self.hi

    def __str__(self) -> str:
        if self.is_degenerate:
            return f"{self.lo:.4g}"
        return f"[{self.lo:.4g}, {self.hi:.4g}]"


def interval_map_monotone(
    x: Interval,
    f: Callable[[Quantity], QuantityLike],
    direction: Literal["increasing", "decreasing"],
) -> Interval:
    """Image of ``x`` under ``f``, evaluated at the endpoints only.

    The caller guarantees that ``f`` is monotone on ``[x.lo, x.hi]`` in the
    declared direction; nothing here checks it.
    """
    if direction not in ("increasing", "decreasing"):
        raise ValueError(f"direction must be 'increasing' or 'decreasing', got {direction!r}")

    def ev(v: float) -> Quantity:
        out = f(Quantity(v, x.dim))
        return out if isinstance(out, Quantity) else Quantity(float(out))

    lo = ev(x.lo)
    hi = lo if x.is_degenerate else ev(x.hi)
    if lo.dim != hi.dim:
        raise DimensionMismatch("mapped endpoints disagree in dimension")
    if direction == "decreasing":
        lo, hi = hi, lo
    return Interval(lo.magnitude, hi.magnitude, lo.dim)


def propagate_relative(central: QuantityLike, rel_err: float, f_rel_sensitivity: float) -> Interval:
    """First-order single-variable propagation of a relative error.

    Returns ``[c(1 - s r), c(1 + s r)]`` with ``s = |f_rel_sensitivity|``;
    for a quantity inversely proportional to the input, ``s = 1``.
    """
    if rel_err < 0:
        raise NegativeError(f"relative error must be >= 0, got {rel_err}")
    c = central if isinstance(central, Quantity) else Quantity(float(central))
    half = abs(c.magnitude) * abs(f_rel_sensitivity) * rel_err
    return Interval(c.magnitude - half, c.magnitude + half, c.dim)


@dataclass(frozen=True)
class Constants:
    """CODATA-2018 values in SI."""

    hbar: Quantity = Quantity(1.054571817e-34, ACTION)
    h: Quantity = Quantity(6.62607015e-34, ACTION)
    c: Quantity = Quantity(299792458.0, SPEED)
    alpha: Quantity = Quantity(7.2973525693e-3)
    a0: Quantity = Quantity(5.29177210903e-11, LENGTH)
    u: Quantity = Quantity(1.66053906660e-27, MASS)
    eV: Quantity = Quantity(1.602176634e-19, ENERGY)


CODATA2018 = Constants()
