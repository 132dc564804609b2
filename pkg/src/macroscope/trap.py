"""Macroscopicity of a particle superposed across two potential traps."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .quantities import CODATA2018, ENERGY, LENGTH, Quantity, QuantityLike, positive

__all__ = ["TrapRecord", "beta_trap"]


@dataclass(frozen=True)
class TrapRecord:
    label: str
    E: Quantity
    D_sep: Quantity
    year: int | None = None
    citation: str = ""
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "E", positive(self.E, ENERGY, "E"))
        object.__setattr__(self, "D_sep", positive(self.D_sep, LENGTH, "D"))


def beta_trap(E: QuantityLike, D_sep: QuantityLike) -> Quantity:
    """beta = E D / (4 pi hbar c) for well energy E and trap separation D."""
    E = positive(E, ENERGY, "E")
    D_sep = positive(D_sep, LENGTH, "D")
    return E * D_sep / (4 * math.pi * CODATA2018.hbar * CODATA2018.c)
