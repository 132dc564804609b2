"""Macroscopicity measure beta = T / tau for quantum-superposition experiments."""

from .dataset import BetaResult, builtin_tables, evaluate_all, parse_records, serialize_records
from .errors import MacroscopeError
from .matterwave import beta_mw, beta_mw_from_wavelength, beta_mw_interval, probe_window
from .quantities import CODATA2018, Dimension, Interval, Quantity
from .ramsey import beta_ramsey, distinguish_time_general, distinguish_time_ramsey, ramsey_beta
from .trap import beta_trap

__version__ = "0.1.0"

__all__ = [
    "BetaResult", "CODATA2018", "Dimension", "Interval", "MacroscopeError", "Quantity",
    "beta_mw", "beta_mw_from_wavelength", "beta_mw_interval", "beta_ramsey", "beta_trap",
    "builtin_tables", "distinguish_time_general", "distinguish_time_ramsey", "evaluate_all",
    "parse_records", "probe_window", "ramsey_beta", "serialize_records",
]
