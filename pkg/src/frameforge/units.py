"""Unit systems and the conversions the template parser needs.

A model carries exactly one length unit and one force unit; every
derived quantity (stress, area, inertia, force per length) is expressed
in powers of those two.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FrameError

# SI factors: metres and newtons per unit.
LENGTH_FACTORS = {
    "meter": 1.0,
    "millimeter": 1e-3,
    "foot": 0.3048,
    "inch": 0.0254,
}
FORCE_FACTORS = {
    "kilonewton": 1e3,
    "newton": 1.0,
    "kip": 4448.2216152605,
    "pound": 4.4482216152605,
}

LENGTH_SYMBOLS = {"m": "meter", "mm": "millimeter", "ft": "foot", "in": "inch"}
FORCE_SYMBOLS = {"kN": "kilonewton", "N": "newton", "kip": "kip", "lb": "pound"}
LENGTH_TO_SYMBOL = {v: k for k, v in LENGTH_SYMBOLS.items()}
FORCE_TO_SYMBOL = {v: k for k, v in FORCE_SYMBOLS.items()}

# Named stress units, SI factors.
_PRESSURE_ALIASES = {
    "Pa": 1.0,
    "kPa": 1e3,
    "MPa": 1e6,
    "GPa": 1e9,
    "psi": FORCE_FACTORS["pound"] / LENGTH_FACTORS["inch"] ** 2,
    "ksi": FORCE_FACTORS["kip"] / LENGTH_FACTORS["inch"] ** 2,
}


@dataclass(frozen=True)
class UnitSystem:
    length_unit: str = "meter"
    force_unit: str = "kilonewton"

    def __post_init__(self):
        if self.length_unit not in LENGTH_FACTORS:
            raise FrameError("UNSUPPORTED_UNIT", f"unknown length unit {self.length_unit!r}")
        if self.force_unit not in FORCE_FACTORS:
            raise FrameError("UNSUPPORTED_UNIT", f"unknown force unit {self.force_unit!r}")

    @property
    def length_symbol(self) -> str:
        return LENGTH_TO_SYMBOL[self.length_unit]

    @property
    def force_symbol(self) -> str:
        return FORCE_TO_SYMBOL[self.force_unit]

    def si_factor(self, force_power: int, length_power: int) -> float:
        """SI value of one unit of ``force**f * length**l`` in this system."""
        f = FORCE_FACTORS[self.force_unit] ** force_power
        L = LENGTH_FACTORS[self.length_unit]
        # Same operation order as parse_unit, so equal units give bit-equal factors.
        return f / L ** -length_power if length_power < 0 else f * L ** length_power

    @classmethod
    def from_symbols(cls, length: str, force: str) -> "UnitSystem":
        try:
            return cls(LENGTH_SYMBOLS[length], FORCE_SYMBOLS[force])
        except KeyError as exc:
            raise FrameError("UNSUPPORTED_UNIT", f"unknown unit symbol {exc.args[0]!r}") from None


def parse_unit(token: str) -> tuple[float, int, int]:
    """Decode a unit token into ``(si_factor, force_power, length_power)``.

    Accepts ``m``, ``m2``/``m^2``, ``m4``, ``kN``, ``kN/m``, ``kN/m2``,
    ``N/mm^2`` and the named stresses Pa, kPa, MPa, GPa, psi, ksi.
    """
    if token in _PRESSURE_ALIASES:
        return _PRESSURE_ALIASES[token], 1, -2
    m = re.fullmatch(r"(kN|N|kip|lb)(?:/(mm|m|ft|in)(?:\^?([0-9]))?)?", token)
    if m:
        force, den, p = m.groups()
        f = FORCE_FACTORS[FORCE_SYMBOLS[force]]
        if den is None:
            return f, 1, 0
        power = int(p) if p else 1
        return f / LENGTH_FACTORS[LENGTH_SYMBOLS[den]] ** power, 1, -power
    m = re.fullmatch(r"(mm|m|ft|in)(?:\^?([0-9]))?", token)
    if m:
        unit, p = m.groups()
        power = int(p) if p else 1
        return LENGTH_FACTORS[LENGTH_SYMBOLS[unit]] ** power, 0, power
    raise FrameError("UNSUPPORTED_UNIT", f"unsupported unit {token!r}")


def convert(value: float, token: str, units: UnitSystem, dims: tuple[int, int]) -> float:
    """Convert ``value`` given in ``token`` into ``units``.

    ``dims`` is the expected ``(force_power, length_power)``; a mismatch is
    reported as UNSUPPORTED_UNIT.  Values already in the target unit are
    returned untouched so formatting round-trips stay exact.
    """
    factor, fp, lp = parse_unit(token)
    if (fp, lp) != dims:
        raise FrameError("UNSUPPORTED_UNIT", f"unit {token!r} has the wrong dimension here")
    target = units.si_factor(*dims)
    if factor == target:
        return value
    return value * factor / target


def unit_token(units: UnitSystem, dims: tuple[int, int]) -> str:
    """Canonical token for a quantity of dimension ``dims`` in ``units``."""
    fp, lp = dims
    L, F = units.length_symbol, units.force_symbol
    if fp == 0:
        return L if lp == 1 else f"{L}^{lp}"
    if lp == 0:
        return F
    return f"{F}/{L}" if lp == -1 else f"{F}/{L}^{-lp}"
