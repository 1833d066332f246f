"""Barrier geometry, unit constants, and the k <-> E mapping.

The potential is V(r) = 0 for 0 < r < a, V0 for a < r < b, 0 for r > b.
Energies and wave numbers are linked by k^2 = (2m/hbar^2) E, which makes the
energy plane a two-sheeted Riemann surface: the first sheet maps to Im k >= 0
and the second (where resonance poles live) to Im k < 0.  Because E alone
does not determine the sheet, complex energies carry an explicit sheet tag.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

from .errors import ConfigError

_SHEETS = ("first", "second")


@dataclass(frozen=True)
class BarrierSpec:
    """Square-barrier geometry plus unit constants.

    Attributes
    ----------
    v0 : float
        Barrier height (>= 0; zero gives the free particle).
    a, b : float
        Inner and outer barrier radii, 0 < a < b.
    hbar, mass : float
        Unit constants; the defaults hbar = 1, mass = 1/2 make
        2m/hbar^2 = 1 so that k = sqrt(E).
    """

    v0: float
    a: float
    b: float
    hbar: float = 1.0
    mass: float = 0.5

    def __post_init__(self):
        for name in ("v0", "a", "b", "hbar", "mass"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ConfigError(f"{name} must be finite, got {value!r}")
        if self.v0 < 0:
            raise ConfigError(f"barrier height v0 must be >= 0, got {self.v0}")
        if not 0 < self.a < self.b:
            raise ConfigError(f"radii must satisfy 0 < a < b, got a={self.a}, b={self.b}")
        if self.hbar <= 0 or self.mass <= 0:
            raise ConfigError("hbar and mass must be positive")

    @property
    def two_m_over_hbar_sq(self) -> float:
        return 2.0 * self.mass / self.hbar**2

    @classmethod
    def from_dict(cls, data: dict) -> "BarrierSpec":
        if not isinstance(data, dict):
            raise ConfigError(f"barrier config must be a JSON object, got {type(data).__name__}")
        unknown = set(data) - {"v0", "a", "b", "hbar", "mass"}
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        missing = {"v0", "a", "b"} - set(data)
        if missing:
            raise ConfigError(f"missing config fields: {sorted(missing)}")
        return cls(**data)

    @classmethod
    def from_json_file(cls, path) -> "BarrierSpec":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {"v0": self.v0, "a": self.a, "b": self.b, "hbar": self.hbar, "mass": self.mass}


def reference_barrier() -> BarrierSpec:
    """Desk-scale test barrier: V0 = 8, a = 1, b = 2 in hbar = 1, m = 1/2 units."""
    return BarrierSpec(v0=8.0, a=1.0, b=2.0)


@dataclass(frozen=True)
class ComplexEnergy:
    """Energy point with its Riemann-sheet tag.

    sheet = "first" corresponds to Im k >= 0, "second" to Im k < 0.
    """

    e: complex
    sheet: str = "first"

    def __post_init__(self):
        if self.sheet not in _SHEETS:
            raise ValueError(f"sheet must be one of {_SHEETS}, got {self.sheet!r}")
        object.__setattr__(self, "e", complex(self.e))

    @property
    def e_r(self) -> float:
        return self.e.real

    @property
    def gamma(self) -> float:
        """Width Gamma = -2 Im(E); positive for decaying poles."""
        return -2.0 * self.e.imag


def k_from_energy(energy: ComplexEnergy, spec: BarrierSpec) -> complex:
    """Wave number k = sqrt(2mE/hbar^2) on the requested sheet.

    First sheet: the root in the closed upper half-plane.  Second sheet: the
    root with Im k < 0 (for real E >= 0 the limit from below the cut, i.e.
    the positive real root).
    """
    k = cmath.sqrt(spec.two_m_over_hbar_sq * energy.e)
    if energy.sheet == "first":
        return k if k.imag >= 0 else -k
    if k.imag < 0:
        return k
    if k.imag == 0:
        return k  # on the cut; fourth-quadrant limit
    return -k


def energy_from_k(k: complex, spec: BarrierSpec) -> ComplexEnergy:
    """E = hbar^2 k^2 / 2m, tagged second sheet iff Im k < 0."""
    k = complex(k)
    e = k * k / spec.two_m_over_hbar_sq
    return ComplexEnergy(e=e, sheet="second" if k.imag < 0 else "first")


def inner_Q(k: complex, spec: BarrierSpec) -> complex:
    """Barrier-region wave number Q = sqrt(k^2 - 2mV0/hbar^2), principal branch.

    Every downstream quantity is invariant under Q -> -Q (the two middle
    amplitudes swap), so the branch choice is a pure convention.
    """
    return cmath.sqrt(complex(k) ** 2 - spec.two_m_over_hbar_sq * spec.v0)
