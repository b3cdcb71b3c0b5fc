"""Model parameters, quantum numbers and eigenvalue records."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..polycore import as_rational


class ModelError(ValueError):
    """Invalid model parameters or quantum numbers."""


class UnboundStateError(ModelError):
    """Parameters give a non-positive principal denominator (or gamma <= 0)."""


@dataclass(frozen=True)
class ModelParams:
    """Dimension ``n``, Coulomb strength ``gamma`` and the n-1 exponents ``p``.

    The coupling of ``1/x_i**2`` is ``beta_i = p_i (p_i - 1) / 2``; it is
    always derived from ``p`` and never stored.
    """

    n: int
    gamma: Fraction
    p: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ModelError(f"dimension n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "gamma", as_rational(self.gamma))
        p = tuple(as_rational(x) for x in self.p)
        if len(p) != self.n - 1:
            raise ModelError(f"p length must be n-1 = {self.n - 1}, got {len(p)}")
        object.__setattr__(self, "p", p)

    @classmethod
    def make(cls, n: int, gamma=1, p: Sequence | None = None) -> "ModelParams":
        return cls(n, gamma, tuple(p) if p is not None else (0,) * (n - 1))

    @property
    def beta(self) -> tuple:
        return tuple(pi * (pi - 1) / 2 for pi in self.p)

    def is_coulomb(self) -> bool:
        """True when every beta vanishes (each p_i is 0 or 1)."""
        return all(b == 0 for b in self.beta)

    def p_at(self, i: int) -> Fraction:
        """p_i with the 1-based index used throughout the formulas."""
        return self.p[i - 1]

    def to_json(self) -> dict:
        return {"n": self.n, "gamma": str(self.gamma), "p": [str(x) for x in self.p]}


@dataclass(frozen=True)
class Parabolic:
    N1: int
    N2: int
    J: tuple = ()

    system = "parabolic"

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(self.J))
        if min((self.N1, self.N2) + self.J, default=0) < 0:
            raise ModelError(f"quantum numbers must be >= 0: {self}")

    def check(self, n: int):
        if n < 3:
            raise ModelError("parabolic coordinates need n >= 3")
        if len(self.J) != n - 2:
            raise ModelError(f"parabolic J must have n-2 = {n - 2} entries, got {len(self.J)}")

    @property
    def level(self) -> int:
        return self.N1 + self.N2 + 2 * sum(self.J)

    def as_tuple(self) -> tuple:
        return (self.N1, self.N2) + self.J

    def label(self) -> str:
        return f"({self.N1},{self.N2},[{','.join(map(str, self.J))}])"


@dataclass(frozen=True)
class Spherical:
    Nr: int
    J: tuple = ()

    system = "spherical"

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(self.J))
        if min((self.Nr,) + self.J, default=0) < 0:
            raise ModelError(f"quantum numbers must be >= 0: {self}")

    def check(self, n: int):
        if len(self.J) != n - 1:
            raise ModelError(f"spherical J must have n-1 = {n - 1} entries, got {len(self.J)}")

    @property
    def level(self) -> int:
        return self.Nr + 2 * sum(self.J)

    def as_tuple(self) -> tuple:
        return (self.Nr,) + self.J

    def label(self) -> str:
        return f"({self.Nr},[{','.join(map(str, self.J))}])"


QuantumNumbers = Parabolic | Spherical


def quantum_numbers(system: str, values: Sequence[int]) -> QuantumNumbers:
    """Build quantum numbers from a flat tuple (N1, N2, J...) or (Nr, J...)."""
    values = [int(v) for v in values]
    if system == "parabolic":
        if len(values) < 2:
            raise ModelError("parabolic quantum numbers need at least N1, N2")
        return Parabolic(values[0], values[1], tuple(values[2:]))
    if system == "spherical":
        if not values:
            raise ModelError("spherical quantum numbers need at least Nr")
        return Spherical(values[0], tuple(values[1:]))
    raise ModelError(f"unknown coordinate system {system!r}")


@dataclass(frozen=True)
class EigenvalueRecord:
    """Exact eigenvalues of one separated state.

    ``m`` and ``k`` map the chain index l to m_l and k_l: l = 0..n-2 in the
    parabolic family (k_0 = -p_1(p_1-1)), l = 1..n-1 in the spherical one.
    ``lam`` is the X eigenvalue (parabolic only).
    """

    system: str
    E: Fraction
    D: Fraction
    sqrt_minus_2E: Fraction
    m: dict = field(default_factory=dict)
    k: dict = field(default_factory=dict)
    lam: Fraction | None = None

    def to_json(self) -> dict:
        out = {
            "system": self.system,
            "D": str(self.D),
            "E": str(self.E),
            "sqrt_minus_2E": str(self.sqrt_minus_2E),
            "m": {str(l): str(v) for l, v in self.m.items()},
            "k": {str(l): str(v) for l, v in self.k.items()},
        }
        if self.lam is not None:
            out["lambda"] = str(self.lam)
        return out
