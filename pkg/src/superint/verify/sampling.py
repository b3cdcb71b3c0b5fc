"""Seeded evaluation points and polynomial test jets."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..model.coords import coord_map
from ..taylor import ExactAngle, Jet, monomials
from .rng import SplitMix64

# distance kept from the singular sets: |x_i| >= 1/4, angles in [1/8, pi/2 - 1/8]
COORD_LO = 0.25
COORD_HI = 2.0
ANGLE_MARGIN = 0.125


def float_points(system: str, n: int, count: int, rng: SplitMix64) -> list[list[float]]:
    """``count`` nonsingular points; Cartesian points lie in the positive orthant."""
    out = []
    for i in range(count):
        r = rng.split(f"point{i}")
        if system == "cartesian":
            out.append([r.uniform(COORD_LO, COORD_HI) for _ in range(n)])
        elif system == "parabolic":
            pt = [r.uniform(COORD_LO + 0.25, COORD_HI), r.uniform(COORD_LO, COORD_HI)]
            pt += [r.uniform(ANGLE_MARGIN, math.pi / 2 - ANGLE_MARGIN) for _ in range(n - 2)]
            out.append(pt)
        elif system == "spherical":
            pt = [r.uniform(COORD_LO, COORD_HI + 1)]
            pt += [r.uniform(ANGLE_MARGIN, math.pi / 2 - ANGLE_MARGIN) for _ in range(n - 1)]
            out.append(pt)
        else:
            raise ValueError(f"unknown coordinate system {system!r}")
    return out


# rational angles: tan(theta/2) = b/a keeps sin and cos rational and positive
_TRIPLES = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 3), (5, 4)]
_RADII = [Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(2, 3), Fraction(5, 4), Fraction(3, 2)]

# Cartesian points with rational radius, positive entries
_RATIONAL_R = {
    2: [[3, 4], [5, 12]],
    3: [[1, 2, 2], [2, 3, 6]],
    4: [[1, 1, 1, 1], [1, 2, 2, 4]],
    5: [[1, 1, 1, 2, 3], [1, 2, 2, 4, 12]],
    6: [[1, 1, 1, 2, 3, 3], [1, 1, 1, 1, 4, 4]],
}


def exact_points(system: str, n: int, count: int) -> list[list]:
    """Deterministic exact points: rational radii and Pythagorean-triple angles.

    Cartesian points have rational |x|; beyond the tabulated ones they are
    images of exact spherical points, whose radius is rational by construction.
    """
    out = []
    if system == "cartesian":
        out = [[Fraction(v) for v in p] for p in _RATIONAL_R.get(n, [])][:count]
        for p in exact_points("spherical", n, count)[: count - len(out)]:
            out.append(coord_map("spherical", n, p))
        return out
    for i in range(count):
        angles = [ExactAngle.from_triple(*_TRIPLES[(i + j) % len(_TRIPLES)]) for j in range(n - 1)]
        if system == "parabolic":
            mu = _RADII[(i + 4) % len(_RADII)] + 1
            nu = _RADII[i % len(_RADII)]
            out.append([mu, nu] + angles[: n - 2])
        elif system == "spherical":
            out.append([_RADII[i % len(_RADII)] + 1] + angles)
        else:
            raise ValueError(f"unknown coordinate system {system!r}")
    return out


def polynomial_test_jet(nvars: int, order: int, degree: int, rng: SplitMix64) -> Jet:
    """Jet (through ``order``) of a random polynomial of total degree <= ``degree``."""
    monos = monomials(nvars, order)
    c = np.zeros(len(monos))
    for i, m in enumerate(monos):
        if sum(m) <= degree:
            c[i] = rng.uniform(-1.0, 1.0)
    return Jet(nvars, order, c)


def format_point(point) -> list[str]:
    out = []
    for v in point:
        if isinstance(v, ExactAngle):
            out.append(f"angle(cos={v.cos},sin={v.sin})")
        elif isinstance(v, Fraction):
            out.append(str(v))
        else:
            out.append(repr(float(v)))
    return out
