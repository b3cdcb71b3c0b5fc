"""The superintegrable Coulomb-type model: parameters, spectra, operators, eigenfunctions."""

from .cartesian import build_cartesian, build_commuting_sets_n3_hydrogen
from .coords import coord_map, variables
from .curvilinear import build_parabolic_ops, build_q0_q1, build_spherical_ops
from .eigen import Eigenfunction, eigenfunction
from .params import (
    EigenvalueRecord,
    ModelError,
    ModelParams,
    Parabolic,
    Spherical,
    UnboundStateError,
    quantum_numbers,
)
from .spectrum import degeneracy, spectrum, states, states_up_to

__all__ = [
    "EigenvalueRecord",
    "Eigenfunction",
    "ModelError",
    "ModelParams",
    "Parabolic",
    "Spherical",
    "UnboundStateError",
    "build_cartesian",
    "build_commuting_sets_n3_hydrogen",
    "build_parabolic_ops",
    "build_q0_q1",
    "build_spherical_ops",
    "coord_map",
    "degeneracy",
    "eigenfunction",
    "quantum_numbers",
    "spectrum",
    "states",
    "states_up_to",
    "variables",
]
