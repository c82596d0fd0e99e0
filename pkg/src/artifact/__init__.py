"""Double factorial Schur functions, deformed free fermions and their lattice models."""

from .currents import PowersumSpec, apply_H, apply_J, coeff_A, deformed_shift
from .fock import FockVector, conjugate, parse_partition, partition
from .lattice import rtm_coeff, rtm_factors, rtm_multi, wick_det
from .ring import Coef, PSeries, parse_coef
from .schur import dfs, dfs_dual, giambelli, jacobi_trudi, mn_expand, omega_apply
from .shifted import ParamEnv

__version__ = "0.1.0"

__all__ = [
    "Coef",
    "FockVector",
    "PSeries",
    "ParamEnv",
    "PowersumSpec",
    "apply_H",
    "apply_J",
    "coeff_A",
    "conjugate",
    "deformed_shift",
    "dfs",
    "dfs_dual",
    "giambelli",
    "jacobi_trudi",
    "mn_expand",
    "omega_apply",
    "parse_coef",
    "parse_partition",
    "partition",
    "rtm_coeff",
    "rtm_factors",
    "rtm_multi",
    "wick_det",
]
