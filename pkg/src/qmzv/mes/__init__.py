"""Analytic side: MZVs, multitangents, multiple Eisenstein series, Z_k."""

from .expansion import MESExpansion, fourier_coefficient, g_shuffle, mes_fourier
from .lattice import LatticeValue, g_star_M, mes_lattice, star_F
from .multitangent import monotangent, multitangent, multitangent_reduce_len2
from .mzv import mzv_numeric, mzv_regularized, zeta_combination
from .zk import ZkResult, zk_limit, zk_samples

__all__ = [
    "LatticeValue",
    "MESExpansion",
    "ZkResult",
    "fourier_coefficient",
    "g_shuffle",
    "g_star_M",
    "mes_fourier",
    "mes_lattice",
    "monotangent",
    "multitangent",
    "multitangent_reduce_len2",
    "mzv_numeric",
    "mzv_regularized",
    "star_F",
    "zeta_combination",
    "zk_limit",
    "zk_samples",
]
