"""Counting t-cores and self-conjugate t-cores via class numbers, q-series
and binary quadratic forms."""

from .abacus import count_sc_t_cores_lattice, count_t_cores_lattice, sc_t_core_counts, t_core_counts
from .classnum import H, H7
from .partitions import Partition, hook_lengths, is_t_core
from .sc7 import cor_counting, sc7_lattice
from .squares import r3

__all__ = [
    "Partition",
    "hook_lengths",
    "is_t_core",
    "t_core_counts",
    "sc_t_core_counts",
    "count_t_cores_lattice",
    "count_sc_t_cores_lattice",
    "H",
    "H7",
    "r3",
    "sc7_lattice",
    "cor_counting",
]
__version__ = "0.1.0"
