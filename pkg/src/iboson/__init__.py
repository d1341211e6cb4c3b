"""Exact combinatorics for a two-species boson lattice model: strict plane partitions,
Schur Q-functions, a charged free-fermion Fock space and checks tying them together."""

from .algebra import QSqrt2, MultiSeries, SeriesContext, pfaffian
from .errors import BoundExceeded, DomainError, UsageError
from .partitions import StrictPartition, TwoPartition
from .plane import PlanePartition, enumerate_boxed_strict, path_exponent
from .schurq import schur_q

__all__ = [
    "BoundExceeded",
    "DomainError",
    "MultiSeries",
    "PlanePartition",
    "QSqrt2",
    "SeriesContext",
    "StrictPartition",
    "TwoPartition",
    "UsageError",
    "enumerate_boxed_strict",
    "path_exponent",
    "pfaffian",
    "schur_q",
]
