"""Saaty's consistency index and Koczkodaj's inconsistency index."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .matrix import PCMatrix


@dataclass(frozen=True)
class InconsistencyReport:
    lambda_max: float
    ci: float
    ki: float


def saaty_ci(lambda_max: float, n: int) -> float:
    ci = (lambda_max - n) / (n - 1)
    if abs(ci) <= 1e-12:
        return 0.0
    return ci


@lru_cache(maxsize=None)
def _distinct_triads(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    i, j, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    keep = (i != j) & (j != k) & (i != k)
    out = (i[keep], j[keep], k[keep])
    for arr in out:
        arr.flags.writeable = False
    return out


def koczkodaj_ki(C: PCMatrix) -> float:
    """Worst triad deviation: max over distinct (i, j, k) of
    min(|1 - c_ij/(c_ik c_kj)|, |1 - c_ik c_kj/c_ij|)."""
    a = C.entries
    i, j, k = _distinct_triads(a.shape[0])
    direct = a[i, j]
    path = a[i, k] * a[k, j]
    return float(np.minimum(np.abs(1.0 - direct / path), np.abs(1.0 - path / direct)).max())


def inconsistency_report(C: PCMatrix, lambda_max: float) -> InconsistencyReport:
    return InconsistencyReport(lambda_max, saaty_ci(lambda_max, C.order), koczkodaj_ki(C))
