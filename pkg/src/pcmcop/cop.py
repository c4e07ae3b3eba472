"""Individual POP/POIP conditions and the subsets guaranteed by the KI theorems.

Pairs are ordered off-diagonal index pairs (i, j). A POIP quadruple is an
ordered pair of pairs ((i, j), (k, l)) with (k, l) not equal to (i, j) or
(j, i); there are (n^2 - n)(n^2 - n - 2) of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .matrix import PCMatrix


@lru_cache(maxsize=None)
def offdiagonal_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    i, j = np.nonzero(~np.eye(n, dtype=bool))
    i.flags.writeable = False
    j.flags.writeable = False
    return i, j


@lru_cache(maxsize=None)
def quadruple_universe(n: int) -> np.ndarray:
    """Boolean (m, m) mask over pairs-of-pairs admitted as POIP quadruples."""
    i, j = offdiagonal_pairs(n)
    same = (i[:, None] == i[None, :]) & (j[:, None] == j[None, :])
    swapped = (i[:, None] == j[None, :]) & (j[:, None] == i[None, :])
    mask = ~(same | swapped)
    mask.flags.writeable = False
    return mask


def _weights(w) -> np.ndarray:
    return np.asarray(getattr(w, "weights", w), dtype=float)


def _pair_values(C: PCMatrix) -> np.ndarray:
    i, j = offdiagonal_pairs(C.order)
    return C.entries[i, j]


def _threshold(ki: float) -> float:
    if not (0.0 <= ki < 1.0):
        raise ValueError(f"KI must lie in [0, 1), got {ki}")
    return 1.0 / (1.0 - ki)


def pop_masks(C: PCMatrix, w) -> tuple[np.ndarray, np.ndarray]:
    """Per-pair (applicable, satisfied) masks, aligned with offdiagonal_pairs."""
    i, j = offdiagonal_pairs(C.order)
    w = _weights(w)
    applicable = C.entries[i, j] > 1.0
    return applicable, applicable & (w[i] > w[j])


def poip_masks(C: PCMatrix, w) -> tuple[np.ndarray, np.ndarray]:
    i, j = offdiagonal_pairs(C.order)
    c = C.entries[i, j]
    w = _weights(w)
    r = w[i] / w[j]
    big = c > 1.0
    applicable = quadruple_universe(C.order) & big[:, None] & big[None, :] & (c[:, None] > c[None, :])
    return applicable, applicable & (r[:, None] > r[None, :])


def pop_evaluate(C: PCMatrix, w) -> tuple[int, int]:
    applicable, satisfied = pop_masks(C, w)
    return int(applicable.sum()), int(satisfied.sum())


def poip_evaluate(C: PCMatrix, w) -> tuple[int, int]:
    applicable, satisfied = poip_masks(C, w)
    return int(applicable.sum()), int(satisfied.sum())


def theorem1_mask(C: PCMatrix, ki: float) -> np.ndarray:
    return _pair_values(C) > _threshold(ki)


def theorem2_mask(C: PCMatrix, ki: float, restricted: bool = True) -> np.ndarray:
    """Quadruples with c_ij / c_kl > (1/(1-KI))^2.

    With ``restricted`` (the default) only quadruples with c_ij > 1 and
    c_kl > 1 are admitted, so the result is a subset of the POIP universe.
    """
    bound = _threshold(ki) ** 2
    c = _pair_values(C)
    mask = quadruple_universe(C.order) & (c[:, None] / c[None, :] > bound)
    if restricted:
        big = c > 1.0
        mask &= big[:, None] & big[None, :]
    return mask


def theorem1_count(C: PCMatrix, ki: float) -> int:
    return int(theorem1_mask(C, ki).sum())


def theorem2_count(C: PCMatrix, ki: float, restricted: bool = True) -> int:
    return int(theorem2_mask(C, ki, restricted).sum())


def theorem_violations(C: PCMatrix, w, ki: float, with_th2: bool = True) -> tuple[int, int]:
    """Number of guaranteed conditions that ``w`` nevertheless violates.

    Theorem 2 is checked on the unrestricted quadruple set, a superset of
    what theorem2_count reports.
    """
    i, j = offdiagonal_pairs(C.order)
    w = _weights(w)
    bad1 = int((theorem1_mask(C, ki) & ~(w[i] > w[j])).sum())
    if not with_th2:
        return bad1, 0
    r = w[i] / w[j]
    bad2 = int((theorem2_mask(C, ki, restricted=False) & ~(r[:, None] > r[None, :])).sum())
    return bad1, bad2


@dataclass(frozen=True)
class CopReport:
    n: int
    pop_applicable: int
    pop_satisfied: int
    poip_applicable: int
    poip_satisfied: int
    th1_guaranteed: int
    th2_guaranteed: Optional[int]

    @property
    def pop_total(self) -> int:
        return self.n * self.n - self.n

    @property
    def poip_total(self) -> int:
        m = self.pop_total
        return m * (m - 2)


def cop_report(C: PCMatrix, w, ki: float, with_th2: bool = True) -> CopReport:
    pop_app, pop_sat = pop_evaluate(C, w)
    poip_app, poip_sat = poip_evaluate(C, w)
    return CopReport(
        n=C.order,
        pop_applicable=pop_app,
        pop_satisfied=pop_sat,
        poip_applicable=poip_app,
        poip_satisfied=poip_sat,
        th1_guaranteed=theorem1_count(C, ki),
        th2_guaranteed=theorem2_count(C, ki) if with_th2 else None,
    )
