"""Pairwise comparison matrices: validation and random generation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

RECIPROCITY_TOL = 1e-12
CONSISTENCY_TOL = 1e-10


class PCMError(ValueError):
    """Base class for invalid pairwise comparison input."""


class NonSquare(PCMError):
    pass


class NonPositiveEntry(PCMError):
    pass


class ReciprocityViolation(PCMError):
    pass


class OrderTooSmall(PCMError):
    pass


@dataclass(frozen=True, eq=False)
class PCMatrix:
    """Positive reciprocal matrix of preference ratios.

    Build instances with :func:`make_pcm`; the entries array is read-only.
    """

    entries: np.ndarray

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, idx):
        return self.entries[idx]

    def permuted(self, perm) -> "PCMatrix":
        """Simultaneous row/column relabeling, P C P^T."""
        perm = np.asarray(perm)
        return make_pcm(self.entries[np.ix_(perm, perm)])


def make_pcm(entries) -> PCMatrix:
    a = np.array(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if n < 3:
        raise OrderTooSmall(f"order must be at least 3, got {n}")
    bad = ~np.isfinite(a) | (a <= 0)
    if bad.any():
        i, j = (int(x) for x in np.argwhere(bad)[0])
        raise NonPositiveEntry(
            f"entry ({i + 1},{j + 1}) = {a[i, j]!r} is not positive and finite"
        )
    np.fill_diagonal(a, 1.0)
    defect = np.abs(a * a.T - 1.0)
    if defect.max() > RECIPROCITY_TOL:
        i, j = (int(x) for x in np.unravel_index(np.argmax(defect), defect.shape))
        raise ReciprocityViolation(
            f"c[{i + 1},{j + 1}] * c[{j + 1},{i + 1}] = {a[i, j] * a[j, i]!r}, "
            f"reciprocity defect {defect[i, j]:.3g} exceeds {RECIPROCITY_TOL:g}"
        )
    a.flags.writeable = False
    return PCMatrix(a)


def consistency_defect(C: PCMatrix) -> float:
    """Largest |c_ij c_jk c_ki - 1| over all index triples."""
    a = C.entries
    # t[i, j, k] = c_ij * c_jk * c_ki
    t = a[:, :, None] * a[None, :, :] * a.T[:, None, :]
    return float(np.abs(t - 1.0).max())


@dataclass(frozen=True, eq=False)
class GroundTruthWeights:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or ((v < 1.0) | (v > 9.0)).any():
            raise ValueError("ground-truth weights must lie in [1, 9]")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


class DeltaScheme(enum.Enum):
    UNIFORM = "uniform"
    LOG_UNIFORM = "log-uniform"


@dataclass(frozen=True)
class DisturbanceSpec:
    gamma: float
    scheme: DeltaScheme = DeltaScheme.UNIFORM

    def __post_init__(self):
        if not (1.0 < self.gamma < 4.0):
            raise ValueError(f"disturbance level must satisfy 1 < gamma < 4, got {self.gamma}")
        object.__setattr__(self, "scheme", DeltaScheme(self.scheme))


def generate_consistent(n: int, rng: np.random.Generator) -> tuple[GroundTruthWeights, PCMatrix]:
    """Draw weights uniformly on [1, 9] and build C = [w_i / w_j]."""
    if n < 3:
        raise OrderTooSmall(f"order must be at least 3, got {n}")
    w = rng.uniform(1.0, 9.0, size=n)
    return GroundTruthWeights(w), make_pcm(w[:, None] / w[None, :])


def draw_deltas(count: int, spec: DisturbanceSpec, rng: np.random.Generator) -> np.ndarray:
    g = spec.gamma
    if spec.scheme is DeltaScheme.UNIFORM:
        return rng.uniform(1.0 / g, g, size=count)
    lg = math.log(g)
    return np.exp(rng.uniform(-lg, lg, size=count))


def perturb(C: PCMatrix, spec: DisturbanceSpec, rng: np.random.Generator) -> PCMatrix:
    """Multiply each upper-triangle entry by its own delta and mirror reciprocals.

    Deltas are drawn in row-major order over pairs i < j.
    """
    n = C.order
    iu, ju = np.triu_indices(n, k=1)
    a = np.array(C.entries)
    a[iu, ju] = a[iu, ju] * draw_deltas(len(iu), spec, rng)
    a[ju, iu] = 1.0 / a[iu, ju]
    return make_pcm(a)
