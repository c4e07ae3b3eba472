"""Priority vectors by the eigenvalue (EV) and geometric mean (GM) methods."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .matrix import PCMatrix

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 10000


class Method(enum.Enum):
    EV = "EV"
    GM = "GM"


class NoConvergence(ArithmeticError):
    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"power iteration did not converge: residual {residual:.3g} after {iterations} iterations"
        )
        self.iterations = iterations
        self.residual = residual


@dataclass(frozen=True, eq=False)
class PriorityVector:
    weights: np.ndarray
    method: Method

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if not (w > 0).all():
            raise ValueError("priority weights must be strictly positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"priority weights must sum to 1, got {w.sum()!r}")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]


@dataclass(frozen=True, eq=False)
class EigenResult:
    lambda_max: float
    vector: PriorityVector
    iterations: int
    residual: float


def ev_weights(C: PCMatrix, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> EigenResult:
    """Principal eigenpair by power iteration started from the uniform vector.

    The residual is the largest componentwise relative change between the
    last two normalized iterates. Once it drops to ``tol``, lambda_max is
    taken as the mean of the ratios (C w)_i / w_i.
    """
    if tol <= 0 or max_iter < 1:
        raise ValueError("tol must be positive and max_iter at least 1")
    a = C.entries
    n = a.shape[0]
    w = np.full(n, 1.0 / n)
    residual = np.inf
    it = 0
    while it < max_iter:
        it += 1
        y = a @ w
        y /= y.sum()
        residual = float(np.max(np.abs(y - w) / y))
        w = y
        if residual <= tol:
            break
    else:
        raise NoConvergence(it, residual)
    w = w / w.sum()
    lam = float(np.mean((a @ w) / w))
    return EigenResult(lam, PriorityVector(w, Method.EV), it, residual)


def gm_weights(C: PCMatrix) -> PriorityVector:
    """Normalized row geometric means, computed as exp(mean(log c_ir))."""
    g = np.exp(np.log(C.entries).mean(axis=1))
    return PriorityVector(g / g.sum(), Method.GM)
