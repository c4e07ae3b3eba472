"""Monte Carlo grid over matrix order and disturbance level, plus aggregation.

Every matrix gets its own 64-bit seed derived from (master_seed, n,
gamma index, replicate), so cells can be computed in any order or in
parallel and still give the same records.
"""

from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .cop import cop_report, theorem_violations
from .inconsistency import koczkodaj_ki, saaty_ci
from .matrix import DeltaScheme, DisturbanceSpec, generate_consistent, perturb
from .priority import DEFAULT_MAX_ITER, DEFAULT_TOL, Method, NoConvergence, ev_weights, gm_weights

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
CI_THRESHOLD = 0.10
TH2_DEFAULT_MAX_N = 7


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def child_seed(master_seed: int, n: int, gamma_index: int, replicate: int) -> int:
    """Fold the cell coordinates into the master seed, one splitmix64 round each."""
    h = splitmix64(master_seed & MASK64)
    for part in (n, gamma_index, replicate):
        h = splitmix64(h ^ (part & MASK64))
    return h


def rng_for_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


class TheoremViolation(AssertionError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    n_min: int = 3
    n_max: int = 9
    gamma_levels: int = 300
    matrices_per_cell: int = 100
    delta_scheme: DeltaScheme = DeltaScheme.UNIFORM
    master_seed: int = 42
    ev_tol: float = DEFAULT_TOL
    ev_max_iter: int = DEFAULT_MAX_ITER
    ki_bin_width: float = 0.05
    force_th2: bool = False
    check_theorems: bool = False

    def __post_init__(self):
        if not (3 <= self.n_min <= self.n_max <= 9):
            raise ValueError(f"need 3 <= n_min <= n_max <= 9, got {self.n_min}..{self.n_max}")
        if self.gamma_levels < 1 or self.matrices_per_cell < 1:
            raise ValueError("gamma_levels and matrices_per_cell must be at least 1")
        if not (0 <= self.master_seed <= MASK64):
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        if not (0 < self.ki_bin_width < 1):
            raise ValueError("ki_bin_width must lie in (0, 1)")
        object.__setattr__(self, "delta_scheme", DeltaScheme(self.delta_scheme))

    @property
    def orders(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def gamma(self, index: int) -> float:
        """Level ``index`` (1-based) of the even grid strictly inside (1, 4)."""
        return 1.0 + 3.0 * index / (self.gamma_levels + 1)

    @property
    def total_matrices(self) -> int:
        return len(self.orders) * self.gamma_levels * self.matrices_per_cell

    def computes_th2(self, n: int) -> bool:
        return self.force_th2 or n <= TH2_DEFAULT_MAX_N


@dataclass(frozen=True)
class MatrixRecord:
    n: int
    gamma: float
    replicate: int
    seed: int
    lambda_max: float
    ci: float
    ki: float
    pop_app: int
    pop_sat_ev: int
    pop_sat_gm: int
    poip_app: int
    poip_sat_ev: int
    poip_sat_gm: int
    th1: int
    th2: Optional[int]

    @property
    def pop_total(self) -> int:
        return self.n * self.n - self.n

    @property
    def poip_total(self) -> int:
        return self.pop_total * (self.pop_total - 2)

    def pop_sat(self, method: Method) -> int:
        return self.pop_sat_ev if method is Method.EV else self.pop_sat_gm

    def poip_sat(self, method: Method) -> int:
        return self.poip_sat_ev if method is Method.EV else self.poip_sat_gm


def evaluate_matrix(config: ExperimentConfig, n: int, gamma_index: int, replicate: int) -> MatrixRecord:
    seed = child_seed(config.master_seed, n, gamma_index, replicate)
    gamma = config.gamma(gamma_index)
    rng = rng_for_seed(seed)
    _, C = generate_consistent(n, rng)
    C = perturb(C, DisturbanceSpec(gamma, config.delta_scheme), rng)

    eig = ev_weights(C, config.ev_tol, config.ev_max_iter)
    gm = gm_weights(C)
    ki = koczkodaj_ki(C)
    with_th2 = config.computes_th2(n)
    ev_rep = cop_report(C, eig.vector, ki, with_th2)
    gm_rep = cop_report(C, gm, ki, with_th2=False)

    if config.check_theorems:
        for w in (eig.vector, gm):
            bad = theorem_violations(C, w, ki, with_th2)
            if any(bad):
                raise TheoremViolation(
                    f"seed {seed}: {w.method.value} weights violate theorem 1/2 guarantees {bad}"
                )

    return MatrixRecord(
        n=n,
        gamma=gamma,
        replicate=replicate,
        seed=seed,
        lambda_max=eig.lambda_max,
        ci=saaty_ci(eig.lambda_max, n),
        ki=ki,
        pop_app=ev_rep.pop_applicable,
        pop_sat_ev=ev_rep.pop_satisfied,
        pop_sat_gm=gm_rep.pop_satisfied,
        poip_app=ev_rep.poip_applicable,
        poip_sat_ev=ev_rep.poip_satisfied,
        poip_sat_gm=gm_rep.poip_satisfied,
        th1=ev_rep.th1_guaranteed,
        th2=ev_rep.th2_guaranteed,
    )


def _run_cell(args) -> tuple[list[MatrixRecord], list[int]]:
    config, n, gamma_index = args
    records, failed = [], []
    for rep in range(config.matrices_per_cell):
        try:
            records.append(evaluate_matrix(config, n, gamma_index, rep))
        except NoConvergence:
            failed.append(child_seed(config.master_seed, n, gamma_index, rep))
    return records, failed


def run_experiment(
    config: ExperimentConfig, workers: int = 1, skipped: Optional[list] = None
) -> Iterator[MatrixRecord]:
    """Yield one record per grid point in (n, gamma index, replicate) order.

    Matrices whose power iteration fails are skipped; their seeds are
    appended to ``skipped`` when a list is given.
    """
    cells = [(config, n, g) for n in config.orders for g in range(1, config.gamma_levels + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(cells) // (workers * 8))
            results = pool.map(_run_cell, cells, chunksize=chunk)
            yield from _drain(results, skipped)
    else:
        yield from _drain(map(_run_cell, cells), skipped)


def _drain(results, skipped) -> Iterator[MatrixRecord]:
    for records, failed in results:
        if failed:
            log.warning("power iteration failed for %d matrices", len(failed))
            if skipped is not None:
                skipped.extend(failed)
        yield from records


# ---------------------------------------------------------------------------
# aggregation


class CIBucket(enum.Enum):
    BELOW_010 = "CI<0.10"
    AT_OR_ABOVE_010 = "CI>=0.10"

    @classmethod
    def of(cls, ci: float) -> "CIBucket":
        return cls.BELOW_010 if ci < CI_THRESHOLD else cls.AT_OR_ABOVE_010


def _mean(values: list[float]) -> Optional[float]:
    return math.fsum(values) / len(values) if values else None


def _pct(num: int, den: int) -> float:
    return 100.0 * num / den


@dataclass(frozen=True)
class AggregateRow:
    """Mean per-matrix percentages for one (n, CI bucket) partition.

    POP rates are satisfied / applicable. POIP and Theorem 2 rates count
    each quadruple of the full universe as one condition (an implication
    whose antecedent fails holds vacuously); the ``*_applicable`` variants
    divide by applicable quadruples instead. Theorem columns use EV counts.
    ``pooled_*`` fields divide summed counts rather than averaging rates.
    None marks an empty partition or a statistic that was not computed.
    """

    n: int
    ci_bucket: CIBucket
    matrix_count: int
    pop_ev: Optional[float] = None
    pop_gm: Optional[float] = None
    poip_ev: Optional[float] = None
    poip_gm: Optional[float] = None
    th1: Optional[float] = None
    th2: Optional[float] = None
    poip_ev_applicable: Optional[float] = None
    poip_gm_applicable: Optional[float] = None
    th2_applicable: Optional[float] = None
    pooled_pop_ev: Optional[float] = None
    pooled_pop_gm: Optional[float] = None
    pooled_poip_ev: Optional[float] = None
    pooled_poip_gm: Optional[float] = None
    pooled_th1: Optional[float] = None
    pooled_th2: Optional[float] = None


def _poip_universe_rate(r: MatrixRecord, sat: int) -> float:
    return 100.0 - _pct(r.poip_app - sat, r.poip_total)


def _pooled(num: int, den: int) -> Optional[float]:
    return _pct(num, den) if den else None


def _aggregate(n: int, bucket: CIBucket, rs: list[MatrixRecord]) -> AggregateRow:
    if not rs:
        return AggregateRow(n, bucket, 0)
    pop = [r for r in rs if r.pop_app]
    poip = [r for r in rs if r.poip_app]
    has_th2 = all(r.th2 is not None for r in rs)
    app_pop = sum(r.pop_app for r in rs)
    app_poip = sum(r.poip_app for r in rs)
    universe = sum(r.poip_total for r in rs)
    return AggregateRow(
        n=n,
        ci_bucket=bucket,
        matrix_count=len(rs),
        pop_ev=_mean([_pct(r.pop_sat_ev, r.pop_app) for r in pop]),
        pop_gm=_mean([_pct(r.pop_sat_gm, r.pop_app) for r in pop]),
        poip_ev=_mean([_poip_universe_rate(r, r.poip_sat_ev) for r in rs]),
        poip_gm=_mean([_poip_universe_rate(r, r.poip_sat_gm) for r in rs]),
        th1=_mean([_pct(r.th1, r.pop_app) for r in pop]),
        th2=_mean([_pct(r.th2, r.poip_total) for r in rs]) if has_th2 else None,
        poip_ev_applicable=_mean([_pct(r.poip_sat_ev, r.poip_app) for r in poip]),
        poip_gm_applicable=_mean([_pct(r.poip_sat_gm, r.poip_app) for r in poip]),
        th2_applicable=_mean([_pct(r.th2, r.poip_app) for r in poip]) if has_th2 else None,
        pooled_pop_ev=_pooled(sum(r.pop_sat_ev for r in rs), app_pop),
        pooled_pop_gm=_pooled(sum(r.pop_sat_gm for r in rs), app_pop),
        pooled_poip_ev=100.0 - _pct(app_poip - sum(r.poip_sat_ev for r in rs), universe),
        pooled_poip_gm=100.0 - _pct(app_poip - sum(r.poip_sat_gm for r in rs), universe),
        pooled_th1=_pooled(sum(r.th1 for r in rs), app_pop),
        pooled_th2=_pct(sum(r.th2 for r in rs), universe) if has_th2 else None,
    )


def aggregate_tables(records: Iterable[MatrixRecord]) -> list[AggregateRow]:
    """One row per (n, CI bucket), ordered by n then bucket.

    Matrices with no applicable conditions are left out of the rate means
    that would divide by zero.
    """
    parts: dict[tuple[int, CIBucket], list[MatrixRecord]] = {}
    orders = set()
    for r in records:
        orders.add(r.n)
        parts.setdefault((r.n, CIBucket.of(r.ci)), []).append(r)
    if not orders:
        raise ValueError("no records to aggregate")
    return [
        _aggregate(n, bucket, parts.get((n, bucket), []))
        for n in sorted(orders)
        for bucket in CIBucket
    ]


@dataclass(frozen=True)
class KIBin:
    n: int
    method: Method
    ki_bin_center: float
    count: int
    mean_pop_violations: float
    mean_poip_violations: float
    mean_th1: float
    mean_th2: Optional[float]


def bin_by_ki(records: Iterable[MatrixRecord], bin_width: float) -> list[KIBin]:
    """Mean violation and guarantee counts per KI bin, per (n, method).

    Bin k covers [k * bin_width, (k + 1) * bin_width); empty bins are omitted.
    """
    if not (0 < bin_width < 1):
        raise ValueError("bin_width must lie in (0, 1)")
    groups: dict[tuple[int, int], list[MatrixRecord]] = {}
    for r in records:
        groups.setdefault((r.n, int(math.floor(r.ki / bin_width))), []).append(r)
    out = []
    for method in Method:
        for (n, k) in sorted(groups):
            rs = groups[(n, k)]
            th2 = [r.th2 for r in rs]
            out.append(
                KIBin(
                    n=n,
                    method=method,
                    ki_bin_center=(k + 0.5) * bin_width,
                    count=len(rs),
                    mean_pop_violations=_mean([r.pop_app - r.pop_sat(method) for r in rs]),
                    mean_poip_violations=_mean([r.poip_app - r.poip_sat(method) for r in rs]),
                    mean_th1=_mean([r.th1 for r in rs]),
                    mean_th2=None if None in th2 else _mean(th2),
                )
            )
    out.sort(key=lambda b: (b.n, b.method.value, b.ki_bin_center))
    return out
