"""Command-line entry point.

    pcmcop run --n 3..9 --gamma-levels 300 --per-cell 100 --seed 42 --out ./out
    pcmcop eval matrix.txt
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .cop import (
    offdiagonal_pairs,
    poip_masks,
    pop_masks,
    theorem1_mask,
    theorem2_count,
)
from .inconsistency import koczkodaj_ki, saaty_ci
from .matrix import DeltaScheme, PCMError, make_pcm
from .output import (
    OutputBundle,
    atomic_write,
    figures_csv,
    records_csv,
    summary_text,
    tables_csv,
)
from .priority import NoConvergence, ev_weights, gm_weights
from .simulator import ExperimentConfig, aggregate_tables, bin_by_ki, run_experiment

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 2, 3

log = logging.getLogger("pcmcop")


class UsageError(Exception):
    pass


def parse_order_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    return lo, hi


def parse_matrix_text(text: str) -> np.ndarray:
    """Rows of comma- or whitespace-separated entries; '#' starts a comment.

    Entries may be decimals or fractions such as ``1/3``.
    """
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = [t for t in re.split(r"[,\s]+", line) if t]
        try:
            rows.append([float(Fraction(t)) for t in tokens])
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse matrix row {line!r}: {exc}") from None
    if not rows:
        raise UsageError("matrix file contains no rows")
    if len({len(r) for r in rows}) != 1:
        raise UsageError("NonSquare: matrix rows have different lengths")
    return np.array(rows)


def cmd_run(args) -> int:
    try:
        config = ExperimentConfig(
            n_min=args.n[0],
            n_max=args.n[1],
            gamma_levels=args.gamma_levels,
            matrices_per_cell=args.per_cell,
            delta_scheme=DeltaScheme(args.delta_scheme),
            master_seed=args.seed,
            ki_bin_width=args.ki_bin_width,
            force_th2=args.force_th2,
            check_theorems=args.check_theorems,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bundle = OutputBundle.in_dir(args.out)
    try:
        Path(args.out).mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        log.error("cannot create output directory: %s", exc)
        return EXIT_IO

    failures: list[int] = []
    records = list(run_experiment(config, workers=args.workers, skipped=failures))
    rows = aggregate_tables(records)
    bins = bin_by_ki(records, config.ki_bin_width)
    try:
        atomic_write(bundle.records_csv, records_csv(records))
        atomic_write(bundle.tables_csv, tables_csv(rows))
        atomic_write(bundle.figures_csv, figures_csv(bins))
        atomic_write(bundle.summary_text, summary_text(config, rows, len(records), failures))
    except OSError as exc:
        log.error("cannot write outputs: %s", exc)
        return EXIT_IO
    print(f"wrote {len(records)} records to {args.out}")
    if failures:
        print(f"warning: {len(failures)} matrices skipped after power-iteration failure")
    return EXIT_OK


def _pairs(mask, i, j) -> str:
    return " ".join(f"({a + 1},{b + 1})" for a, b in zip(i[mask], j[mask])) or "-"


def cmd_eval(args) -> int:
    try:
        text = Path(args.matrix).read_text()
    except OSError as exc:
        log.error("cannot read %s: %s", args.matrix, exc)
        return EXIT_IO
    try:
        C = make_pcm(parse_matrix_text(text))
    except PCMError as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from None
    try:
        eig = ev_weights(C)
    except NoConvergence as exc:
        raise UsageError(f"NoConvergence: {exc}") from None
    n = C.order
    gm = gm_weights(C)
    ki = koczkodaj_ki(C)
    i, j = offdiagonal_pairs(n)
    m = n * n - n

    out = [
        f"n           {n}",
        f"lambda_max  {eig.lambda_max!r}",
        f"CI          {saaty_ci(eig.lambda_max, n)!r}",
        f"KI          {ki!r}",
        "EV weights  " + " ".join(f"{x:.10f}" for x in eig.vector.weights),
        "GM weights  " + " ".join(f"{x:.10f}" for x in gm.weights),
    ]
    for w in (eig.vector, gm):
        name = w.method.value
        app, sat = pop_masks(C, w)
        qapp, qsat = poip_masks(C, w)
        na, ns, qa, qs = int(app.sum()), int(sat.sum()), int(qapp.sum()), int(qsat.sum())
        out += [
            "",
            f"[{name}] POP  applicable {na} of {m}, satisfied {ns}, violated {na - ns}"
            + (f" ({100.0 * ns / na:.2f}%)" if na else ""),
            f"[{name}] POP  satisfied pairs: {_pairs(sat, i, j)}",
            f"[{name}] POP  violated pairs:  {_pairs(app & ~sat, i, j)}",
            f"[{name}] POIP applicable {qa} of {m * (m - 2)}, satisfied {qs}, violated {qa - qs}"
            + (f" ({100.0 * qs / qa:.2f}%)" if qa else ""),
        ]
    t1 = theorem1_mask(C, ki)
    out += [
        "",
        f"Theorem 1 threshold {1.0 / (1.0 - ki)!r}",
        f"Theorem 1 guaranteed pairs: {_pairs(t1, i, j)}",
        f"Theorem 2 guaranteed quadruples: {theorem2_count(C, ki)} "
        f"(without the c > 1 restriction: {theorem2_count(C, ki, restricted=False)})",
    ]
    print("\n".join(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcmcop", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the Monte Carlo grid and write CSV outputs")
    run.add_argument("--n", type=parse_order_range, default=(3, 9), metavar="A..B")
    run.add_argument("--gamma-levels", type=int, default=300)
    run.add_argument("--per-cell", type=int, default=100)
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--delta-scheme", choices=[s.value for s in DeltaScheme], default="uniform")
    run.add_argument("--ki-bin-width", type=float, default=0.05)
    run.add_argument("--force-th2", action="store_true", help="count Theorem 2 cases for n >= 8 too")
    run.add_argument("--check-theorems", action="store_true",
                     help="fail if any Theorem 1/2 guarantee is violated")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--out", type=Path, required=True)
    run.set_defaults(func=cmd_run)

    ev = sub.add_parser("eval", help="audit a single matrix read from a text file")
    ev.add_argument("matrix", type=Path)
    ev.set_defaults(func=cmd_eval)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
