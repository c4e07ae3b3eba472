"""CSV and text serialization for experiment outputs."""

from __future__ import annotations

import csv
import io
import os
import tempfile
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Optional

from . import published
from .simulator import AggregateRow, CIBucket, ExperimentConfig, KIBin, MatrixRecord

RECORD_COLUMNS = (
    "n", "gamma", "replicate", "seed", "lambda_max", "ci", "ki",
    "pop_app", "pop_sat_ev", "pop_sat_gm", "poip_app", "poip_sat_ev", "poip_sat_gm",
    "th1", "th2",
)
_FLOAT_COLUMNS = {"gamma", "lambda_max", "ci", "ki"}

TABLE_COLUMNS = ("n", "ci_bucket", "matrix_count") + tuple(
    f.name for f in fields(AggregateRow) if f.name not in ("n", "ci_bucket", "matrix_count")
)
FIGURE_COLUMNS = tuple(f.name for f in fields(KIBin))


def fmt(value) -> str:
    """Shortest round-trip text for numbers; empty string for None."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def _csv_text(header: Iterable[str], rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def records_csv(records: Iterable[MatrixRecord]) -> str:
    return _csv_text(RECORD_COLUMNS, ([getattr(r, c) for c in RECORD_COLUMNS] for r in records))


def parse_records_csv(text: str) -> list[MatrixRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != RECORD_COLUMNS:
        raise ValueError(f"unexpected records.csv header: {reader.fieldnames}")
    out = []
    for row in reader:
        kw = {}
        for c in RECORD_COLUMNS:
            v = row[c]
            if c in _FLOAT_COLUMNS:
                kw[c] = float(v)
            elif c == "th2" and v == "":
                kw[c] = None
            else:
                kw[c] = int(v)
        out.append(MatrixRecord(**kw))
    return out


def tables_csv(rows: Iterable[AggregateRow]) -> str:
    return _csv_text(TABLE_COLUMNS, ([getattr(r, c) for c in TABLE_COLUMNS] for r in rows))


def figures_csv(bins: Iterable[KIBin]) -> str:
    return _csv_text(FIGURE_COLUMNS, ([getattr(b, c) for c in FIGURE_COLUMNS] for b in bins))


def _cell(value: Optional[float]) -> str:
    return "NA" if value is None else f"{value:.2f}"


def summary_text(
    config: ExperimentConfig, rows: list[AggregateRow], record_count: int, failures: list[int]
) -> str:
    lines = [
        "Order-preservation simulation summary",
        "",
        f"orders {config.n_min}..{config.n_max}, {config.gamma_levels} disturbance levels, "
        f"{config.matrices_per_cell} matrices per cell, delta scheme {config.delta_scheme.value}, "
        f"seed {config.master_seed}",
        f"matrices evaluated: {record_count}",
        f"power-iteration failures: {len(failures)}",
    ]
    if failures:
        lines.append("failed seeds: " + " ".join(str(s) for s in failures))
    lines += [
        "",
        "Each cell: simulated / published. POIP and Th2 rates count every quadruple",
        "of the full universe; Th1 and Th2 use EV weights.",
    ]
    head = f"{'n':>2} {'count':>7}  " + "  ".join(f"{c:>15}" for c in published.COLUMNS)
    for bucket in CIBucket:
        lines += ["", f"Satisfaction of POP and POIP conditions (%), {bucket.value}", head]
        for r in rows:
            if r.ci_bucket is not bucket:
                continue
            ref = published.TABLES[bucket].get(r.n)
            cells = []
            for k, c in enumerate(published.COLUMNS):
                ours = _cell(getattr(r, c))
                theirs = "-" if ref is None else _cell(ref[k])
                cells.append(f"{ours + ' / ' + theirs:>15}")
            lines.append(f"{r.n:>2} {r.matrix_count:>7}  " + "  ".join(cells))
    return "\n".join(lines) + "\n"


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


@dataclass(frozen=True)
class OutputBundle:
    records_csv: Path
    tables_csv: Path
    figures_csv: Path
    summary_text: Path

    @classmethod
    def in_dir(cls, out: Path) -> "OutputBundle":
        out = Path(out)
        return cls(out / "records.csv", out / "tables.csv", out / "figures.csv", out / "summary.txt")
