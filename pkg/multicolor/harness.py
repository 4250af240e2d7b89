"""Monte Carlo trials over M(n, m): run, aggregate, emit and parse.

Records are ordered by (cell, trial) no matter how the pool schedules them,
and every record can be re-derived from its seed alone.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import statistics
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ValidationError, validator

from .coloring import color_optimal
from .config import get_settings
from .core import degree_stats
from .exceptions import HarnessError
from .metrics import trials_total
from .observability import report_trial_failure
from .sampling import IID_PAIRS, MODELS, SampleConfig, regime_threshold, sample

logger = logging.getLogger(__name__)

CSV = "csv"
JSONL = "jsonl"
FORMATS = (CSV, JSONL)

# CP-SAT takes a 32-bit seed
_SOLVER_SEED_MOD = 1 << 31

# (n, m, seed, model, cell, trial)
_Task = Tuple[int, int, int, str, int, int]


@dataclass(frozen=True)
class TrialRecord:
    """One sampled multigraph and what the dispatcher made of it.

    CSV header, in order: cell, trial, seed, model, n, m, delta, d2, gap,
    mu_max, mu_min, rho_full, lower_bound, colors_used, first_class,
    strategy, wall_ms. ``rho_full`` is written as an exact fraction.
    """

    cell: int
    trial: int
    seed: int
    model: str
    n: int
    m: int
    delta: int
    d2: int
    gap: int
    mu_max: int
    mu_min: int
    rho_full: Fraction
    lower_bound: int
    colors_used: int
    first_class: bool
    strategy: str
    wall_ms: float = field(default=0.0, compare=False)

    @property
    def rho_exceeds_delta(self) -> bool:
        return math.ceil(self.rho_full) > self.delta


@dataclass(frozen=True)
class CellSummary:
    cell: int
    n: int
    m: int
    trials: int
    mean_gap: float
    median_gap: int
    mean_delta: float
    median_delta: int
    mean_colors: float
    median_colors: int
    first_class_fraction: Fraction
    rho_exceeds_delta_fraction: Fraction
    strategies: Dict[str, int]


TRIAL_COLUMNS: Tuple[str, ...] = tuple(f.name for f in fields(TrialRecord))
SUMMARY_COLUMNS: Tuple[str, ...] = tuple(f.name for f in fields(CellSummary))


class ExperimentConfig(BaseModel):
    """A grid of (n, m) cells; ``m_factors`` are multiples of n³·ln n."""

    n_values: List[int]
    m_values: List[int] = []
    m_factors: List[float] = []
    trials: int = 1
    base_seed: int = 0
    model: str = IID_PAIRS
    output_format: str = CSV
    workers: Optional[int] = None

    class Config:
        allow_mutation = False

    @validator("n_values")
    def ensure_vertices(cls, v):
        if not v:
            raise ValueError("n_values must not be empty")
        if any(n < 0 for n in v):
            raise ValueError("n_values must be non-negative")
        return v

    @validator("m_values", each_item=True)
    def ensure_edges(cls, v):
        if v < 0:
            raise ValueError("m_values must be non-negative")
        return v

    @validator("m_factors", each_item=True)
    def ensure_factors(cls, v):
        if v < 0:
            raise ValueError("m_factors must be non-negative")
        return v

    @validator("trials")
    def ensure_trials(cls, v):
        if v < 1:
            raise ValueError("trials must be at least 1")
        return v

    @validator("model")
    def ensure_model(cls, v):
        if v not in MODELS:
            raise ValueError(f"model must be one of {MODELS}")
        return v

    @validator("output_format")
    def ensure_format(cls, v):
        if v not in FORMATS:
            raise ValueError(f"output_format must be one of {FORMATS}")
        return v

    @validator("workers")
    def ensure_workers(cls, v):
        if v is not None and v < 0:
            raise ValueError("workers must be non-negative")
        return v

    def cells(self) -> List[Tuple[int, int]]:
        """(n, m) pairs in cell-index order."""

        grid: List[Tuple[int, int]] = []
        for n in self.n_values:
            grid.extend((n, m) for m in self.m_values)
            grid.extend((n, int(round(f * regime_threshold(n)))) for f in self.m_factors)
        return grid


def load_experiment(path: Union[str, Path]) -> ExperimentConfig:
    try:
        return ExperimentConfig.parse_file(path)
    except (OSError, ValidationError, ValueError) as exc:
        raise HarnessError(f"cannot load experiment file {path}: {exc}") from exc


def derive_seed(base_seed: int, cell: int, trial: int) -> int:
    """64-bit trial seed from (base, cell, trial)."""

    state = np.random.SeedSequence([base_seed & ((1 << 64) - 1), cell, trial]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def run_single_trial(n: int, m: int, seed: int, model: str = IID_PAIRS, cell: int = 0, trial: int = 0) -> TrialRecord:
    """Sample one multigraph and colour it; pure in everything except wall time."""

    started = time.perf_counter()
    graph = sample(SampleConfig(n=n, m=m, seed=seed, model=model))
    stats = degree_stats(graph)
    outcome = color_optimal(graph, seed=seed % _SOLVER_SEED_MOD)
    wall_ms = (time.perf_counter() - started) * 1000.0
    return TrialRecord(
        cell=cell,
        trial=trial,
        seed=seed,
        model=model,
        n=n,
        m=graph.m,
        delta=stats.delta,
        d2=stats.d2,
        gap=stats.gap,
        mu_max=stats.mu_max,
        mu_min=stats.mu_min,
        rho_full=Fraction(graph.m, n // 2) if n >= 2 else Fraction(0),
        lower_bound=outcome.lower_bound,
        colors_used=outcome.colors_used,
        first_class=outcome.first_class,
        strategy=outcome.strategy,
        wall_ms=wall_ms,
    )


def _resolve_workers(requested: Optional[int]) -> int:
    workers = requested if requested is not None else get_settings().workers
    return workers or os.cpu_count() or 1


def _trial_failed(exc: Exception, task: _Task) -> HarnessError:
    n, m, seed, _, cell, trial = task
    trials_total.labels(status="failed").inc()
    logger.exception("trial failed", extra={"cell": cell, "trial": trial, "seed": seed, "n": n, "m": m})
    report_trial_failure(exc, cell=cell, trial=trial, seed=seed, n=n, m=m)
    return HarnessError(f"trial ({cell}, {trial}) with seed {seed} failed: {exc}")


def run_trials(cfg: ExperimentConfig, workers: Optional[int] = None) -> List[TrialRecord]:
    """One record per (cell, trial), ordered by (cell, trial)."""

    tasks: List[_Task] = []
    for cell, (n, m) in enumerate(cfg.cells()):
        if n < 2 and m > 0:
            logger.warning("skipping infeasible cell: %d edges on %d vertices", m, n, extra={"cell": cell, "n": n, "m": m})
            trials_total.labels(status="skipped").inc(cfg.trials)
            continue
        for trial in range(cfg.trials):
            tasks.append((n, m, derive_seed(cfg.base_seed, cell, trial), cfg.model, cell, trial))

    pool_size = _resolve_workers(workers if workers is not None else cfg.workers)
    collected: Dict[Tuple[int, int], TrialRecord] = {}
    if pool_size == 1 or len(tasks) <= 1:
        for task in tasks:
            try:
                record = run_single_trial(*task)
            except Exception as exc:
                raise _trial_failed(exc, task) from exc
            collected[(record.cell, record.trial)] = record
            trials_total.labels(status="ok").inc()
    else:
        with ProcessPoolExecutor(max_workers=pool_size) as pool:
            futures = {pool.submit(run_single_trial, *task): task for task in tasks}
            for future in as_completed(futures):
                task = futures[future]
                try:
                    record = future.result()
                except Exception as exc:
                    raise _trial_failed(exc, task) from exc
                collected[(record.cell, record.trial)] = record
                trials_total.labels(status="ok").inc()

    logger.info("finished %d trials over %d cells", len(collected), len(cfg.cells()))
    return [collected[key] for key in sorted(collected)]


def aggregate(records: Iterable[TrialRecord]) -> List[CellSummary]:
    """Per-cell statistics; medians are lower medians and fractions are exact."""

    rows = list(records)
    if not rows:
        raise HarnessError("cannot aggregate an empty record set")

    by_cell: Dict[Tuple[int, int, int], List[TrialRecord]] = defaultdict(list)
    for record in rows:
        by_cell[(record.cell, record.n, record.m)].append(record)

    summaries: List[CellSummary] = []
    for (cell, n, m), group in sorted(by_cell.items(), key=lambda item: item[0]):
        gaps = [r.gap for r in group]
        deltas = [r.delta for r in group]
        colors = [r.colors_used for r in group]
        strategies = Counter(r.strategy for r in group)
        summaries.append(
            CellSummary(
                cell=cell,
                n=n,
                m=m,
                trials=len(group),
                mean_gap=sum(gaps) / len(group),
                median_gap=statistics.median_low(gaps),
                mean_delta=sum(deltas) / len(group),
                median_delta=statistics.median_low(deltas),
                mean_colors=sum(colors) / len(group),
                median_colors=statistics.median_low(colors),
                first_class_fraction=Fraction(sum(r.first_class for r in group), len(group)),
                rho_exceeds_delta_fraction=Fraction(sum(r.rho_exceeds_delta for r in group), len(group)),
                strategies=dict(sorted(strategies.items())),
            )
        )
    return summaries


def _encode(value: Any) -> Any:
    return str(value) if isinstance(value, Fraction) else value


def _to_row(item: Union[TrialRecord, CellSummary]) -> Dict[str, Any]:
    return {f.name: _encode(getattr(item, f.name)) for f in fields(item)}


def emit(rows: Sequence[Union[TrialRecord, CellSummary]], fmt: str = CSV, summary: Optional[bool] = None) -> bytes:
    """CSV (fixed header) or JSON lines (stable key order).

    An empty sequence emits the trial header alone unless ``summary`` is set.
    """

    if fmt not in FORMATS:
        raise HarnessError(f"unknown output format {fmt!r}; expected one of {FORMATS}")
    is_summary = summary if summary is not None else bool(rows) and isinstance(rows[0], CellSummary)
    columns = SUMMARY_COLUMNS if is_summary else TRIAL_COLUMNS

    buffer = io.StringIO()
    if fmt == CSV:
        writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for item in rows:
            row = _to_row(item)
            if is_summary:
                row["strategies"] = json.dumps(row["strategies"], sort_keys=True)
            writer.writerow({key: str(value).lower() if isinstance(value, bool) else value for key, value in row.items()})
    else:
        for item in rows:
            buffer.write(json.dumps(_to_row(item)))
            buffer.write("\n")
    return buffer.getvalue().encode("utf-8")


def _decode_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text not in ("true", "false"):
        raise HarnessError(f"expected true/false, got {value!r}")
    return text == "true"


def _record_from_row(row: Dict[str, Any]) -> TrialRecord:
    missing = [name for name in TRIAL_COLUMNS if name not in row]
    if missing:
        raise HarnessError(f"record is missing columns {missing}")
    try:
        return TrialRecord(
            cell=int(row["cell"]),
            trial=int(row["trial"]),
            seed=int(row["seed"]),
            model=str(row["model"]),
            n=int(row["n"]),
            m=int(row["m"]),
            delta=int(row["delta"]),
            d2=int(row["d2"]),
            gap=int(row["gap"]),
            mu_max=int(row["mu_max"]),
            mu_min=int(row["mu_min"]),
            rho_full=Fraction(str(row["rho_full"])),
            lower_bound=int(row["lower_bound"]),
            colors_used=int(row["colors_used"]),
            first_class=_decode_bool(row["first_class"]),
            strategy=str(row["strategy"]),
            wall_ms=float(row["wall_ms"]),
        )
    except (TypeError, ValueError) as exc:
        raise HarnessError(f"malformed record {row!r}: {exc}") from exc


def parse(data: Union[bytes, str], fmt: str = CSV) -> List[TrialRecord]:
    """Inverse of ``emit`` for trial records."""

    if fmt not in FORMATS:
        raise HarnessError(f"unknown output format {fmt!r}; expected one of {FORMATS}")
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if fmt == CSV:
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None:
            return []
        if tuple(reader.fieldnames) != TRIAL_COLUMNS:
            raise HarnessError(f"unexpected CSV header {reader.fieldnames}")
        return [_record_from_row(row) for row in reader]
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise HarnessError(f"line {lineno}: invalid JSON: {exc}") from exc
        records.append(_record_from_row(row))
    return records
