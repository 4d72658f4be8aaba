"""Monte Carlo harness: sample, regularise, and measure the distance to the limit shape."""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from functools import lru_cache
from pathlib import Path

import numpy as np

from .partitions import regularise
from .plancherel import derive_seed, sample
from .profile import profile_of, sup_distance, support, uniform_grid
from .shapes import omega_e

CSV_HEADER = (
    "n",
    "e",
    "trial",
    "seed",
    "sup_dist",
    "support_left",
    "support_right",
    "first_row_scaled",
    "first_col_scaled",
    "wall_ms",
)
STATISTICS = ("sup_dist", "support_left", "support_right", "first_row_scaled", "first_col_scaled")


@dataclass(frozen=True)
class ExperimentConfig:
    e: int
    n_values: tuple[int, ...]
    trials: int
    seed: int
    grid_step: float = 1e-3
    window: tuple[float, float] = (-3.0, 3.0)
    output_dir: str = "results"
    workers: int = 1
    # wall-clock times make the CSV irreproducible, so they are opt-in
    record_timing: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "window", tuple(float(w) for w in self.window))
        if int(self.e) != self.e or self.e < 2:
            raise ValueError(f"e must be an integer >= 2, got {self.e!r}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError(f"n_values must be a non-empty list of integers >= 1, got {self.n_values}")
        if len(set(self.n_values)) != len(self.n_values):
            raise ValueError(f"n_values must be distinct, got {self.n_values}")
        if not self.grid_step > 0:
            raise ValueError(f"grid_step must be positive, got {self.grid_step}")
        if len(self.window) != 2 or not self.window[0] < self.window[1]:
            raise ValueError(f"window must be an interval lo < hi, got {self.window}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except OSError as exc:
            raise OSError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValueError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValueError(f"config {path} must hold a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_values"] = list(self.n_values)
        d["window"] = list(self.window)
        return d


@dataclass(frozen=True)
class TrialRecord:
    n: int
    e: int
    trial_index: int
    seed_used: int
    sup_dist_to_Omega_e: float
    support_left: float
    support_right: float
    first_row_scaled: float
    first_col_scaled: float
    wall_time_ms: float = field(default=0.0, compare=False)

    def stat(self, name: str) -> float:
        return {
            "sup_dist": self.sup_dist_to_Omega_e,
            "support_left": self.support_left,
            "support_right": self.support_right,
            "first_row_scaled": self.first_row_scaled,
            "first_col_scaled": self.first_col_scaled,
        }[name]


@lru_cache(maxsize=16)
def _limit_on_grid(e: int, lo: float, hi: float, step: float) -> np.ndarray:
    values = omega_e(e).evaluate(uniform_grid(lo, hi, step))
    values.setflags(write=False)
    return values


def run_trial(
    n: int,
    e: int,
    seed: int,
    trial_index: int = 0,
    grid_step: float = 1e-3,
    window: tuple[float, float] = (-3.0, 3.0),
) -> TrialRecord:
    """One draw of ``lam ~ Pl_n`` and the statistics of its e-regularisation."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if int(e) != e or e < 2:
        raise ValueError(f"e must be an integer >= 2, got {e!r}")
    start = time.perf_counter()
    mu = regularise(sample(n, seed), e)
    p = profile_of(mu)
    lo, hi = float(window[0]), float(window[1])
    dist = sup_distance(
        p,
        omega_e(e),
        window=(lo, hi),
        grid_step=grid_step,
        grid_values=_limit_on_grid(e, lo, hi, float(grid_step)),
    )
    left, right = support(p)
    r = math.sqrt(n)
    rec = TrialRecord(
        n=n,
        e=e,
        trial_index=trial_index,
        seed_used=seed,
        sup_dist_to_Omega_e=dist,
        support_left=left / r,
        support_right=right / r,
        first_row_scaled=mu.parts[0] / r,
        first_col_scaled=len(mu) / r,
        wall_time_ms=(time.perf_counter() - start) * 1e3,
    )
    assert rec.support_left <= 0 <= rec.support_right
    return rec


def trial_seed(base_seed: int, n: int, trial: int) -> int:
    return derive_seed(base_seed, n, trial)


def _task(args: tuple) -> TrialRecord:
    n, e, seed, trial, step, window = args
    return run_trial(n, e, seed, trial_index=trial, grid_step=step, window=window)


def _tasks(cfg: ExperimentConfig) -> list[tuple]:
    return [
        (n, cfg.e, trial_seed(cfg.seed, n, t), t, cfg.grid_step, cfg.window)
        for n in cfg.n_values
        for t in range(cfg.trials)
    ]


def run_trials(cfg: ExperimentConfig) -> list[TrialRecord]:
    """All ``(n, trial)`` records, in ``(n, trial)`` order whatever the worker count."""
    tasks = _tasks(cfg)
    if cfg.workers == 1 or len(tasks) == 1:
        return [_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(_task, tasks))


def _g12(x: float) -> str:
    return f"{x:.12g}"


def records_csv(records: list[TrialRecord], record_timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(
            [
                r.n,
                r.e,
                r.trial_index,
                r.seed_used,
                _g12(r.sup_dist_to_Omega_e),
                _g12(r.support_left),
                _g12(r.support_right),
                _g12(r.first_row_scaled),
                _g12(r.first_col_scaled),
                _g12(r.wall_time_ms) if record_timing else "0",
            ]
        )
    return buf.getvalue()


def _describe(values: list[float]) -> dict[str, float]:
    v = sorted(values)
    return {
        "mean": math.fsum(v) / len(v),
        "median": statistics.median(v),
        "std": statistics.stdev(v) if len(v) > 1 else 0.0,
    }


def summarise(records: list[TrialRecord], record_timing: bool = False) -> dict:
    """Per-n mean, median and sample std of every statistic, independent of record order."""
    names = STATISTICS + (("wall_ms",) if record_timing else ())
    per_n: dict[str, dict] = {}
    for n in sorted({r.n for r in records}):
        rows = [r for r in records if r.n == n]
        per_n[str(n)] = {"trials": len(rows)}
        for name in names:
            vals = [r.wall_time_ms if name == "wall_ms" else r.stat(name) for r in rows]
            per_n[str(n)][name] = _describe(vals)
    return {"per_n": per_n}


@dataclass(frozen=True)
class ExperimentResult:
    records: list[TrialRecord]
    summary: dict
    csv_path: Path
    summary_path: Path


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run every trial and write ``trials.csv`` and ``summary.json`` into ``cfg.output_dir``."""
    records = run_trials(cfg)
    summary = summarise(records, cfg.record_timing)
    summary["config"] = cfg.to_dict()
    out = Path(cfg.output_dir)
    csv_path, summary_path = out / "trials.csv", out / "summary.json"
    try:
        out.mkdir(parents=True, exist_ok=True)
        csv_path.write_text(records_csv(records, cfg.record_timing))
        summary_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {out}: {exc}") from exc
    return ExperimentResult(records, summary, csv_path, summary_path)
