"""Sampled partitions, regularised, approach the shaken limit curve.

Writes ``trials.csv`` and ``summary.json`` into ``demos/output`` along with an
SVG figure of one large sample.

Run with ``python3 demos/monte_carlo_demo.py``.
"""

from pathlib import Path

from regshape import omega_e, regularise, sample
from regshape.experiments import ExperimentConfig, run_experiment
from regshape.svg import emit_figure

OUT = Path(__file__).parent / "output"


if __name__ == "__main__":
    e = 3
    cfg = ExperimentConfig(e=e, n_values=(100, 1000, 5000), trials=10, seed=2024, output_dir=str(OUT))
    res = run_experiment(cfg)
    print(f"wrote {res.csv_path} and {res.summary_path}")
    target = omega_e(e).s_alpha
    for n, stats in res.summary["per_n"].items():
        sup = stats["sup_dist"]["median"]
        col = stats["first_col_scaled"]["mean"]
        print(f"n={n:>5}: median sup distance {sup:.4f}, mean first column {col:.4f} (limit {target:.4f})")

    lam = regularise(sample(5000, 7), e)
    path = emit_figure(lam, e, OUT / "profile_vs_limit.svg")
    print(f"figure: {path}")
