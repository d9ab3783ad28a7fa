"""
Cycle Curves
Efficiency, work, effective temperatures and entropy generation against
lambda, one curve per incline, from a sweep CSV

Usage:
    python run_engine.py sweep --lambda-grid 0:1:201 --alpha-list 0,0.20943951023931953,0.5235987755982988,0.7853981633974483 --out data/outputs/lambda_sweep.csv
    python -m scripts.analysis.plot_cycle_curves data/outputs/lambda_sweep.csv
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

from .csv_output import read_csv

PROJECT_ROOT = Path(__file__).parent.parent.parent
FIGURES_DIR = PROJECT_ROOT / "data" / "outputs" / "figures"

# (title, [(column, label, sign)], y label)
PANELS = [
    ("Efficiency", [("eta", "$\\eta$", 1.0)], "$\\eta$"),
    ("Work", [("w_net", "$-W$", -1.0), ("w_L", "$-W_L$", -1.0), ("w_S", "$-W_S$", -1.0)], "work output (J)"),
    ("Effective temperatures", [("t2_eff", "$T_2$", 1.0), ("t4_eff", "$T_4$", 1.0)], "temperature (K)"),
    ("Entropy generation", [("entropy_gen", "$S$", 1.0)], "S (J/K)"),
]
LINESTYLES = ["-", "--", "-.", ":"]


def plot_cycle_curves(df: pd.DataFrame, output_path: Path) -> Path:
    """2x2 grid of the cycle observables against lambda, one colour per alpha"""
    ok = df[df["status"] == "ok"] if "status" in df.columns else df
    alphas = sorted(ok["alpha_rad"].unique())

    fig, axes = plt.subplots(2, 2, figsize=(12, 9))
    for ax, (title, series, ylabel) in zip(axes.flat, PANELS):
        for i, alpha in enumerate(alphas):
            curve = ok[ok["alpha_rad"] == alpha].sort_values("lambda")
            for j, (column, label, sign) in enumerate(series):
                ax.plot(
                    curve["lambda"],
                    sign * curve[column],
                    color=f"C{i}",
                    linestyle=LINESTYLES[j % len(LINESTYLES)],
                    linewidth=1.5,
                    label=f"{label}, $\\alpha$={alpha:.3f}",
                )
        ax.set_title(title, fontsize=14, fontweight="bold")
        ax.set_xlabel("$\\lambda$", fontsize=12)
        ax.set_ylabel(ylabel, fontsize=12)
        ax.grid(True, alpha=0.3)
    axes.flat[0].legend(fontsize=8)
    axes.flat[1].legend(fontsize=7, ncol=2)

    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(output_path, dpi=300, bbox_inches="tight")
    plt.close(fig)
    return output_path


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        print("usage: python -m scripts.analysis.plot_cycle_curves SWEEP_CSV [PNG]", file=sys.stderr)
        return 2
    source = Path(argv[0])
    target = Path(argv[1]) if len(argv) > 1 else FIGURES_DIR / f"{source.stem}_curves.png"
    saved = plot_cycle_curves(read_csv(source), target)
    print(f"✅ Saved: {saved}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
