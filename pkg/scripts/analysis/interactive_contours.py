"""
Interactive Contours
Efficiency and work output over the (lambda, omega) plane from a sweep CSV,
saved as standalone HTML

Usage:
    python run_engine.py sweep --lambda-grid 0:1:101 --omega-grid -20:20:81 --out data/outputs/omega_sweep.csv
    python -m scripts.analysis.interactive_contours data/outputs/omega_sweep.csv
"""

import sys
from pathlib import Path

import pandas as pd
import plotly.graph_objects as go
from plotly.subplots import make_subplots

from .csv_output import read_csv

PROJECT_ROOT = Path(__file__).parent.parent.parent
FIGURES_DIR = PROJECT_ROOT / "data" / "outputs" / "figures"


def contour_figure(df: pd.DataFrame) -> go.Figure:
    """eta and -W as filled contours, lambda on x and omega on y"""
    ok = df[df["status"] == "ok"] if "status" in df.columns else df
    eta = ok.pivot_table(index="omega_ghz", columns="lambda", values="eta")
    work = -ok.pivot_table(index="omega_ghz", columns="lambda", values="w_net")

    fig = make_subplots(rows=1, cols=2, subplot_titles=("Efficiency", "Work output -W"))
    for col, (table, name) in enumerate(((eta, "eta"), (work, "-W")), start=1):
        fig.add_trace(
            go.Contour(
                x=table.columns.to_numpy(),
                y=table.index.to_numpy(),
                z=table.to_numpy(),
                name=name,
                colorscale="Viridis",
                colorbar={"x": 0.45 if col == 1 else 1.0, "title": name},
                hovertemplate="<b>lambda:</b> %{x:.3f}<br><b>omega:</b> %{y:.2f}<br>"
                + f"<b>{name}:</b> "
                + "%{z:.4g}<extra></extra>",
            ),
            row=1,
            col=col,
        )
        fig.update_xaxes(title_text="lambda", row=1, col=col)
        fig.update_yaxes(title_text="omega (GHz)", row=1, col=col)

    alphas = ok["alpha_rad"].unique()
    subtitle = f" (alpha = {alphas[0]:.4f} rad)" if len(alphas) == 1 else ""
    fig.update_layout(title=f"Rotating-field Otto engine{subtitle}", height=500, width=1100)
    return fig


def save_plot(fig: go.Figure, output_path: Path) -> Path:
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    fig.write_html(str(output_path))
    return output_path


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        print("usage: python -m scripts.analysis.interactive_contours SWEEP_CSV [HTML]", file=sys.stderr)
        return 2
    source = Path(argv[0])
    target = Path(argv[1]) if len(argv) > 1 else FIGURES_DIR / f"{source.stem}_contours.html"
    saved = save_plot(contour_figure(read_csv(source)), target)
    print(f"✅ Plot saved to {saved}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
