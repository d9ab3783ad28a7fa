import numpy as np
import pandas as pd

from scripts.analysis.commands import main as engine_main
from scripts.analysis.interactive_contours import contour_figure, save_plot
from scripts.analysis.plot_cycle_curves import main as curves_main
from scripts.analysis.plot_cycle_curves import plot_cycle_curves


def synthetic_sweep() -> pd.DataFrame:
    rows = []
    for alpha in (0.0, 0.5):
        for omega in (-6.0, 6.0):
            for lam in np.linspace(0.0, 1.0, 5):
                rows.append(
                    {
                        "lambda": lam,
                        "omega_ghz": omega,
                        "alpha_rad": alpha,
                        "w_net": -4e-27 * (1 - alpha * np.sin(np.pi * lam) ** 2),
                        "w_L": 1e-28 * alpha,
                        "w_S": -4e-27,
                        "eta": 5 / 6 - 0.1 * alpha * np.sin(np.pi * lam) ** 2,
                        "t2_eff": 1 / 6,
                        "t4_eff": 0.6,
                        "entropy_gen": 1e-26,
                        "status": "ok",
                    }
                )
    rows.append(dict(rows[-1], eta=np.nan, status="ValidationError"))
    return pd.DataFrame(rows)


def test_cycle_curves_png(tmp_path):
    saved = plot_cycle_curves(synthetic_sweep(), tmp_path / "figures" / "curves.png")
    assert saved.exists()
    assert saved.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_contour_figure_has_two_panels(tmp_path):
    df = synthetic_sweep()
    fig = contour_figure(df[df["alpha_rad"] == 0.5])
    assert len(fig.data) == 2
    assert np.shape(fig.data[0].z) == (2, 5)
    assert "alpha = 0.5000" in fig.layout.title.text

    saved = save_plot(fig, tmp_path / "contours.html")
    assert "plotly" in saved.read_text(encoding="utf-8").lower()


def test_curves_from_a_real_sweep(tmp_path):
    csv = tmp_path / "sweep.csv"
    assert engine_main(["sweep", "--lambda-grid", "0:1:6", "--alpha-list", "0,0.5", "--out", str(csv)]) == 0
    png = tmp_path / "sweep.png"
    assert curves_main([str(csv), str(png)]) == 0
    assert png.exists()


def test_curves_usage():
    assert curves_main([]) == 2
