"""Plot list-size exponent bounds from `chanadv sweep-listbound` CSV output.

    chanadv sweep-listbound --q-range 0.01:0.99:0.01 -o listbound.csv
    python plot_listbound.py listbound.csv listbound.png
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

LABELS = {
    "eta_bound": "advantage",
    "rs_bound": "Rao-Sprumont",
    "mgl_bound": "MGL chain",
    "trivial_bound": "trivial",
}


def main(src, dst):
    df = pd.read_csv(src)
    fig, ax = plt.subplots(figsize=(6, 4))
    for col, label in LABELS.items():
        ax.plot(df["x"], df[col].clip(upper=1.0), label=label)
    ax.set_xlabel("sweep variable")
    ax.set_ylabel("list-size exponent bound")
    ax.set_ylim(0, 1)
    ax.legend()
    fig.tight_layout()
    fig.savefig(dst, dpi=150)


if __name__ == "__main__":
    main(*sys.argv[1:3])
