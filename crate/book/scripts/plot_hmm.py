"""Plot entropy-rate lower bounds from `chanadv sweep-hmm` CSV output.

    chanadv sweep-hmm --alpha 0.11 --q-range 0.01:0.49:0.01 -o hmm.csv
    python plot_hmm.py hmm.csv hmm.png

The advantage and Ordentlich bounds are drawn relative to the upper end of
the exact bracket, where the differences are visible.
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main(src, dst):
    df = pd.read_csv(src)
    fig, ax = plt.subplots(figsize=(6, 4))
    for col, label in [("advantage", "advantage"), ("ordentlich", "Ordentlich"), ("true_lower", "bracket lower end")]:
        ax.plot(df["x"], df["true_upper"] - df[col], label=label)
    ax.set_yscale("log")
    ax.set_xlabel("sweep variable")
    ax.set_ylabel("distance below bracket upper end (bits)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(dst, dpi=150)


if __name__ == "__main__":
    main(*sys.argv[1:3])
