"""Internal dispersion of one group: contract, rigid, explode.

The center group's row sum mu_2 = a12 + a22 + a23 sets the fate of
within-group disagreement regardless of what the means do.  Self-image
a22 is tuned to make mu_2 positive, zero, and negative.
"""

from pathlib import Path

import numpy as np

from graphondyn import SimConfig, dispersion_rate, sample_network, simulate, three_group_graphon

OUT = Path(__file__).with_name("out")


def group2_dispersion(states, m):
    block = states[:, m // 3:2 * m // 3]
    return np.linalg.norm(block - block.mean(axis=1, keepdims=True), axis=1)


def main():
    OUT.mkdir(exist_ok=True)
    m = 24
    means = np.array([0.5, 0.0, -0.5])
    u0 = means[np.repeat([0, 1, 2], m // 3)].copy()
    u0[m // 3:2 * m // 3] += 0.3 * (-1.0) ** np.arange(m // 3)

    curves = {}
    for a22 in (0.0, -2.0, -3.0):
        g = three_group_graphon(1.0, 0.0, 1.0, diag=(0.0, a22, 0.0))
        mu, case = dispersion_rate(g, 2)
        traj = simulate(sample_network(g, m), u0, SimConfig(dt=1e-3, t_end=4.0))
        disp = group2_dispersion(traj.states, m)
        curves[a22] = (traj.times, disp, case)
        print(f"a22 = {a22:+.1f}   mu_2 = {mu:+.1f}   {case:8s}   "
              f"dispersion {disp[0]:.3f} -> {disp[-1]:.3e}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        return
    fig, ax = plt.subplots(figsize=(7, 4))
    for a22, (ts, disp, case) in curves.items():
        ax.semilogy(ts, disp, label=f"a22 = {a22} ({case})")
    ax.set_xlabel("t")
    ax.set_ylabel("center-group dispersion")
    ax.legend()
    fig.tight_layout()
    fig.savefig(OUT / "dispersion.png", dpi=120)
    print(f"wrote {OUT / 'dispersion.png'}")


if __name__ == "__main__":
    main()
