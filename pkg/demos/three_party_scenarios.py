"""Sweep the wing-to-wing coupling of a three-party system.

Two wings each talk to a center party with unit weight; the direct
wing-to-wing weight a13 is swept from attraction through the critical
value -1/2 into repulsion.  Prints the classification at each stop and
plots the mean trajectories for the three qualitative regimes.
"""

from pathlib import Path

import numpy as np

from graphondyn import classify, evolve_means, group_matrix, three_group_graphon

OUT = Path(__file__).with_name("out")
MEANS0 = np.array([1.0, 0.2, -0.8])


def main():
    OUT.mkdir(exist_ok=True)
    print(f"initial party means {MEANS0.tolist()}, a12 = a23 = 1, sweeping a13\n")
    for a13 in (1.0, 0.25, 0.0, -0.25, -0.5, -0.75, -1.0):
        rep = classify(1.0, a13, 1.0, MEANS0)
        s = rep.spectrum
        line = (f"a13 = {a13:+.2f}   lambda = "
                f"({s.lambdas[0]:.3f}, {s.lambdas[1]:.3f}, {s.lambdas[2]:.3f})"
                f"   {rep.barycenter_case}")
        if rep.u_infinity is not None:
            line += f"   limits {np.round(rep.u_infinity, 4).tolist()}"
        print(line)
    print("\ncritical wing coupling: threshold_a13 ="
          f" {classify(1.0, 0.0, 1.0, MEANS0).threshold_a13}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib missing, skipping plot")
        return
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.6), sharex=True)
    horizons = {0.0: 6.0, -0.5: 6.0, -1.0: 3.0}
    for ax, a13 in zip(axes, horizons):
        m = group_matrix(three_group_graphon(1.0, a13, 1.0))
        ts = np.linspace(0.0, horizons[a13], 200)
        path = np.array([evolve_means(m, MEANS0, t) for t in ts])
        for j, label in enumerate(("wing 1", "center", "wing 2")):
            ax.plot(ts, path[:, j], label=label)
        ax.set_title(f"a13 = {a13}: {classify(1.0, a13, 1.0, MEANS0).barycenter_case}")
        ax.set_xlabel("t")
    axes[0].set_ylabel("party mean")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(OUT / "scenarios.png", dpi=120)
    print(f"wrote {OUT / 'scenarios.png'}")


if __name__ == "__main__":
    main()
