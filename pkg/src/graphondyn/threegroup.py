"""Closed-form spectral analysis for three symmetric groups.

Three groups coupled by a symmetric zero-diagonal rate matrix

    A = [[0, a12, a13], [a12, 0, a23], [a13, a23, 0]]

have group means following dm/dt = -L m with L = diag(A 1) - A.  This
Laplacian admits an explicit eigensystem: lambda1 = 0 with the constant
vector, and

    lambda_{2,3} = (a12 + a13 + a23) +- D,
    D = sqrt(((a12 - a13)^2 + (a12 - a23)^2 + (a13 - a23)^2) / 2),

with equally explicit unnormalized eigenvectors.  The formulas break
down when D = 0 (repeated eigenvalue) or when a printed vector vanishes
outright; both cases are repaired by an orthogonal completion and
flagged degenerate.

Long-time behavior is decided by the sign of lambda3, the smaller
nonzero eigenvalue: positive collapses all three means onto their
common barycenter, zero freezes one mode and leaves three distinct
limits, negative makes the spread grow without bound.  The within-group
story is separate: group j contracts, translates rigidly, or explodes
with the sign of its row sum mu_j, diagonal self-coupling included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Partition, StepGraphon, _readonly, group_matrix


def discriminant(a12: float, a13: float, a23: float) -> float:
    """Eigenvalue-splitting radical, half the sum of squared differences.

    This form keeps the radicand visibly nonnegative; expanding it gives
    sqrt(a12^2 + a13^2 + a23^2 - a12*a13 - a12*a23 - a13*a23).
    """
    return math.sqrt(
        ((a12 - a13) ** 2 + (a12 - a23) ** 2 + (a13 - a23) ** 2) / 2.0)


def laplacian3(a12: float, a13: float, a23: float) -> np.ndarray:
    """Explicit 3x3 Laplacian of the symmetric coupling matrix."""
    return np.array([
        [a12 + a13, -a12, -a13],
        [-a12, a12 + a23, -a23],
        [-a13, -a23, a13 + a23],
    ])


def three_group_graphon(a12: float, a13: float, a23: float,
                        diag=(0.0, 0.0, 0.0)) -> StepGraphon:
    """Equal-thirds step graphon whose group matrix equals the couplings.

    Group lengths are 1/3, so block values carry a factor 3; the group
    Laplacian of the result is then exactly laplacian3(a12, a13, a23),
    whatever the diagonal (it cancels there, but it does shift mu_j).
    """
    d1, d2, d3 = (float(x) for x in diag)
    b = 3.0 * np.array([[d1, a12, a13], [a12, d2, a23], [a13, a23, d3]],
                       dtype=float)
    return StepGraphon(Partition.uniform(3), b)


@dataclass(frozen=True, eq=False)
class Spectrum3:
    """Closed-form eigensystem of the three-group Laplacian.

    V holds eigenvectors as columns (v1 | v2 | v3), unnormalized exactly
    as the formulas produce them so they can be compared term by term;
    norms2 holds their squared norms for projection use.  degenerate is
    True when any column had to be replaced by an orthogonal completion.
    """

    a12: float
    a13: float
    a23: float
    disc: float
    lambdas: np.ndarray
    V: np.ndarray
    norms2: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lambdas", _readonly(np.asarray(self.lambdas, dtype=float)))
        object.__setattr__(self, "V", _readonly(np.asarray(self.V, dtype=float)))
        object.__setattr__(self, "norms2", _readonly(np.asarray(self.norms2, dtype=float)))


def spectrum3(a12: float, a13: float, a23: float) -> Spectrum3:
    """Eigenvalues and unnormalized eigenvectors from the closed forms.

    lambda1 = 0 always (row sums of the Laplacian vanish).  When the
    discriminant vanishes the two printed vectors are collinear or zero,
    so an orthonormal basis of the complement of the constant vector is
    substituted.  A printed vector can also vanish in isolation (it
    happens when a13 = a23 and a12 - a23 = D, and symmetrically); the
    missing eigenvector is then the cross product of the other two.
    """
    d = discriminant(a12, a13, a23)
    s = a12 + a13 + a23
    lambdas = np.array([0.0, s + d, s - d])

    v1 = np.ones(3)
    v2 = np.array([a23 - a12 - d, a12 - a13 + d, a13 - a23])
    v3 = np.array([a23 - a12 + d, a12 - a13 - d, a13 - a23])

    tiny = 1e-12 * max(1.0, abs(a12) + abs(a13) + abs(a23))
    degenerate = False
    if d <= tiny:
        v2 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)
        v3 = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)
        degenerate = True
    else:
        # at most one can vanish when d > 0; eigenvectors of a symmetric
        # matrix are orthogonal, so the cross product fills the gap
        if np.linalg.norm(v2) <= tiny:
            v2 = np.cross(v1, v3)
            degenerate = True
        elif np.linalg.norm(v3) <= tiny:
            v3 = np.cross(v1, v2)
            degenerate = True

    V = np.column_stack([v1, v2, v3])
    return Spectrum3(a12, a13, a23, d, lambdas, V, (V ** 2).sum(axis=0),
                     degenerate)


def _sign_case(mu: float, eps: float) -> str:
    if mu > eps:
        return "contract"
    if mu < -eps:
        return "explode"
    return "rigid"


@dataclass(frozen=True, eq=False)
class ScenarioReport:
    """Qualitative long-time classification of a three-group system."""

    spectrum: Spectrum3
    means0: np.ndarray
    barycenter_case: str
    threshold_a13: float | None
    mu: np.ndarray
    group_cases: tuple[str, str, str]
    u_infinity: np.ndarray | None
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "means0", _readonly(np.asarray(self.means0, dtype=float)))
        object.__setattr__(self, "mu", _readonly(np.asarray(self.mu, dtype=float)))
        if self.u_infinity is not None:
            object.__setattr__(self, "u_infinity",
                               _readonly(np.asarray(self.u_infinity, dtype=float)))

    def to_json(self) -> dict:
        """Plain-type mapping ready for json.dumps."""
        return {
            "lambda": [float(x) for x in self.spectrum.lambdas],
            "disc": float(self.spectrum.disc),
            "threshold_a13": (None if self.threshold_a13 is None
                              else float(self.threshold_a13)),
            "barycenter_case": self.barycenter_case,
            "mu": [float(x) for x in self.mu],
            "group_cases": list(self.group_cases),
            "u_infinity": (None if self.u_infinity is None
                           else [float(x) for x in self.u_infinity]),
            "degenerate": bool(self.spectrum.degenerate),
            "warnings": list(self.warnings),
        }


def classify(a12: float, a13: float, a23: float, means0,
             eps: float | None = None,
             diag=(0.0, 0.0, 0.0)) -> ScenarioReport:
    """Scenario report for three groups started at the given means.

    The barycenter case follows the sign of lambda3 with a symmetric
    tolerance band eps around zero (default 1e-10 scaled by the coupling
    magnitudes; exact zero thresholds are measure-zero in floats).  The
    limit vector is the projection of means0 onto the kernel modes, so
    collapse gives the flat barycenter vector and the zero-lambda3 case
    adds the frozen mode on top.  diag feeds the self-coupling terms
    into mu only; the mean dynamics never see it.

    Classification is sharpest in the regime min(a12, a23) >= 0 with
    a12 + a23 > 0, where lambda2 > 0 is guaranteed; outside it the
    report still computes but carries a warning.
    """
    means0 = np.asarray(means0, dtype=float).ravel()
    if means0.shape != (3,):
        raise ValueError("means0 must have exactly three entries")
    if not np.all(np.isfinite(means0)):
        raise ValueError("means0 must be finite")
    if eps is None:
        eps = 1e-10 * max(1.0, abs(a12) + abs(a13) + abs(a23))

    spec = spectrum3(a12, a13, a23)
    notes: list[str] = []
    if min(a12, a23) < 0 or a12 + a23 <= 0:
        notes.append("outside the center-coupling regime "
                     "(need min(a12, a23) >= 0 and a12 + a23 > 0); "
                     "lambda2 > 0 is not guaranteed")
    if spec.degenerate:
        notes.append("eigenvector formulas degenerate; "
                     "orthogonal completion substituted")

    lam3 = float(spec.lambdas[2])
    if lam3 > eps:
        case = "collapse"
    elif lam3 < -eps:
        case = "divergence"
    else:
        case = "three_limits"

    threshold = None
    if a12 + a23 != 0.0:
        threshold = -a12 * a23 / (a12 + a23)

    d1, d2, d3 = (float(x) for x in diag)
    mu = np.array([d1 + a12 + a13, d2 + a12 + a23, d3 + a13 + a23])
    group_cases = tuple(_sign_case(float(m), eps) for m in mu)

    if case == "divergence":
        u_inf = None
    else:
        u_inf = np.zeros(3)
        for k in range(3):
            if abs(spec.lambdas[k]) <= eps:
                v = spec.V[:, k]
                u_inf = u_inf + v * (v @ means0) / spec.norms2[k]

    return ScenarioReport(spec, means0, case, threshold, mu, group_cases,
                          u_inf, tuple(notes))


def dispersion_rate(g: StepGraphon, j: int,
                    eps: float | None = None) -> tuple[float, str]:
    """Within-group rate mu_j for a three-group graphon, with its case.

    j is 1-based.  mu_j is the j-th row sum of the group matrix with the
    diagonal included; deviations from the group-j mean evolve exactly
    as exp(-mu_j t), so the sign decides contraction, rigid translation,
    or explosion of the group's internal spread.
    """
    if g.partition.n_groups != 3:
        raise ValueError("dispersion_rate needs exactly three groups")
    if j not in (1, 2, 3):
        raise ValueError("group index must be 1, 2, or 3")
    m = group_matrix(g)
    mu = float(m.row_sums[j - 1])
    if eps is None:
        eps = 1e-10 * max(1.0, float(np.abs(m.entries[j - 1]).sum()))
    return mu, _sign_case(mu, eps)
