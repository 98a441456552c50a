"""Exact solution of the mean-field opinion equation for step graphons.

The evolution du/dt(x) = integral W(x,y) (u(y) - u(x)) dy splits along the
orthogonal decomposition of L2(0,1) into the space of functions constant on
each group plus, per group, the zero-mean remainders supported there.  The
group means evolve by the matrix exponential of the group Laplacian, and
each group's remainder simply shrinks (or grows) by exp(-mu_j t), where
mu_j is the j-th row sum of the group matrix.  No time stepping is
involved anywhere; states at any t come in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import (
    STRUCT_TOL,
    GroupMatrix,
    Partition,
    PiecewiseFn,
    StepGraphon,
    group_matrix,
    laplacian,
    merge_grids,
)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Split of a function into group means plus zero-mean group residuals.

    means[j] is the average over group j; residuals[j] is a step function
    equal to u - means[j] inside group j and 0 outside, so that the mean
    step function plus all residuals reconstructs the input exactly on the
    common grid.
    """

    partition: Partition
    means: np.ndarray
    residuals: tuple[PiecewiseFn, ...]

    def reconstruct(self) -> PiecewiseFn:
        grid = self.residuals[0].grid
        mids = (np.concatenate(([0.0], grid[:-1])) + grid) / 2.0
        vals = self.means[self.partition.group_index(mids)]
        for r in self.residuals:
            vals = vals + r.values
        return PiecewiseFn(grid, vals, partition=self.partition)


@dataclass(frozen=True, eq=False)
class EvolvedState:
    """Closed-form state at one time: means, residual scales, full function."""

    time: float
    means: np.ndarray
    mu: np.ndarray
    residual_scale: np.ndarray
    solution: PiecewiseFn


def decompose(u0: PiecewiseFn, p: Partition) -> Decomposition:
    """Group averages of u0 plus per-group zero-mean residuals.

    Quadrature is exact on the common refinement of u0's grid with the
    partition breakpoints.
    """
    if not u0.covers_unit:
        raise ValueError("initial condition must cover [0, 1]; a group has "
                         "no overlap with its sample grid otherwise")
    edges = merge_grids(u0.edges, p.breakpoints)
    vals = u0.resample(edges)
    widths = np.diff(edges)
    gidx = p.group_index((edges[:-1] + edges[1:]) / 2.0)

    lengths = p.lengths
    mass = np.zeros(p.n_groups)
    np.add.at(mass, gidx, vals * widths)
    means = mass / lengths

    grid = edges[1:]
    residuals = []
    for j in range(p.n_groups):
        inside = gidx == j
        residuals.append(PiecewiseFn(grid, np.where(inside, vals - means[j], 0.0),
                                     partition=p))
    return Decomposition(p, means, tuple(residuals))


def residual_rates(m: GroupMatrix) -> np.ndarray:
    """Per-group residual rates mu_j: the row sums of the group matrix."""
    return m.row_sums.copy()


def _is_symmetric(a: np.ndarray) -> bool:
    scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
    return float(np.max(np.abs(a - a.T), initial=0.0)) <= STRUCT_TOL * scale


def evolve_means(m: GroupMatrix, means0, t: float) -> np.ndarray:
    """exp(-Laplacian(m) t) applied to the group means.

    Uses the spectral decomposition when the Laplacian is symmetric and a
    scaling-and-squaring Pade matrix exponential otherwise (the Laplacian
    is generally not symmetric when group lengths differ).
    """
    means0 = np.asarray(means0, dtype=float)
    if t < 0:
        raise ValueError("time must be nonnegative")
    if t == 0:
        return means0.copy()
    delta = laplacian(m)
    if _is_symmetric(delta):
        lam, vec = np.linalg.eigh(delta)
        return vec @ (np.exp(-lam * t) * (vec.T @ means0))
    return scipy.linalg.expm(-delta * t) @ means0


def solve_at(g: StepGraphon, u0: PiecewiseFn, t: float) -> EvolvedState:
    """State of the mean-field equation at time t, in closed form.

    The solution on group j is (evolved mean of group j) plus the initial
    residual there scaled by exp(-mu_j t); at t = 0 it reproduces u0 on
    the common grid.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    m = group_matrix(g)
    dec = decompose(u0, g.partition)
    means_t = evolve_means(m, dec.means, t)
    mu = residual_rates(m)
    scale = np.exp(-mu * t)

    grid = dec.residuals[0].grid
    mids = (np.concatenate(([0.0], grid[:-1])) + grid) / 2.0
    gidx = g.partition.group_index(mids)
    vals = means_t[gidx]
    for j, r in enumerate(dec.residuals):
        vals = vals + scale[j] * r.values
    solution = PiecewiseFn(grid, vals, partition=g.partition)
    return EvolvedState(time=float(t), means=means_t, mu=mu,
                        residual_scale=scale, solution=solution)


def energy(f: PiecewiseFn) -> float:
    """Squared L2 norm of a step function, exact on its grid."""
    return float(f.values ** 2 @ f.widths)


def energy_growth_bound(g: StepGraphon, energy0: float, t: float) -> float:
    """Provable ceiling on energy(u(t)) given energy(u0).

    With C the largest weighted absolute row sum of the blocks, the squared
    L2 norm of any solution satisfies d/dt ||u||^2 <= 4 C ||u||^2 (each of
    the two interaction terms is bounded by C ||u||^2), so energy can grow
    at most like exp(4 C t).  The exponent is sharp: a two-group kernel
    with pure negative coupling attains it.
    """
    c = weighted_row_bound(g)
    return float(energy0 * np.exp(4.0 * c * t))


def weighted_row_bound(g: StepGraphon) -> float:
    """max_j sum_k |b_jk| l_k, the graphon-side row-sum constant."""
    return float(np.max(np.abs(g.block_values) @ g.partition.lengths, initial=0.0))
