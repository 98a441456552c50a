"""Step graphons, finite weighted networks, and the structure shared by both.

A step graphon is a symmetric kernel on [0,1]^2 that is constant on the
rectangles of a product partition; it is the continuum representation of a
dense weighted graph (the pixel picture of its adjacency matrix).  This
module holds the value types (partitions, step graphons, finite networks,
piecewise-constant functions, group interaction matrices) and the exact
structural operations on them: pixel embedding, midpoint sampling, group
matrix, Laplacian, cut norm, and L2 geometry.  Everything is immutable and
pure; all integrals are computed exactly from block values and lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Tolerances, stated once and reused everywhere: structural identities
# (symmetry, row sums, reconstruction) must hold to STRUCT_TOL; quantities
# produced by time evolution are checked to EVOLVED_TOL.
STRUCT_TOL = 1e-12
EVOLVED_TOL = 1e-9

# cut_norm enumerates 2^N block subsets; refuse anything bigger.
CUT_NORM_MAX_GROUPS = 20


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class Partition:
    """Ordered breakpoints 0 = i_0 < i_1 < ... < i_N = 1 defining N groups.

    Groups are half-open on the left, group j = (i_{j-1}, i_j]; the point
    x = 0 is assigned to the first group.  Cells narrower than STRUCT_TOL
    are rejected at construction.
    """

    breakpoints: np.ndarray

    def __post_init__(self):
        bp = np.array(self.breakpoints, dtype=float, copy=True).ravel()
        if bp.size < 2:
            raise ValueError("partition needs at least two breakpoints")
        if not np.all(np.isfinite(bp)):
            raise ValueError("breakpoints must be finite")
        if abs(bp[0]) > STRUCT_TOL or abs(bp[-1] - 1.0) > STRUCT_TOL:
            raise ValueError("breakpoints must start at 0 and end at 1")
        bp[0], bp[-1] = 0.0, 1.0
        if np.any(np.diff(bp) <= STRUCT_TOL):
            raise ValueError("breakpoints must be strictly increasing with "
                             f"cells wider than {STRUCT_TOL}")
        object.__setattr__(self, "breakpoints", _readonly(bp))

    @classmethod
    def uniform(cls, n: int) -> "Partition":
        """The n equal cells ((k-1)/n, k/n]."""
        if n < 1:
            raise ValueError("need at least one cell")
        return cls(np.arange(n + 1) / n)

    @property
    def n_groups(self) -> int:
        return len(self.breakpoints) - 1

    @property
    def lengths(self) -> np.ndarray:
        """Group lengths l_j = i_j - i_{j-1}; they sum to 1."""
        return np.diff(self.breakpoints)

    def group_index(self, x) -> np.ndarray:
        """0-based group index of each point in x (x = 0 maps to group 0)."""
        x = np.asarray(x, dtype=float)
        if np.any((x < 0.0) | (x > 1.0)):
            raise ValueError("points must lie in [0, 1]")
        idx = np.searchsorted(self.breakpoints, x, side="left") - 1
        return np.clip(idx, 0, self.n_groups - 1)


@dataclass(frozen=True, eq=False)
class StepGraphon:
    """Symmetric kernel constant on the blocks of a product partition.

    block_values[j1, j2] is the kernel value on group j1 x group j2; the
    matrix must be symmetric and bounded by `bound` in absolute value.
    When `bound` is omitted it defaults to max |block_values|.
    """

    partition: Partition
    block_values: np.ndarray
    bound: float | None = None

    def __post_init__(self):
        b = np.array(self.block_values, dtype=float, copy=True)
        n = self.partition.n_groups
        if b.shape != (n, n):
            raise ValueError(f"block_values must be {n}x{n}, got {b.shape}")
        if not np.all(np.isfinite(b)):
            raise ValueError("block values must be finite")
        if np.max(np.abs(b - b.T), initial=0.0) > STRUCT_TOL:
            raise ValueError("block values must be symmetric")
        k = float(np.max(np.abs(b), initial=0.0))
        bound = k if self.bound is None else float(self.bound)
        if bound < 0 or k > bound + STRUCT_TOL:
            raise ValueError(f"bound {bound} does not dominate max |value| {k}")
        object.__setattr__(self, "block_values", _readonly(b))
        object.__setattr__(self, "bound", bound)

    @property
    def n_groups(self) -> int:
        return self.partition.n_groups

    def evaluate(self, x, y) -> np.ndarray:
        """Kernel value at (x, y), broadcasting over array arguments."""
        gi = self.partition.group_index(x)
        gj = self.partition.group_index(y)
        return self.block_values[gi, gj]

    @classmethod
    def constant(cls, c: float) -> "StepGraphon":
        return cls(Partition.uniform(1), np.array([[float(c)]]))


@dataclass(frozen=True, eq=False)
class FiniteNetwork:
    """Weighted adjacency matrix of an unoriented M-agent network.

    weights must be symmetric; row_bound C dominates the normalized
    absolute row sums (1/M) sum_k |weights[j, k]| and defaults to their
    maximum.
    """

    weights: np.ndarray
    row_bound: float | None = None

    def __post_init__(self):
        w = np.array(self.weights, dtype=float, copy=True)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise ValueError("weights must be a square matrix of size >= 1")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.max(np.abs(w - w.T), initial=0.0) > STRUCT_TOL:
            raise ValueError("weights must be symmetric (edges are unoriented)")
        m = w.shape[0]
        c = float(np.max(np.abs(w).sum(axis=1)) / m)
        bound = c if self.row_bound is None else float(self.row_bound)
        if c > bound + STRUCT_TOL:
            raise ValueError(f"row_bound {bound} below max normalized "
                             f"absolute row sum {c}")
        object.__setattr__(self, "weights", _readonly(w))
        object.__setattr__(self, "row_bound", bound)

    @property
    def size(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True, eq=False)
class PiecewiseFn:
    """Step function on [0, 1] stored as right cell edges plus values.

    values[k] is the constant on (grid[k-1], grid[k]], with an implicit
    left edge at 0; the first cell includes x = 0.  The grid may stop
    short of 1, in which case the function is only defined on
    [0, grid[-1]] and operations needing the full interval reject it.
    """

    grid: np.ndarray
    values: np.ndarray
    partition: Partition | None = None

    def __post_init__(self):
        g = np.array(self.grid, dtype=float, copy=True).ravel()
        v = np.array(self.values, dtype=float, copy=True).ravel()
        if g.size != v.size or g.size == 0:
            raise ValueError("grid and values must be 1-d with equal length >= 1")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        if g[0] <= 0.0 or g[-1] > 1.0 + STRUCT_TOL or np.any(np.diff(g) <= 0):
            raise ValueError("grid must be strictly increasing within (0, 1]")
        if g[-1] > 1.0 or abs(g[-1] - 1.0) <= STRUCT_TOL:
            g[-1] = 1.0
        object.__setattr__(self, "grid", _readonly(g))
        object.__setattr__(self, "values", _readonly(v))

    @classmethod
    def constant(cls, c: float) -> "PiecewiseFn":
        return cls(np.array([1.0]), np.array([float(c)]))

    @property
    def edges(self) -> np.ndarray:
        """All cell edges including the implicit 0."""
        return np.concatenate(([0.0], self.grid))

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def covers_unit(self) -> bool:
        return self.grid[-1] == 1.0

    def evaluate(self, x) -> np.ndarray:
        """Value at each point of x; x must lie within the covered domain."""
        x = np.asarray(x, dtype=float)
        if np.any((x < 0.0) | (x > self.grid[-1])):
            raise ValueError("points outside the function's domain")
        idx = np.searchsorted(self.grid, x, side="left")
        return self.values[np.minimum(idx, len(self.values) - 1)]

    def integral(self) -> float:
        return float(self.values @ self.widths)

    def resample(self, edges: np.ndarray) -> np.ndarray:
        """Cell values on a refinement (evaluated at refined-cell midpoints)."""
        mids = (edges[:-1] + edges[1:]) / 2.0
        return self.evaluate(mids)


@dataclass(frozen=True, eq=False)
class GroupMatrix:
    """Group interaction matrix: entries[j1, j2] = b[j1, j2] * l_{j2}.

    Row sums are the within-group contraction rates; the matrix need not
    be symmetric when group lengths differ.
    """

    entries: np.ndarray
    row_sums: np.ndarray = field(default=None)

    def __post_init__(self):
        e = np.array(self.entries, dtype=float, copy=True)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("entries must be square")
        if not np.all(np.isfinite(e)):
            raise ValueError("entries must be finite")
        rs = e @ np.ones(e.shape[0])
        if self.row_sums is not None:
            given = np.asarray(self.row_sums, dtype=float)
            if given.shape != rs.shape or np.max(np.abs(given - rs), initial=0.0) > STRUCT_TOL:
                raise ValueError("row_sums inconsistent with entries")
        object.__setattr__(self, "entries", _readonly(e))
        object.__setattr__(self, "row_sums", _readonly(rs))

    @property
    def n_groups(self) -> int:
        return self.entries.shape[0]


def group_matrix(g: StepGraphon) -> GroupMatrix:
    """Group interaction matrix of a step graphon (columns scaled by length)."""
    return GroupMatrix(g.block_values * g.partition.lengths[np.newaxis, :])


def laplacian(m) -> np.ndarray:
    """Laplacian diag(m 1) - m; rows sum to zero, diagonal of m is irrelevant."""
    entries = m.entries if isinstance(m, GroupMatrix) else np.asarray(m, dtype=float)
    return np.diag(entries.sum(axis=1)) - entries


def pixel_graphon(net: FiniteNetwork) -> StepGraphon:
    """Embed a finite network as the step graphon on the uniform M-partition."""
    return StepGraphon(Partition.uniform(net.size), net.weights)


def sample_network(g: StepGraphon, m: int) -> FiniteNetwork:
    """Evaluate g at cell midpoints ((i - 1/2)/M, (j - 1/2)/M) as an M-network.

    Midpoints avoid the boundary ambiguity of the half-open cells, and the
    result reproduces g exactly whenever every breakpoint of g's partition
    is a multiple of 1/M.
    """
    if m < 1:
        raise ValueError("network size must be >= 1")
    mids = (np.arange(m) + 0.5) / m
    gi = g.partition.group_index(mids)
    return FiniteNetwork(g.block_values[np.ix_(gi, gi)])


def _scaled_blocks(g: StepGraphon) -> np.ndarray:
    lengths = g.partition.lengths
    return g.block_values * np.outer(lengths, lengths)


def cut_norm(g: StepGraphon) -> float:
    """Exact cut norm sup_{S,T} |integral of g over S x T|.

    For a step graphon the objective is bilinear in the per-block measure
    fractions of S and T, so the supremum is attained with S and T unions
    of whole blocks.  S is enumerated over all 2^N block subsets; for each
    S the optimal T follows from the signs of the induced column sums.
    """
    n = g.n_groups
    if n > CUT_NORM_MAX_GROUPS:
        raise ValueError(f"cut_norm enumerates 2^N subsets; N = {n} exceeds "
                         f"the budget of {CUT_NORM_MAX_GROUPS} groups")
    scaled = _scaled_blocks(g)
    best = 0.0
    chunk = 1 << min(n, 14)
    for start in range(0, 1 << n, chunk):
        codes = np.arange(start, min(start + chunk, 1 << n), dtype=np.uint32)
        masks = ((codes[:, np.newaxis] >> np.arange(n)) & 1).astype(float)
        cols = masks @ scaled
        vals = np.maximum(np.maximum(cols, 0.0).sum(axis=1),
                          np.maximum(-cols, 0.0).sum(axis=1))
        best = max(best, float(vals.max()))
    return best


def l1_norm(g: StepGraphon) -> float:
    """L1 norm of the kernel, exactly from block values and lengths."""
    return float(np.abs(_scaled_blocks(g)).sum())


def l2_norm(g: StepGraphon) -> float:
    """L2 norm of the kernel on [0,1]^2."""
    lengths = g.partition.lengths
    return float(np.sqrt((g.block_values ** 2 * np.outer(lengths, lengths)).sum()))


def sup_norm(g: StepGraphon) -> float:
    """Essential supremum of |g|."""
    return float(np.max(np.abs(g.block_values), initial=0.0))


def merge_grids(*grids) -> np.ndarray:
    """Sorted union of cell-edge arrays (the common refinement's edges)."""
    return np.unique(np.concatenate([np.asarray(a, dtype=float).ravel()
                                     for a in grids]))


def l2_distance(f: PiecewiseFn, h: PiecewiseFn) -> float:
    """L2([0,1]) distance of two step functions, exact on their refinement."""
    if not (f.covers_unit and h.covers_unit):
        raise ValueError("both functions must cover [0, 1]")
    edges = merge_grids(f.edges, h.edges)
    diff = f.resample(edges) - h.resample(edges)
    return float(np.sqrt(diff ** 2 @ np.diff(edges)))
