"""Fixed-step integration of the finite-agent opinion system.

Agent i follows du_i/dt = (1/M) sum_j B_ij (u_j - u_i).  The integrator is
classical fourth-order Runge-Utta with a fixed step, which keeps runs
deterministic and is plenty for this non-stiff linear system; repulsive
(negative) weights may legitimately blow up, and only non-finite values
are treated as failures.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import EVOLVED_TOL, FiniteNetwork, Partition, PiecewiseFn, StepGraphon, sample_network
from .meanfield import decompose, solve_at


class BlowupError(RuntimeError):
    """State became non-finite during integration."""

    def __init__(self, time: float):
        super().__init__(f"non-finite state first reached at t = {time}")
        self.time = time


class ConformabilityError(ValueError):
    """Network size does not refine the graphon partition."""


@dataclass(frozen=True)
class SimConfig:
    """Fixed-step integration settings.

    record_every defaults to the smallest stride keeping at most 1001
    recorded frames.  dt * C < 1 is recommended for accuracy and is only
    warned about, not enforced.
    """

    dt: float = 1e-3
    t_end: float = 1.0
    record_every: int | None = None

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.t_end < 0:
            raise ValueError("t_end must be nonnegative")
        if self.t_end > 0 and self.dt > self.t_end:
            raise ValueError("dt must not exceed t_end")
        if self.record_every is None:
            stride = max(1, math.ceil(self.n_steps / 1000)) if self.n_steps else 1
            object.__setattr__(self, "record_every", stride)
        elif self.record_every < 1:
            raise ValueError("record_every must be >= 1")

    @property
    def n_steps(self) -> int:
        return int(math.floor(self.t_end / self.dt + 1e-9))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded instants and the M-agent states at each of them."""

    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("recorded times must be strictly increasing")
        if not np.all(np.isfinite(self.states)):
            raise ValueError("states must be finite")

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def rhs(net: FiniteNetwork, u) -> np.ndarray:
    """Right-hand side (1/M) sum_j B_ij (u_j - u_i), vectorized."""
    u = np.asarray(u, dtype=float)
    if u.shape != (net.size,):
        raise ValueError(f"state must have length {net.size}, got {u.shape}")
    b = net.weights
    return (b @ u - b.sum(axis=1) * u) / net.size


def simulate(net: FiniteNetwork, u0, cfg: SimConfig) -> Trajectory:
    """Integrate from u0 with classical RK4 at fixed step cfg.dt.

    Records every cfg.record_every-th step starting at t = 0.  Raises
    BlowupError at the first step where the state stops being finite.
    """
    u = np.array(u0, dtype=float).ravel()
    if u.shape != (net.size,):
        raise ValueError(f"initial state must have length {net.size}")
    if cfg.dt * net.row_bound >= 1.0:
        warnings.warn(f"dt * C = {cfg.dt * net.row_bound:.3g} >= 1; "
                      "the step is too coarse for reliable accuracy")

    b = net.weights
    a = (b - np.diag(b.sum(axis=1))) / net.size
    h = cfg.dt

    times = [0.0]
    states = [u.copy()]
    # overflow here is a legitimate outcome (repulsive weights), reported
    # as BlowupError rather than a numpy warning
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, cfg.n_steps + 1):
            k1 = a @ u
            k2 = a @ (u + 0.5 * h * k1)
            k3 = a @ (u + 0.5 * h * k2)
            k4 = a @ (u + h * k3)
            u = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(u)):
                raise BlowupError(step * h)
            if step % cfg.record_every == 0:
                times.append(step * h)
                states.append(u.copy())
    return Trajectory(np.array(times), np.array(states))


def embed(u) -> PiecewiseFn:
    """Step-function embedding: agent i occupies ((i-1)/M, i/M]."""
    u = np.asarray(u, dtype=float).ravel()
    m = len(u)
    if m < 1:
        raise ValueError("need at least one agent")
    return PiecewiseFn(np.arange(1, m + 1) / m, u)


def is_conformable(p: Partition, m: int) -> bool:
    """True when every breakpoint of p is a multiple of 1/m."""
    scaled = p.breakpoints * m
    return bool(np.max(np.abs(scaled - np.round(scaled))) <= 1e-9)


def discretize_initial(u0: PiecewiseFn, m: int) -> np.ndarray:
    """Agent values as cell averages of u0 over the uniform M-cells.

    Cell averaging is the L2 projection onto the embedded step functions;
    it is exact for conformable group-wise-constant data.
    """
    return decompose(u0, Partition.uniform(m)).means


def convergence_study(g: StepGraphon, u0: PiecewiseFn, ms, t: float,
                      dt: float = 1e-3) -> list[tuple[int, float]]:
    """L2 error of the M-agent simulation against the closed-form solution.

    Every M must conform to g's partition so that midpoint sampling
    reproduces g exactly and only integrator plus projection error remain.
    Returns (M, error) pairs in the order given.
    """
    from .core import l2_distance  # local import to avoid a cycle at module load

    reference = solve_at(g, u0, t).solution
    results = []
    for m in ms:
        m = int(m)
        if not is_conformable(g.partition, m):
            raise ConformabilityError(
                f"M = {m} does not refine the partition breakpoints")
        net = sample_network(g, m)
        agents0 = discretize_initial(u0, m)
        if t == 0:
            final = agents0
        else:
            n_steps = int(math.floor(t / dt + 1e-9))
            cfg = SimConfig(dt=dt, t_end=t, record_every=max(1, n_steps))
            final = simulate(net, agents0, cfg).final_state
        results.append((m, l2_distance(embed(final), reference)))
    return results
