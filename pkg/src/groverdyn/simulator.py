"""Exact Grover iteration on a state vector and trajectory recording.

The oracle is applied as a phase flip on the register alone (the ancilla
never needs to be represented) and the diffusion step is the reflection
a_i -> 2*mean - a_i, computed in O(N) from the mean rather than through
an N x N operator.  One ``grover_iterate`` is the composition of the two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import (
    MarkedSet,
    MomentSummary,
    QuantumState,
    _as_index,
    _check_compatible,
    _moments_from_array,
)


def apply_oracle(state: QuantumState, marked: MarkedSet) -> QuantumState:
    """Flip the sign of every marked amplitude (phase rotation by pi)."""
    _check_compatible(state, marked)
    amps = state.amplitudes.copy()
    amps[marked.indices_array] = -amps[marked.indices_array]
    return QuantumState._wrap(state.n, amps)


def apply_diffusion(state: QuantumState) -> QuantumState:
    """Reflect every amplitude about the mean: a_i -> 2*mean - a_i."""
    amps = 2.0 * np.mean(state.amplitudes) - state.amplitudes
    return QuantumState._wrap(state.n, amps)


def grover_iterate(state: QuantumState, marked: MarkedSet) -> QuantumState:
    """One full Grover iteration: oracle phase flip, then diffusion."""
    _check_compatible(state, marked)
    amps = state.amplitudes.copy()
    _kernels.run_grover(amps, marked.indices_array, 1)
    return QuantumState._wrap(state.n, amps)


def success_probability(state: QuantumState, marked: MarkedSet) -> float:
    """Probability that measuring the register yields a marked state."""
    _check_compatible(state, marked)
    return float(np.sum(np.abs(state.amplitudes[marked.indices_array]) ** 2))


@dataclass(frozen=True)
class TrajectoryStep:
    """State summary after ``t`` Grover iterations."""

    t: int
    p_marked: float
    moments: MomentSummary
    state: QuantumState | None = None


@dataclass(frozen=True)
class Trajectory:
    """Per-iteration record of an evolution under a fixed marked set."""

    n: int
    marked: MarkedSet
    steps: tuple[TrajectoryStep, ...]

    @property
    def t_max(self) -> int:
        return self.steps[-1].t

    def p_marked(self) -> np.ndarray:
        """Success probability at every recorded step, as an array."""
        return np.array([s.p_marked for s in self.steps])

    def write_csv(self, path) -> None:
        """Write one row per step with 17-significant-digit floats."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(
                "t,p_marked,abar_m_re,abar_m_im,abar_u_re,abar_u_im,sigma_m,sigma_u\n"
            )
            for step in self.steps:
                m = step.moments
                cols = (
                    step.p_marked,
                    m.a_bar_m.real,
                    m.a_bar_m.imag,
                    m.a_bar_u.real,
                    m.a_bar_u.imag,
                    m.sigma_m,
                    m.sigma_u,
                )
                fh.write(str(step.t) + "," + ",".join(format(c, ".17g") for c in cols) + "\n")


def evolve(
    state: QuantumState,
    marked: MarkedSet,
    t_max: int,
    record_full_states: bool = False,
) -> Trajectory:
    """Iterate the Grover operator ``t_max`` times, recording every step.

    The record at t=0 is the initial state.  By default only the success
    probability and the moment summary are stored per step; full state
    snapshots (2^n amplitudes per step) are kept only when
    ``record_full_states`` is set.
    """
    _check_compatible(state, marked)
    t_max = _as_index(t_max, "t_max")
    if t_max < 0:
        raise ValueError(f"t_max must be >= 0, got {t_max}")

    idx = marked.indices_array
    amps = state.amplitudes.copy()
    steps = []
    for t in range(t_max + 1):
        if t > 0:
            _kernels.run_grover(amps, idx, 1)
        p = float(np.sum(np.abs(amps[idx]) ** 2))
        snapshot = QuantumState._wrap(state.n, amps.copy()) if record_full_states else None
        steps.append(TrajectoryStep(t, p, _moments_from_array(amps, marked), snapshot))
    return Trajectory(state.n, marked, tuple(steps))
