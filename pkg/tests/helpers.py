"""Shared constructions for the test suite."""

import numpy as np

from groverdyn import MarkedSet, QuantumState


def random_state(n: int, rng: np.random.Generator) -> QuantumState:
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return QuantumState.renormalized(n, amps)


def random_real_state(n: int, rng: np.random.Generator) -> QuantumState:
    amps = rng.standard_normal(1 << n).astype(complex)
    return QuantumState.renormalized(n, amps)


def random_marked_set(n: int, r: int, rng: np.random.Generator) -> MarkedSet:
    num_states = 1 << n
    indices = rng.choice(num_states, size=r, replace=False)
    return MarkedSet(num_states, tuple(int(i) for i in indices))


def two_cycle_state(marked: MarkedSet) -> QuantumState:
    """State with zero marked and unmarked means (hence a two-cycle).

    Supported on two marked and two unmarked indices with opposite
    amplitudes inside each group.
    """
    if marked.r < 2 or marked.num_states - marked.r < 2:
        raise ValueError("need at least two marked and two unmarked indices")
    amps = np.zeros(marked.num_states, dtype=complex)
    m_idx = marked.indices_array
    u_idx = marked.unmarked_indices
    amps[m_idx[0]] = 0.5
    amps[m_idx[1]] = -0.5
    amps[u_idx[0]] = 0.5
    amps[u_idx[1]] = -0.5
    n_qubits = marked.num_states.bit_length() - 1
    return QuantumState(n_qubits, amps)


def constant_p_state(n: int) -> tuple[QuantumState, MarkedSet]:
    """Single-marked state satisfying abar_m = i*sqrt((N-1)/1)*abar_u.

    The sinusoid amplitude vanishes, so the success probability is
    constant although both means are nonzero.
    """
    num_states = 1 << n
    u = 1.0 / np.sqrt(2 * (num_states - 1))
    amps = np.full(num_states, u, dtype=complex)
    amps[0] = 1j * np.sqrt(num_states - 1) * u
    return QuantumState(n, amps), MarkedSet(num_states, (0,))
