"""Classification of initial states by their behavior under Grover iteration.

A state can be a fixed point (two distinct classes), a two-cycle, a
constant-success-probability state, part of a periodic cycle when the
rotation frequency is a rational multiple of pi, or generic
(quasi-periodic).  When several conditions hold the most specific wins:
fixed point > two-cycle > constant-P > periodic cycle > generic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from . import _kernels
from .core import MarkedSet, QuantumState, _check_compatible, moments

# Acceptance window for treating omega/pi as the rational it rounds to,
# and the largest denominator tried by the continued-fraction expansion.
_RATIONAL_ATOL = 1e-12
_Q_MAX = 64


class StateKind(Enum):
    FIXED_POINT_A = "FixedPointClassA"
    FIXED_POINT_B = "FixedPointClassB"
    TWO_CYCLE = "TwoCycle"
    CONSTANT_P = "ConstantP"
    PERIODIC_CYCLE = "PeriodicCycle"
    GENERIC = "Generic"


@dataclass(frozen=True)
class StateClass:
    """Classification verdict plus the moment values that produced it."""

    kind: StateKind
    period: int | None
    evidence: dict

    def __post_init__(self):
        if self.kind in (StateKind.FIXED_POINT_A, StateKind.FIXED_POINT_B):
            assert self.period == 1
        elif self.kind is StateKind.TWO_CYCLE:
            assert self.period == 2
        elif self.kind is StateKind.PERIODIC_CYCLE:
            assert self.period is not None and self.period >= 3


def _rational_omega(omega: float, q_max: int) -> tuple[int, int] | None:
    frac = Fraction(omega / math.pi).limit_denominator(q_max)
    if abs(omega / math.pi - float(frac)) < _RATIONAL_ATOL and 0 < frac < 1:
        return frac.numerator, frac.denominator
    return None


def classify(state: QuantumState, marked: MarkedSet, tol: float = 1e-9) -> StateClass:
    """Classify ``state`` under the Grover iteration with ``marked``.

    ``tol`` bounds the moment magnitudes treated as zero (default 1e-9,
    looser than fidelity tolerances because the moments accumulate
    N-term summation error).
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    _check_compatible(state, marked)
    num_states, r = state.dim, marked.r
    mom = moments(state, marked)
    amps = state.amplitudes
    abar_m_abs = abs(mom.a_bar_m)
    abar_u_abs = abs(mom.a_bar_u)
    max_marked_abs = float(np.max(np.abs(amps[marked.indices_array])))
    max_unmarked_abs = float(np.max(np.abs(amps[marked.unmarked_indices])))

    # Residual of abar_m = +/- i*sqrt((N-r)/r)*abar_u (vanishing sinusoid).
    ratio = math.sqrt((num_states - r) / r)
    constp_residual = min(
        abs(mom.a_bar_m - 1j * ratio * mom.a_bar_u),
        abs(mom.a_bar_m + 1j * ratio * mom.a_bar_u),
    )

    omega = 2.0 * math.asin(math.sqrt(r / num_states))
    rational = _rational_omega(omega, _Q_MAX)

    evidence = {
        "abar_m_abs": abar_m_abs,
        "abar_u_abs": abar_u_abs,
        "max_marked_abs": max_marked_abs,
        "max_unmarked_abs": max_unmarked_abs,
        "constp_residual": constp_residual,
        "sigma_u": mom.sigma_u,
        "omega_over_pi": omega / math.pi,
        "rational_pq": rational,
        "tol": tol,
    }

    if abar_m_abs < tol and max_unmarked_abs < tol:
        return StateClass(StateKind.FIXED_POINT_A, 1, evidence)
    if max_marked_abs < tol and abar_u_abs < tol:
        return StateClass(StateKind.FIXED_POINT_B, 1, evidence)
    if abar_m_abs < tol and abar_u_abs < tol:
        return StateClass(StateKind.TWO_CYCLE, 2, evidence)
    if constp_residual < tol:
        return StateClass(StateKind.CONSTANT_P, None, evidence)
    if rational is not None:
        p, q = rational
        # The means return after 2q/gcd(p,2) steps; unmarked deviations
        # alternate sign, forcing an even period when any are present.
        k_means = q if p % 2 == 0 else 2 * q
        if mom.sigma_u > tol and k_means % 2 == 1:
            k_means *= 2
        return StateClass(StateKind.PERIODIC_CYCLE, k_means, evidence)
    return StateClass(StateKind.GENERIC, None, evidence)


def detect_cycle(
    state: QuantumState,
    marked: MarkedSet,
    max_period: int,
    tol: float = 1e-10,
    up_to_phase: bool = False,
) -> int | None:
    """Smallest k <= max_period with U_G^k returning the initial state.

    By default recurrence is exact (the overlap with the initial state
    must return to 1, phase included), which is the period of the
    amplitudes as a dynamical system.  With ``up_to_phase`` the criterion
    is the phase-insensitive fidelity |<phi|U_G^k|phi>|^2 >= 1 - tol;
    that can halve the reported period when an iterate is a global sign
    flip of the initial state.
    """
    _check_compatible(state, marked)
    if max_period < 1:
        raise ValueError(f"max_period must be >= 1, got {max_period!r}")
    initial = state.amplitudes
    amps = initial.copy()
    idx = marked.indices_array
    for k in range(1, max_period + 1):
        _kernels.run_grover(amps, idx, 1)
        overlap = complex(np.vdot(initial, amps))
        if up_to_phase:
            if 1.0 - abs(overlap) ** 2 <= tol:
                return k
        elif abs(overlap - 1.0) <= tol:
            return k
    return None


def build_fixed_point(marked: MarkedSet, weights) -> QuantumState:
    """State supported on the marked indices with zero-mean unit weights.

    Any such state is an exact fixed point of the Grover iteration: the
    oracle negates it, the post-oracle mean vanishes, and the diffusion
    negates it back.
    """
    w = np.ascontiguousarray(weights, dtype=np.complex128)
    if w.ndim != 1 or w.size != marked.r:
        raise ValueError(
            f"expected {marked.r} weights (one per marked index), got shape {w.shape}"
        )
    if marked.r < 2:
        raise ValueError("a zero-mean fixed point needs at least 2 marked states")
    if abs(np.mean(w)) > 1e-12:
        raise ValueError(f"weights must have zero mean, got mean {np.mean(w)!r}")
    if abs(float(np.sum(np.abs(w) ** 2)) - 1.0) > 1e-12:
        raise ValueError("weights must have unit norm")
    n = marked.num_states.bit_length() - 1
    if 1 << n != marked.num_states:
        raise ValueError(
            f"marked set covers {marked.num_states} states, not a power of two"
        )
    amps = np.zeros(marked.num_states, dtype=np.complex128)
    amps[marked.indices_array] = w
    return QuantumState(n, amps)
