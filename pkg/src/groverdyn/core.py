"""Value types for register states, marked sets and amplitude moments.

Everything here is an immutable value: amplitude arrays are stored
read-only and every operation returns a new object, so states can be
shared freely between threads or recorded in trajectories without
defensive copies.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass
from functools import cached_property

import numpy as np


def _as_index(value, what: str) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise ValueError(f"{what} must be an integer, got {value!r}") from None

# Tolerance on sum |a_i|^2 - 1 accepted by the constructor.  There is no
# silent renormalization; use QuantumState.renormalized for that.
NORM_ATOL = 1e-12

# Looser tolerance applied by the state-file loader before it
# renormalizes explicitly.
STATE_FILE_NORM_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Pure state of an n-qubit register as 2^n complex amplitudes.

    Attributes
    ----------
    n : qubit count (>= 1)
    amplitudes : read-only complex128 array of length 2^n with unit norm
    """

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = _as_index(self.n, "qubit count")
        if n < 1:
            raise ValueError(f"qubit count must be >= 1, got {n}")
        object.__setattr__(self, "n", n)
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.size != 1 << self.n:
            raise ValueError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got shape {amps.shape}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_ATOL:
            raise ValueError(
                f"state norm^2 = {norm_sq!r} deviates from 1 by more than {NORM_ATOL}; "
                "use QuantumState.renormalized to normalize explicitly"
            )
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def renormalized(cls, n: int, amplitudes) -> "QuantumState":
        """Build a state from unnormalized amplitudes, scaling to unit norm."""
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(n, amps / norm)

    @classmethod
    def _wrap(cls, n: int, amps: np.ndarray) -> "QuantumState":
        # Internal fast path: takes ownership of a complex128 array that is
        # already unit norm by construction (e.g. output of a unitary map).
        state = object.__new__(cls)
        amps = np.ascontiguousarray(amps, dtype=np.complex128)
        amps.flags.writeable = False
        object.__setattr__(state, "n", n)
        object.__setattr__(state, "amplitudes", amps)
        return state

    @property
    def dim(self) -> int:
        """Search-space size N = 2^n."""
        return 1 << self.n

    def norm_sq(self) -> float:
        """Sum of |a_i|^2 (1 up to floating-point drift)."""
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def __repr__(self) -> str:
        return f"QuantumState(n={self.n}, dim={self.dim})"


def basis_label(index: int, n: int) -> str:
    """Bitstring rendering of a basis index, most-significant qubit first."""
    if not 0 <= index < (1 << n):
        raise ValueError(f"basis index {index} out of range for n={n}")
    return format(index, f"0{n}b")


@dataclass(frozen=True)
class MarkedSet:
    """Set M of marked basis-state indices inside a space of ``num_states``.

    Encodes the search oracle: f(i) = 1 exactly for i in M.  At least one
    state must be marked and at least one unmarked.
    """

    num_states: int
    indices: tuple[int, ...]

    def __post_init__(self):
        num_states = _as_index(self.num_states, "num_states")
        if num_states < 2:
            raise ValueError("num_states must be >= 2")
        object.__setattr__(self, "num_states", num_states)
        idx = tuple(sorted(_as_index(i, "marked index") for i in self.indices))
        if len(set(idx)) != len(idx):
            raise ValueError("marked indices must be distinct")
        if not idx:
            raise ValueError("at least one state must be marked")
        if len(idx) >= self.num_states:
            raise ValueError("at least one state must remain unmarked")
        if idx[0] < 0 or idx[-1] >= self.num_states:
            raise ValueError(
                f"marked indices must lie in [0, {self.num_states}), got {idx}"
            )
        object.__setattr__(self, "indices", idx)

    @property
    def r(self) -> int:
        """Number of marked states."""
        return len(self.indices)

    def f(self, index: int) -> int:
        """Oracle function: 1 if ``index`` is marked, else 0."""
        return 1 if index in self._index_set else 0

    @cached_property
    def _index_set(self) -> frozenset[int]:
        return frozenset(self.indices)

    @cached_property
    def indices_array(self) -> np.ndarray:
        arr = np.asarray(self.indices, dtype=np.intp)
        arr.flags.writeable = False
        return arr

    @cached_property
    def mask(self) -> np.ndarray:
        """Boolean mask of length ``num_states``, True on marked indices."""
        m = np.zeros(self.num_states, dtype=bool)
        m[self.indices_array] = True
        m.flags.writeable = False
        return m

    @cached_property
    def unmarked_indices(self) -> np.ndarray:
        arr = np.flatnonzero(~self.mask).astype(np.intp)
        arr.flags.writeable = False
        return arr


@dataclass(frozen=True)
class MomentSummary:
    """First and second moments of an amplitude distribution.

    ``a_bar`` is the mean over all amplitudes, ``a_bar_m``/``a_bar_u`` the
    means over the marked/unmarked subsets, and the sigmas are the
    standard deviations of the corresponding distributions.  For a unit
    state sigma_a^2 = 1/N - |a_bar|^2 always holds.
    """

    a_bar: complex
    a_bar_m: complex
    a_bar_u: complex
    sigma_a: float
    sigma_m: float
    sigma_u: float


def _check_compatible(state: QuantumState, marked: MarkedSet) -> None:
    if marked.num_states != state.dim:
        raise ValueError(
            f"marked set is defined over {marked.num_states} states but the "
            f"register has {state.dim}"
        )


def _moments_from_array(amps: np.ndarray, marked: MarkedSet) -> MomentSummary:
    a_bar = complex(np.mean(amps))
    marked_amps = amps[marked.indices_array]
    unmarked_amps = amps[marked.unmarked_indices]
    a_bar_m = complex(np.mean(marked_amps))
    a_bar_u = complex(np.mean(unmarked_amps))
    sigma_a = math.sqrt(float(np.mean(np.abs(amps - a_bar) ** 2)))
    sigma_m = math.sqrt(float(np.mean(np.abs(marked_amps - a_bar_m) ** 2)))
    sigma_u = math.sqrt(float(np.mean(np.abs(unmarked_amps - a_bar_u) ** 2)))
    return MomentSummary(a_bar, a_bar_m, a_bar_u, sigma_a, sigma_m, sigma_u)


def moments(state: QuantumState, marked: MarkedSet) -> MomentSummary:
    """Amplitude-distribution moments of ``state`` relative to ``marked``."""
    _check_compatible(state, marked)
    return _moments_from_array(state.amplitudes, marked)


def inner_product(a: QuantumState, b: QuantumState) -> complex:
    """Hermitian inner product <a|b> (conjugate-linear in ``a``)."""
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} vs {b.n}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def save_state(state: QuantumState, path) -> None:
    """Write a state to JSON as {"n": n, "amplitudes": [[re, im], ...]}."""
    payload = {
        "n": state.n,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_state(path) -> QuantumState:
    """Read a state file, reject norm deviations > 1e-9, then renormalize."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    try:
        n = int(payload["n"])
        pairs = payload["amplitudes"]
        amps = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state file {path}: {exc}") from exc
    if n < 1 or amps.size != 1 << n:
        raise ValueError(
            f"state file {path}: expected {1 << n if n >= 1 else '?'} amplitudes "
            f"for n={n}, found {amps.size}"
        )
    norm_sq = float(np.sum(np.abs(amps) ** 2))
    if abs(norm_sq - 1.0) > STATE_FILE_NORM_ATOL:
        raise ValueError(
            f"state file {path}: norm^2 = {norm_sq!r} deviates from 1 by more "
            f"than {STATE_FILE_NORM_ATOL}"
        )
    return QuantumState.renormalized(n, amps)
