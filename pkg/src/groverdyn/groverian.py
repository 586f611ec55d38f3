"""Groverian entanglement: G = sqrt(1 - P_max) with P_max the best
squared overlap between a state and any n-qubit product state.

The maximization over local unitaries reduces to a maximization over
product states, which is what is implemented: an alternating optimizer
whose single-qubit update is an exact argmax (the normalized
contraction of the state against the other factors), plus an
independent grid-search oracle for n <= 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import QuantumState

_UNITARY_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class ProductState:
    """Tensor product of n single-qubit states.

    ``qubit_states`` is an (n, 2) complex array; row k holds the
    amplitudes (c0, c1) of qubit k, most-significant qubit first, each
    row unit norm.
    """

    qubit_states: np.ndarray

    def __post_init__(self):
        q = np.ascontiguousarray(self.qubit_states, dtype=np.complex128)
        if q.ndim != 2 or q.shape[1] != 2 or q.shape[0] < 1:
            raise ValueError(f"expected an (n, 2) array of qubit factors, got {q.shape}")
        norms = np.sum(np.abs(q) ** 2, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ValueError("every qubit factor must be unit norm")
        q = q.copy()
        q.flags.writeable = False
        object.__setattr__(self, "qubit_states", q)

    @property
    def n(self) -> int:
        return self.qubit_states.shape[0]

    def to_state(self) -> QuantumState:
        """Expand to the full 2^n-amplitude register state."""
        amps = reduce(np.kron, self.qubit_states)
        return QuantumState._wrap(self.n, amps)


@dataclass(frozen=True)
class GroverianResult:
    """Outcome of the product-state overlap maximization."""

    p_max: float
    g: float
    argmax: ProductState
    restarts_used: int
    converged: bool
    best_per_restart: tuple[float, ...]


def _overlap_amplitude(amps: np.ndarray, factors: np.ndarray) -> complex:
    # <s_1...s_n|phi> contracted one qubit factor at a time: the working
    # vector halves at every step, so the total cost is O(N).
    t = amps
    for c in factors:
        t = t.reshape(2, -1)
        t = np.conj(c[0]) * t[0] + np.conj(c[1]) * t[1]
    return complex(t[0])


def product_overlap(state: QuantumState, product: ProductState) -> float:
    """Squared overlap |<s_1...s_n|phi>|^2."""
    if product.n != state.n:
        raise ValueError(f"qubit counts differ: state {state.n}, product {product.n}")
    return abs(_overlap_amplitude(state.amplitudes, product.qubit_states)) ** 2


def _environment(psi_t: np.ndarray, factors: np.ndarray, skip: int) -> np.ndarray:
    # Contraction of phi with the conjugate of every factor except `skip`;
    # the result v satisfies <s|phi> = <c_skip|v>.
    n = psi_t.ndim
    t = np.moveaxis(psi_t, skip, 0)
    for j in reversed([j for j in range(n) if j != skip]):
        t = t @ np.conj(factors[j])
    return t


def _random_factors(n: int, rng: np.random.Generator) -> np.ndarray:
    f = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return f / np.linalg.norm(f, axis=1, keepdims=True)


def _basis_factors(n: int, index: int) -> np.ndarray:
    f = np.zeros((n, 2), dtype=np.complex128)
    for k in range(n):
        bit = (index >> (n - 1 - k)) & 1
        f[k, bit] = 1.0
    return f


def _ascend(
    psi_t: np.ndarray,
    factors: np.ndarray,
    max_sweeps: int,
    tol: float,
) -> tuple[float, np.ndarray, bool, list[float]]:
    # Alternating exact single-qubit updates; returns the update-by-update
    # overlap history, which is nondecreasing up to rounding.
    n = psi_t.ndim
    factors = factors.copy()
    history: list[float] = []
    value = 0.0
    converged = False
    for _ in range(max_sweeps):
        previous = value
        for k in range(n):
            env = _environment(psi_t, factors, k)
            nrm = float(np.linalg.norm(env))
            if nrm > 0.0:
                factors[k] = env / nrm
            value = nrm * nrm
            history.append(value)
        if value - previous < tol:
            converged = True
            break
    return value, factors, converged, history


def optimize_product(
    state: QuantumState,
    restarts: int = 32,
    max_sweeps: int = 1000,
    tol: float = 1e-12,
    seed: int = 0,
) -> GroverianResult:
    """Maximize the product-state overlap by alternating exact updates.

    Runs one deterministic ascent from the largest-|amplitude| basis
    state (so the result can never fall below the best computational
    basis overlap) followed by ``restarts`` seeded random starts.  The
    best value over all starts is reported; ties keep the earliest start.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts!r}")
    n = state.n
    psi_t = state.amplitudes.reshape((2,) * n)
    rng = np.random.default_rng(seed)

    starts = [_basis_factors(n, int(np.argmax(np.abs(state.amplitudes))))]
    starts.extend(_random_factors(n, rng) for _ in range(restarts))

    best_value = -1.0
    best_factors = starts[0]
    best_converged = False
    per_restart: list[float] = []
    for factors in starts:
        value, out_factors, converged, _ = _ascend(psi_t, factors, max_sweeps, tol)
        per_restart.append(value)
        if value > best_value:
            best_value = value
            best_factors = out_factors
            best_converged = converged

    p_max = best_value
    return GroverianResult(
        p_max=p_max,
        g=math.sqrt(max(0.0, 1.0 - p_max)),
        argmax=ProductState(best_factors),
        restarts_used=len(starts),
        converged=best_converged,
        best_per_restart=tuple(per_restart),
    )


def _angle_mesh(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    # Bloch-sphere grid: polar in [0, pi] inclusive, azimuth in [0, 2pi).
    theta = np.linspace(0.0, math.pi, resolution)
    phi = np.linspace(0.0, 2.0 * math.pi, resolution, endpoint=False)
    return np.meshgrid(theta, phi, indexing="ij")


def _angle_grid(resolution: int) -> np.ndarray:
    # Single-qubit factors on the grid, with the global phase of each
    # factor fixed by making c0 real >= 0.
    tt, pp = _angle_mesh(resolution)
    grid = np.empty((resolution * resolution, 2), dtype=np.complex128)
    grid[:, 0] = np.cos(tt / 2.0).ravel()
    grid[:, 1] = (np.sin(tt / 2.0) * np.exp(1j * pp)).ravel()
    return grid


def grid_search_oracle(state: QuantumState, resolution: int) -> float:
    """Independent lower bound on P_max for n <= 3 by exhaustive search.

    The first n-1 qubits run over a resolution x resolution
    polar/azimuthal grid each; for every grid assignment the final qubit
    is set to its exact optimum (the normalized contraction), so the
    bound can only be tighter than an all-gridded search.  It approaches
    P_max as the resolution grows.
    """
    if state.n > 3:
        raise ValueError(f"grid_search_oracle supports n <= 3, got n={state.n}")
    if resolution < 16:
        raise ValueError(f"resolution must be >= 16, got {resolution!r}")

    amps = state.amplitudes
    if state.n == 1:
        return float(np.sum(np.abs(amps) ** 2))

    grid_conj = np.conj(_angle_grid(resolution))
    num_points = grid_conj.shape[0]
    contracted = grid_conj @ amps.reshape(2, -1)  # (G, 2^{n-1})

    if state.n == 2:
        return float(np.max(np.sum(np.abs(contracted) ** 2, axis=1)))

    # n = 3: for every pair of gridded factors (qubits 1 and 2) the value
    # with the optimal third factor is the Hermitian quadratic form
    # x^T W x* with x = conj(c2) and W = A A^dagger, A the 2x2 remainder
    # after contracting qubit 1.  Over the qubit-2 grid that form is
    # linear in the four real numbers (W00, W11, Re W01, Im W01), so one
    # real matmul against four basis surfaces evaluates the whole grid.
    remainder = contracted.reshape(num_points, 2, 2)
    w01 = np.sum(remainder[:, 0, :] * np.conj(remainder[:, 1, :]), axis=1)
    coeffs = np.stack(
        [
            np.sum(np.abs(remainder[:, 0, :]) ** 2, axis=1),
            np.sum(np.abs(remainder[:, 1, :]) ** 2, axis=1),
            w01.real,
            w01.imag,
        ],
        axis=1,
    )
    tt, pp = _angle_mesh(resolution)
    sin_theta = np.sin(tt)
    basis = np.stack(
        [
            np.cos(tt / 2.0) ** 2,
            np.sin(tt / 2.0) ** 2,
            sin_theta * np.cos(pp),
            -sin_theta * np.sin(pp),
        ]
    ).reshape(4, num_points)

    best = 0.0
    chunk = max(1, (1 << 23) // num_points)
    for start in range(0, num_points, chunk):
        vals = coeffs[start : start + chunk] @ basis
        best = max(best, float(vals.max()))
    return best


def apply_local_unitaries(state: QuantumState, unitaries) -> QuantumState:
    """Apply one 2x2 unitary per qubit, U_1 x ... x U_n, to the state."""
    mats = [np.asarray(u, dtype=np.complex128) for u in unitaries]
    if len(mats) != state.n:
        raise ValueError(f"expected {state.n} unitaries, got {len(mats)}")
    eye = np.eye(2)
    for k, u in enumerate(mats):
        if u.shape != (2, 2):
            raise ValueError(f"unitary {k} has shape {u.shape}, expected (2, 2)")
        if np.max(np.abs(np.conj(u.T) @ u - eye)) > _UNITARY_ATOL:
            raise ValueError(f"matrix {k} is not unitary within {_UNITARY_ATOL}")
    t = state.amplitudes.reshape((2,) * state.n)
    for k, u in enumerate(mats):
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [k])), 0, k)
    return QuantumState._wrap(state.n, t.reshape(-1))


def local_unitary_invariance_check(
    state: QuantumState,
    unitaries,
    restarts: int = 32,
    seed: int = 0,
) -> float:
    """|G(U_1 x ... x U_n phi) - G(phi)| using the optimizer on both sides."""
    rotated = apply_local_unitaries(state, unitaries)
    g_original = optimize_product(state, restarts=restarts, seed=seed).g
    g_rotated = optimize_product(rotated, restarts=restarts, seed=seed).g
    return abs(g_original - g_rotated)
