"""State builders, marked-set sweeps and simulator-vs-closed-form runs.

Everything here is deterministic given the configuration: random states
and sampled marked sets come from a seeded numpy PCG64 generator
(``numpy.random.default_rng``), so published seeds reproduce exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .analytic import (
    analytic_success,
    averaged_success,
    compute_params,
    optimal_iterations,
)
from .core import MarkedSet, QuantumState, _as_index, load_state
from .simulator import evolve
from . import _kernels

# Enumerate all C(N, r) marked sets up to this count; sample beyond it.
EXHAUSTIVE_LIMIT = 100_000
DEFAULT_SAMPLES = 2000

MAX_QUBITS = 24

STATE_BUILDERS = ("eta", "basis", "ghz", "w", "zero_mean", "haar", "k_uniform")
# Builders usable directly as a --state name (no extra parameters).
PARAMETER_FREE_BUILDERS = ("eta", "ghz", "w")


class ConfigurationError(Exception):
    """Experiment configuration that cannot be run as requested."""


def build_state(name: str, n: int, k: int | None = None, seed: int | None = None) -> QuantumState:
    """Construct a named initial state on ``n`` qubits.

    eta        equal superposition of all basis states
    basis      the computational basis state |k>
    ghz        (|0...0> + |1...1>)/sqrt(2)
    w          equal superposition of the n single-excitation states
    zero_mean  random paired state with a_{2j+1} = -a_{2j} (zero mean), seeded
    haar       normalized vector of 2^n complex standard Gaussians, seeded
    k_uniform  first k amplitudes equal to 1/sqrt(k)
    """
    n = _as_index(n, "n")
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in [1, {MAX_QUBITS}], got {n}")
    num_states = 1 << n

    if name == "eta":
        amps = np.full(num_states, 1.0 / math.sqrt(num_states), dtype=np.complex128)
    elif name == "basis":
        if k is None or not 0 <= k < num_states:
            raise ValueError(f"basis state needs an index k in [0, {num_states}), got {k!r}")
        amps = np.zeros(num_states, dtype=np.complex128)
        amps[k] = 1.0
    elif name == "ghz":
        amps = np.zeros(num_states, dtype=np.complex128)
        amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    elif name == "w":
        amps = np.zeros(num_states, dtype=np.complex128)
        amps[[1 << j for j in range(n)]] = 1.0 / math.sqrt(n)
    elif name == "zero_mean":
        if seed is None:
            raise ValueError("zero_mean state needs a seed")
        rng = np.random.default_rng(seed)
        half = rng.standard_normal(num_states // 2) + 1j * rng.standard_normal(num_states // 2)
        amps = np.empty(num_states, dtype=np.complex128)
        amps[0::2] = half
        amps[1::2] = -half
        return QuantumState.renormalized(n, amps)
    elif name == "haar":
        if seed is None:
            raise ValueError("haar state needs a seed")
        rng = np.random.default_rng(seed)
        amps = rng.standard_normal(num_states) + 1j * rng.standard_normal(num_states)
        return QuantumState.renormalized(n, amps)
    elif name == "k_uniform":
        if k is None or not 1 <= k <= num_states:
            raise ValueError(f"k_uniform needs k in [1, {num_states}], got {k!r}")
        amps = np.zeros(num_states, dtype=np.complex128)
        amps[:k] = 1.0 / math.sqrt(k)
    else:
        raise ValueError(f"unknown state builder {name!r}; known: {STATE_BUILDERS}")
    return QuantumState(n, amps)


def resolve_state(spec: str, n: int, seed: int | None = None) -> QuantumState:
    """Turn a state spec (builder name or JSON file path) into a state."""
    if spec in PARAMETER_FREE_BUILDERS:
        return build_state(spec, n)
    if spec in ("haar", "zero_mean"):
        return build_state(spec, n, seed=seed)
    if spec in STATE_BUILDERS:
        raise ValueError(
            f"builder {spec!r} needs parameters; create it with 'state make' "
            "and pass the file instead"
        )
    state = load_state(spec)
    if state.n != n:
        raise ValueError(f"state file {spec} has n={state.n}, expected n={n}")
    return state


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep or comparison run.

    ``marked`` fixes an explicit marked set; otherwise the sweep selects
    sets itself: all C(N, r) of them when that count is at most
    ``EXHAUSTIVE_LIMIT`` (or when ``exhaustive`` is forced), else
    ``samples`` seeded draws without replacement.
    """

    n: int
    r: int
    state_spec: str = "eta"
    marked: tuple[int, ...] | None = None
    exhaustive: bool = False
    samples: int | None = None
    t_max: int | None = None
    seed: int | None = None
    out_path: str | None = None

    def __post_init__(self):
        n = _as_index(self.n, "n")
        if not 1 <= n <= MAX_QUBITS:
            raise ValueError(f"n must be in [1, {MAX_QUBITS}], got {n}")
        object.__setattr__(self, "n", n)
        num_states = 1 << n
        r = _as_index(self.r, "r")
        if not 1 <= r <= num_states - 1:
            raise ValueError(f"r must be in [1, {num_states - 1}], got {r}")
        object.__setattr__(self, "r", r)
        if self.marked is not None:
            marked = tuple(int(i) for i in self.marked)
            if len(marked) != self.r:
                raise ValueError(
                    f"explicit marked set has {len(marked)} indices but r={self.r}"
                )
            object.__setattr__(self, "marked", marked)
        if self.samples is not None and self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples!r}")
        if self.t_max is not None and self.t_max < 0:
            raise ValueError(f"t_max must be >= 0, got {self.t_max!r}")


@dataclass(frozen=True)
class SweepSummary:
    """Success statistics of P(tau) over a collection of marked sets."""

    n: int
    r: int
    tau: int
    num_sets: int
    exhaustive: bool
    seed: int | None
    mean_p: float
    std_error: float
    analytic_prediction: float
    p_values: tuple[float, ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "tau": self.tau,
            "num_sets": self.num_sets,
            "exhaustive": self.exhaustive,
            "seed": self.seed,
            "mean_p": self.mean_p,
            "std_error": self.std_error,
            "analytic_prediction": self.analytic_prediction,
        }


def _sample_marked_sets(num_states: int, r: int, count: int, seed: int | None):
    if seed is None:
        raise ConfigurationError(
            "sampling marked sets requires a seed for reproducibility"
        )
    rng = np.random.default_rng(seed)
    chosen: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    while len(chosen) < count:
        pick = tuple(sorted(int(i) for i in rng.choice(num_states, size=r, replace=False)))
        if pick not in seen:
            seen.add(pick)
            chosen.append(pick)
    return chosen


def _select_marked_sets(config: ExperimentConfig):
    num_states = 1 << config.n
    total = math.comb(num_states, config.r)
    if config.marked is not None:
        return [config.marked], False
    if config.exhaustive:
        if total > EXHAUSTIVE_LIMIT:
            raise ConfigurationError(
                f"exhaustive enumeration of C({num_states}, {config.r}) = {total} "
                f"marked sets exceeds the limit of {EXHAUSTIVE_LIMIT}; use sampling"
            )
        return list(combinations(range(num_states), config.r)), True
    if config.samples is not None:
        count = min(config.samples, total)
        if count == total:
            return list(combinations(range(num_states), config.r)), True
        return _sample_marked_sets(num_states, config.r, count, config.seed), False
    if total <= EXHAUSTIVE_LIMIT:
        return list(combinations(range(num_states), config.r)), True
    return _sample_marked_sets(num_states, config.r, DEFAULT_SAMPLES, config.seed), False


def sweep_marked_sets(config: ExperimentConfig) -> SweepSummary:
    """Simulate tau iterations for each selected marked set, collect P(tau).

    Reports the sample mean, its standard error, and the closed-form
    marked-set-averaged prediction N * |mean amplitude|^2.
    """
    state = resolve_state(config.state_spec, config.n, seed=config.seed)
    tau = optimal_iterations(config.n, config.r)
    sets, exhaustive = _select_marked_sets(config)

    p_values = np.empty(len(sets))
    for i, indices in enumerate(sets):
        idx = np.asarray(indices, dtype=np.intp)
        amps = state.amplitudes.copy()
        _kernels.run_grover(amps, idx, tau)
        p_values[i] = float(np.sum(np.abs(amps[idx]) ** 2))

    mean_p = float(np.mean(p_values))
    std_error = (
        float(np.std(p_values, ddof=1) / math.sqrt(len(p_values)))
        if len(p_values) > 1
        else 0.0
    )
    return SweepSummary(
        n=config.n,
        r=config.r,
        tau=tau,
        num_sets=len(sets),
        exhaustive=exhaustive,
        seed=config.seed,
        mean_p=mean_p,
        std_error=std_error,
        analytic_prediction=averaged_success(state),
        p_values=tuple(float(p) for p in p_values),
    )


@dataclass(frozen=True)
class ComparisonRow:
    t: int
    p_sim: float
    p_analytic: float
    abs_err: float


@dataclass(frozen=True)
class ComparisonReport:
    """Side-by-side simulated and closed-form success probabilities."""

    n: int
    r: int
    marked: tuple[int, ...]
    tau: int
    tau_m: int
    p0: float
    delta_p: float
    k_const: float
    omega: float
    rows: tuple[ComparisonRow, ...]
    max_abs_err: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "marked": list(self.marked),
            "tau": self.tau,
            "tau_m": self.tau_m,
            "p0": self.p0,
            "delta_p": self.delta_p,
            "k_const": self.k_const,
            "omega": self.omega,
            "max_abs_err": self.max_abs_err,
            "per_t": [
                {
                    "t": row.t,
                    "p_sim": row.p_sim,
                    "p_analytic": row.p_analytic,
                    "abs_err": row.abs_err,
                }
                for row in self.rows
            ],
        }


def compare_run(config: ExperimentConfig) -> ComparisonReport:
    """Evolve one explicit marked set and tabulate simulator vs closed form."""
    if config.marked is None:
        raise ConfigurationError("compare_run needs an explicit marked set")
    state = resolve_state(config.state_spec, config.n, seed=config.seed)
    marked = MarkedSet(1 << config.n, config.marked)
    params = compute_params(state, marked)
    t_max = config.t_max if config.t_max is not None else 4 * params.tau
    trajectory = evolve(state, marked, t_max)

    rows = []
    for step in trajectory.steps:
        p_analytic = analytic_success(params, step.t)
        rows.append(
            ComparisonRow(step.t, step.p_marked, p_analytic, abs(step.p_marked - p_analytic))
        )
    return ComparisonReport(
        n=config.n,
        r=config.r,
        marked=marked.indices,
        tau=params.tau,
        tau_m=params.tau_m,
        p0=params.p0,
        delta_p=params.delta_p,
        k_const=params.k_const,
        omega=params.omega,
        rows=tuple(rows),
        max_abs_err=max(row.abs_err for row in rows),
    )


def write_json(path, payload: dict) -> None:
    """Deterministic JSON dump: sorted keys, fixed indentation."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
