"""Bandit environments: exact means, stochastic rewards, sub-optimality gaps.

Rewards are assembled one independent Bernoulli measurement per Pauli term,
so the realized value is a weighted sum of +/-1 outcomes whose mean equals
the exact stabilizer expectation.  Identity terms contribute their
coefficient deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError
from .paulis import Observable, PauliString
from .stabilizer import StabilizerState, expectation, expectation_observable

MeanOracle = Callable[[Observable], float]
RewardSampler = Callable[[Observable, np.random.Generator], float]


@dataclass(frozen=True, slots=True)
class Action:
    index: int
    label: str
    mean_oracle: MeanOracle
    reward_sampler: RewardSampler


@dataclass(frozen=True, slots=True)
class Environment:
    n: int
    actions: tuple[Action, ...]

    def __post_init__(self) -> None:
        if len(self.actions) < 2:
            raise ValueError("an environment needs at least 2 actions")
        for expected, action in enumerate(self.actions):
            if action.index != expected:
                raise ValueError("action indices must be consecutive from 0")

    @property
    def k(self) -> int:
        return len(self.actions)


def sample_pauli_reward(
    state: StabilizerState, p: PauliString, rng: np.random.Generator
) -> float:
    """Single +/-1 measurement: Bernoulli with success prob (mean + 1)/2."""
    mu = expectation(state, p)
    return 1.0 if rng.random() < (mu + 1.0) / 2.0 else -1.0


def _split_terms(
    state: StabilizerState, o: Observable
) -> tuple[float, np.ndarray, np.ndarray]:
    """(identity offset, weights, per-term means) for the non-identity terms."""
    if o.n != state.n:
        raise DimensionError(f"observable on {o.n} qubits, state on {state.n}")
    offset = 0.0
    weights = []
    means = []
    for string, coeff in o.items():
        if string.is_identity():
            offset += coeff
        else:
            weights.append(coeff)
            means.append(expectation(state, string))
    return offset, np.asarray(weights, dtype=float), np.asarray(means, dtype=float)


def sample_observable_reward(
    state: StabilizerState, o: Observable, rng: np.random.Generator
) -> float:
    """One fresh Bernoulli shot per Pauli term, weighted and summed."""
    offset, weights, means = _split_terms(state, o)
    if weights.size == 0:
        return offset
    outcomes = np.where(rng.random(weights.size) < (means + 1.0) / 2.0, 1.0, -1.0)
    return float(offset + weights @ outcomes)


def sample_observable_rewards(
    state: StabilizerState, o: Observable, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Batch of independent reward draws; one Bernoulli per term per draw."""
    offset, weights, means = _split_terms(state, o)
    if weights.size == 0:
        return np.full(size, offset)
    outcomes = np.where(rng.random((size, weights.size)) < (means + 1.0) / 2.0, 1.0, -1.0)
    return offset + outcomes @ weights


def reward_standard_error(
    state: StabilizerState, o: Observable, samples: int
) -> float:
    """Exact standard error of the empirical mean over `samples` draws."""
    _, weights, means = _split_terms(state, o)
    variance = float(np.sum(weights**2 * (1.0 - means**2)))
    return float(np.sqrt(variance / samples))


def suboptimality_gap(env: Environment, a: int, o: Observable) -> float:
    """Best exact mean minus action a's exact mean (always >= 0)."""
    if not 0 <= a < env.k:
        raise IndexError(f"action index {a} outside [0, {env.k})")
    means = [action.mean_oracle(o) for action in env.actions]
    return max(means) - means[a]


def optimal_action(env: Environment, o: Observable) -> int:
    """Smallest index attaining the maximum exact mean."""
    means = [action.mean_oracle(o) for action in env.actions]
    best = max(means)
    return means.index(best)


def stabilizer_environment(states: Sequence[StabilizerState]) -> Environment:
    """Wrap stabilizer states as bandit actions with exact-mean oracles."""
    n = states[0].n
    actions = []
    for index, state in enumerate(states):
        if state.n != n:
            raise DimensionError("all action states must share the qubit count")

        def mean(o: Observable, _s: StabilizerState = state) -> float:
            return expectation_observable(_s, o)

        def sampler(
            o: Observable, rng: np.random.Generator, _s: StabilizerState = state
        ) -> float:
            return sample_observable_reward(_s, o, rng)

        actions.append(Action(index, state.label, mean, sampler))
    return Environment(n, tuple(actions))
