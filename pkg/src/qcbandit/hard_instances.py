"""Hard bandit instances: near-maximally-mixed states split along Pauli axes.

Each instance picks distinct non-identity Pauli strings as contexts,
assigns every context to one action uniformly at random, and perturbs that
action's state by delta/d along the assigned direction.  Contexts arrive in
contiguous groups, so each group is an independent Bernoulli bandit with a
single slightly-better action.  Pauli trace-orthogonality makes every mean
available in closed form without touching any matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .environments import Action, Environment
from .errors import CapabilityError, ConfigurationError
from .paulis import Observable, PauliString, random_bits

DELTA_EPSILON = 0.1  # scale of the default per-group perturbation

_DENSE_MAX_QUBITS = 5


@dataclass(frozen=True, slots=True)
class HardInstance:
    n: int
    k: int
    c_prime: int
    delta: float
    group_length: int
    contexts: tuple[PauliString, ...]
    assignment: tuple[int, ...]

    @property
    def scheduled_rounds(self) -> int:
        return self.c_prime * self.group_length

    def action_load(self, a: int) -> int:
        """Number of contexts assigned to action a."""
        return sum(1 for owner in self.assignment if owner == a)


def _sample_distinct_contexts(
    n: int, count: int, rng: np.random.Generator
) -> list[PauliString]:
    total = (1 << (2 * n)) - 1
    if count > total:
        raise ConfigurationError(f"cannot pick {count} distinct strings on {n} qubits")
    if total <= 1 << 16:
        codes = rng.choice(total, size=count, replace=False)
        mask = (1 << n) - 1
        return [PauliString(n, int(code + 1) >> n, int(code + 1) & mask) for code in codes]
    seen: set[PauliString] = set()
    picked: list[PauliString] = []
    while len(picked) < count:
        p = PauliString(n, random_bits(n, rng), random_bits(n, rng))
        if p.is_identity() or p in seen:
            continue
        seen.add(p)
        picked.append(p)
    return picked


def build_hard_instance(
    n: int,
    k: int,
    c: int,
    T: int,
    delta: float | None,
    rng: np.random.Generator,
) -> HardInstance:
    """Sample contexts and the context-to-action assignment for one instance.

    If delta is omitted it defaults to DELTA_EPSILON * sqrt(k / T') with
    T' the group length, clamped so every perturbed state stays positive
    semidefinite; an explicit delta that breaks positivity is rejected.
    """
    if k < 2:
        raise ConfigurationError(f"need at least 2 actions, got {k}")
    if c < 1:
        raise ConfigurationError(f"need at least 1 context, got {c}")
    c_prime = min(c, (1 << (2 * n)) - 1)
    if T < c_prime * k:
        raise ConfigurationError(
            f"horizon {T} shorter than contexts*actions = {c_prime * k}"
        )
    group_length = T // c_prime
    contexts = _sample_distinct_contexts(n, c_prime, rng)
    assignment = tuple(int(a) for a in rng.integers(0, k, size=c_prime))
    max_load = max(sum(1 for owner in assignment if owner == a) for a in range(k))
    positivity_cap = 1.0 / max_load if max_load > 0 else 1.0
    if delta is None:
        delta = min(DELTA_EPSILON * math.sqrt(k / group_length), positivity_cap)
    else:
        if delta < 0:
            raise ConfigurationError(f"delta must be nonnegative, got {delta}")
        if delta * max_load > 1.0 + 1e-12:
            raise ConfigurationError(
                f"delta {delta} with {max_load} contexts on one action breaks positivity"
            )
    return HardInstance(
        n=n,
        k=k,
        c_prime=c_prime,
        delta=float(delta),
        group_length=group_length,
        contexts=tuple(contexts),
        assignment=assignment,
    )


def hard_context_at(inst: HardInstance, t: int) -> int:
    """Index of the context shown at round t of the grouped schedule."""
    if not 0 <= t < inst.scheduled_rounds:
        raise IndexError(f"round {t} outside the schedule [0, {inst.scheduled_rounds})")
    return t // inst.group_length


def hard_mean(inst: HardInstance, a: int, ctx: int) -> float:
    if not 0 <= a < inst.k:
        raise IndexError(f"action {a} outside [0, {inst.k})")
    return inst.delta if inst.assignment[ctx] == a else 0.0


def hard_sample(inst: HardInstance, a: int, ctx: int, rng: np.random.Generator) -> float:
    mu = hard_mean(inst, a, ctx)
    return 1.0 if rng.random() < (mu + 1.0) / 2.0 else -1.0


def context_observable(inst: HardInstance, ctx: int) -> Observable:
    return Observable(inst.n, [(inst.contexts[ctx], 1.0)])


def hard_environment(inst: HardInstance) -> Environment:
    """Bandit actions whose oracles extend the closed-form means linearly.

    For any observable, Tr(rho_a O) collapses to the identity coefficient
    plus delta times the coefficients of the strings assigned to a.
    """
    owner = {p: a for p, a in zip(inst.contexts, inst.assignment)}

    def make_mean(a: int):
        def mean(o: Observable) -> float:
            total = 0.0
            for string, coeff in o.items():
                if string.is_identity():
                    total += coeff
                elif owner.get(string) == a:
                    total += coeff * inst.delta
            return total

        return mean

    def make_sampler(a: int):
        def sampler(o: Observable, rng: np.random.Generator) -> float:
            total = 0.0
            for string, coeff in o.items():
                if string.is_identity():
                    total += coeff
                    continue
                mu = inst.delta if owner.get(string) == a else 0.0
                outcome = 1.0 if rng.random() < (mu + 1.0) / 2.0 else -1.0
                total += coeff * outcome
            return total

        return sampler

    actions = tuple(
        Action(a, f"hard_{a}", make_mean(a), make_sampler(a)) for a in range(inst.k)
    )
    return Environment(inst.n, actions)


def dense_action_matrix(inst: HardInstance, a: int) -> np.ndarray:
    """Explicit rho_a = I/d + sum delta/d * sigma for small-n positivity checks."""
    if inst.n > _DENSE_MAX_QUBITS:
        raise CapabilityError(
            f"dense check limited to n <= {_DENSE_MAX_QUBITS}, got {inst.n}"
        )
    if not 0 <= a < inst.k:
        raise IndexError(f"action {a} outside [0, {inst.k})")
    dim = 2**inst.n
    rho = np.eye(dim, dtype=complex) / dim
    for string, owner in zip(inst.contexts, inst.assignment):
        if owner == a:
            rho += (inst.delta / dim) * string.to_matrix()
    return rho


def uniform_policy_regret(inst: HardInstance, rng: np.random.Generator) -> float:
    """Cumulative exact-gap regret of uniformly random play over the schedule."""
    schedule = np.repeat(np.arange(inst.c_prime), inst.group_length)
    choices = rng.integers(0, inst.k, size=schedule.size)
    optimal = np.asarray(inst.assignment)[schedule]
    return float(inst.delta * np.count_nonzero(choices != optimal))
