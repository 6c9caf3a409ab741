"""Context observables: transverse-field Ising and generalized cluster chains.

Both families use periodic boundary conditions, so every translation-
invariant action mean is an exact multiple of the qubit count and the
phase boundaries sit exactly at coupling +/-1.  Contexts handed to the
bandit are the negated Hamiltonians: maximizing reward then means
recommending the lowest-energy state.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigurationError
from .paulis import Observable, PauliString
from .stabilizer import (
    StabilizerState,
    all_minus,
    all_one,
    all_plus,
    cluster_state,
    neel_z,
    x_alternating,
)

ISING = "ising"
CLUSTER = "cluster"


@dataclass(frozen=True, slots=True)
class IsingParams:
    h: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.h):
            raise ConfigurationError(f"field must be finite, got {self.h}")

    def as_tuple(self) -> tuple[float, ...]:
        return (self.h,)


@dataclass(frozen=True, slots=True)
class ClusterParams:
    j1: float
    j2: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.j1) and np.isfinite(self.j2)):
            raise ConfigurationError(f"couplings must be finite, got {self.j1}, {self.j2}")

    def as_tuple(self) -> tuple[float, ...]:
        return (self.j1, self.j2)


@dataclass(frozen=True, slots=True)
class ContextDistribution:
    """Uniform distribution over the family's coupling parameters."""

    family: str
    ranges: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        expected = {ISING: 1, CLUSTER: 2}.get(self.family)
        if expected is None:
            raise ConfigurationError(f"unknown family {self.family!r}")
        if len(self.ranges) != expected:
            raise ConfigurationError(
                f"{self.family} takes {expected} parameter range(s), got {len(self.ranges)}"
            )
        for lo, hi in self.ranges:
            if not (np.isfinite(lo) and np.isfinite(hi)) or lo > hi:
                raise ConfigurationError(f"invalid interval [{lo}, {hi}]")


def ising_distribution(h_min: float = -2.0, h_max: float = 2.0) -> ContextDistribution:
    return ContextDistribution(ISING, ((h_min, h_max),))


def cluster_distribution(
    j1_min: float = -2.0,
    j1_max: float = 2.0,
    j2_min: float = -2.0,
    j2_max: float = 2.0,
) -> ContextDistribution:
    return ContextDistribution(CLUSTER, ((j1_min, j1_max), (j2_min, j2_max)))


def _zz(n: int, i: int) -> PauliString:
    x = 0
    z = (1 << i) | (1 << ((i + 1) % n))
    return PauliString(n, x, z)


def _xx(n: int, i: int) -> PauliString:
    x = (1 << i) | (1 << ((i + 1) % n))
    return PauliString(n, x, 0)


def _xzx(n: int, i: int) -> PauliString:
    x = (1 << ((i - 1) % n)) | (1 << ((i + 1) % n))
    z = 1 << i
    return PauliString(n, x, z)


# term strings depend only on n, so they are shared across sampled contexts
@lru_cache(maxsize=None)
def _ising_strings(n: int) -> tuple[tuple[PauliString, ...], tuple[PauliString, ...]]:
    zz = tuple(_zz(n, i) for i in range(n))
    x = tuple(PauliString.single(n, i, "X") for i in range(n))
    return zz, x


@lru_cache(maxsize=None)
def _cluster_strings(
    n: int,
) -> tuple[tuple[PauliString, ...], tuple[PauliString, ...], tuple[PauliString, ...]]:
    z = tuple(PauliString.single(n, i, "Z") for i in range(n))
    xx = tuple(_xx(n, i) for i in range(n))
    xzx = tuple(_xzx(n, i) for i in range(n))
    return z, xx, xzx


def ising_hamiltonian(n: int, params: IsingParams) -> Observable:
    """Sum over sites of Z_i Z_{i+1} + h X_i, periodic."""
    if n < 3:
        raise ConfigurationError(f"periodic chain needs n >= 3, got {n}")
    zz, x = _ising_strings(n)
    terms = [(p, 1.0) for p in zz]
    terms += [(p, params.h) for p in x]
    return Observable(n, terms)


def cluster_hamiltonian(n: int, params: ClusterParams) -> Observable:
    """Sum over sites of Z_i - j1 X_i X_{i+1} - j2 X_{i-1} Z_i X_{i+1}, periodic."""
    if n < 4:
        raise ConfigurationError(f"three-site periodic terms need n >= 4, got {n}")
    z, xx, xzx = _cluster_strings(n)
    terms = [(p, 1.0) for p in z]
    terms += [(p, -params.j1) for p in xx]
    terms += [(p, -params.j2) for p in xzx]
    return Observable(n, terms)


def recommendation_context(hamiltonian: Observable) -> Observable:
    """Negate a Hamiltonian so reward maximization is energy minimization."""
    return -hamiltonian


def sample_context(
    dist: ContextDistribution, n: int, rng: np.random.Generator
) -> tuple[IsingParams | ClusterParams, Observable]:
    """Draw parameters uniformly and return them with the negated observable."""
    draws = [float(rng.uniform(lo, hi)) for lo, hi in dist.ranges]
    if dist.family == ISING:
        params: IsingParams | ClusterParams = IsingParams(draws[0])
        hamiltonian = ising_hamiltonian(n, params)
    else:
        params = ClusterParams(draws[0], draws[1])
        hamiltonian = cluster_hamiltonian(n, params)
    return params, recommendation_context(hamiltonian)


def ising_actions(n: int) -> list[StabilizerState]:
    """Ground states of the three field-limit Ising chains, in fixed order."""
    if n % 2 != 0 or n < 4:
        raise ConfigurationError(f"action set needs even n >= 4, got {n}")
    return [all_plus(n), neel_z(n), all_minus(n)]


def cluster_actions(n: int) -> list[StabilizerState]:
    """Ground states of the five coupling-limit cluster chains, in fixed order."""
    if n % 2 != 0 or n < 4:
        raise ConfigurationError(f"action set needs even n >= 4, got {n}")
    return [
        x_alternating(n),
        cluster_state(n, +1),
        all_plus(n),
        cluster_state(n, -1),
        all_one(n),
    ]
