"""Disjoint-parameter LinUCB over an incrementally built orthonormal basis.

Incoming context observables are compressed to coordinate vectors against
an orthonormal basis grown by modified Gram-Schmidt; the basis size is the
effective dimension of everything seen so far.  Each action keeps a ridge
design matrix V = I + sum c c^T and response vector b; scores are the ridge
estimate plus a confidence width alpha * sqrt(c^T V^-1 c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import NumericalError
from .paulis import Observable, hs_inner

AUTO = "auto"
FIXED = "fixed"


@dataclass
class GramBasis:
    """Ordered orthonormal observables spanning every context seen so far."""

    tol: float = 1e-9
    members: list[Observable] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.members)

    def max_orthonormality_defect(self) -> float:
        """max |<b_i, b_j> - delta_ij|; diagnostic used by tests."""
        worst = 0.0
        for i, bi in enumerate(self.members):
            for j, bj in enumerate(self.members):
                target = 1.0 if i == j else 0.0
                worst = max(worst, abs(hs_inner(bi, bj) - target))
        return worst


class ActionStat:
    """Per-action ridge statistics, padded as the basis grows."""

    __slots__ = ("V", "b")

    def __init__(self, dim: int = 0) -> None:
        self.V = np.eye(dim)
        self.b = np.zeros(dim)

    def grow(self) -> None:
        dim = self.V.shape[0]
        padded = np.eye(dim + 1)
        padded[:dim, :dim] = self.V
        self.V = padded
        self.b = np.append(self.b, 0.0)


@dataclass
class AlphaSchedule:
    """Confidence-width schedule: fixed constant or the norm-bound formula.

    In auto mode the width at round t is
        m + sqrt(2 log(1/delta) + d log(1 + t L^2 / d))
    where m and L bound the parameter and context coordinate norms and d is
    the current effective dimension.
    """

    mode: str = AUTO
    fixed_value: float = 1.0
    m: float = 1.0
    L: float = 1.0
    delta: float = 0.01
    d: int = 1

    def __post_init__(self) -> None:
        if self.mode not in (AUTO, FIXED):
            raise ValueError(f"mode must be '{AUTO}' or '{FIXED}', got {self.mode!r}")
        if self.mode == AUTO:
            if self.m <= 0 or self.L <= 0:
                raise ValueError("norm bounds m and L must be positive")
            if not 0 < self.delta <= 1:
                raise ValueError(f"delta must lie in (0, 1], got {self.delta}")


def alpha_value(schedule: AlphaSchedule, t: int) -> float:
    if schedule.mode == FIXED:
        return schedule.fixed_value
    d = max(schedule.d, 1)
    inner = 2.0 * math.log(1.0 / schedule.delta) + d * math.log(
        1.0 + t * schedule.L**2 / d
    )
    return schedule.m + math.sqrt(inner)


class PolicyState:
    """Everything the learner carries between rounds."""

    __slots__ = ("basis", "stats", "schedule", "round")

    def __init__(self, k: int, schedule: AlphaSchedule, tol: float = 1e-9) -> None:
        if k < 1:
            raise ValueError("need at least one action")
        self.basis = GramBasis(tol=tol)
        self.stats = [ActionStat() for _ in range(k)]
        self.schedule = schedule
        self.round = 0

    @property
    def k(self) -> int:
        return len(self.stats)

    @property
    def d_eff(self) -> int:
        return self.basis.size


def gram_update(state: PolicyState, c: Observable) -> np.ndarray:
    """Project a context onto the basis, growing it if a residual survives.

    Returns the coordinate vector of c in the (possibly enlarged) basis.
    The growth threshold is relative to the incoming context's norm, so an
    exactly spanned or zero context never adds a dimension.  The running
    residual is kept as a plain coefficient map to avoid building throwaway
    observables every round.
    """
    coords = []
    work = c.as_dict()
    incoming_norm = math.sqrt(sum(w * w for w in work.values()))
    for member in state.basis.members:
        proj = 0.0
        for p, w in member.items():
            v = work.get(p)
            if v is not None:
                proj += w * v
        coords.append(proj)
        if proj != 0.0:
            for p, w in member.items():
                work[p] = work.get(p, 0.0) - proj * w
    residual_norm = math.sqrt(sum(v * v for v in work.values()))
    if residual_norm > state.basis.tol * incoming_norm:
        scale = 1.0 / residual_norm
        residual = Observable(c.n, ((p, v * scale) for p, v in work.items()))
        state.basis.members.append(residual)
        coords.append(residual_norm)
        for stat in state.stats:
            stat.grow()
    return np.asarray(coords)


def select_action(state: PolicyState, coords: np.ndarray) -> tuple[int, np.ndarray]:
    """UCB scores for every action; smallest index attaining the max wins."""
    state.schedule.d = max(state.d_eff, 1)
    alpha = alpha_value(state.schedule, state.round)
    scores = np.zeros(state.k)
    if coords.size:
        for a, stat in enumerate(state.stats):
            scores[a] = _ucb_score(stat, coords, alpha)
    if not np.all(np.isfinite(scores)):
        raise NumericalError(f"non-finite action scores: {scores}")
    return int(np.argmax(scores)), scores


def _ucb_score(stat: ActionStat, coords: np.ndarray, alpha: float) -> float:
    # finiteness is enforced on the final scores, not scipy's inputs
    factor = cho_factor(stat.V, lower=True, check_finite=False)
    theta = cho_solve(factor, stat.b, check_finite=False)
    quad = float(coords @ cho_solve(factor, coords, check_finite=False))
    if -1e-12 < quad < 0.0:
        quad = 0.0
    if quad < 0.0 or not math.isfinite(quad):
        return math.nan
    return float(theta @ coords) + alpha * math.sqrt(quad)


def update(state: PolicyState, a: int, coords: np.ndarray, reward: float) -> None:
    """Rank-one design update for the played action; other actions untouched."""
    if not 0 <= a < state.k:
        raise IndexError(f"action index {a} outside [0, {state.k})")
    stat = state.stats[a]
    stat.V += np.outer(coords, coords)
    stat.b += reward * coords
    state.round += 1


class PlainLinUCB:
    """LinUCB over a fixed ambient coordinate basis, without compression.

    Used as the uncompressed reference when checking that the Gram-basis
    policy makes identical decisions on small systems.
    """

    def __init__(self, k: int, dim: int, alpha: float) -> None:
        self.alpha = alpha
        self.stats = [ActionStat(dim) for _ in range(k)]

    def select(self, coords: np.ndarray) -> tuple[int, np.ndarray]:
        scores = np.zeros(len(self.stats))
        for a, stat in enumerate(self.stats):
            scores[a] = _ucb_score(stat, coords, self.alpha)
        if not np.all(np.isfinite(scores)):
            raise NumericalError(f"non-finite action scores: {scores}")
        return int(np.argmax(scores)), scores

    def update(self, a: int, coords: np.ndarray, reward: float) -> None:
        stat = self.stats[a]
        stat.V += np.outer(coords, coords)
        stat.b += reward * coords
