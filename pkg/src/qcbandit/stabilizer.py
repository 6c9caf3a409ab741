"""Stabilizer states and exact Pauli expectation values.

A state is specified by n commuting, independent, sign-carrying Pauli
generators.  The expectation of any Pauli string is then +1, -1 or 0 and is
computed by GF(2) Gaussian elimination over the generators' symplectic
vectors, with the sign recovered by multiplying out the solving subset.
A dense statevector oracle is provided for small n so the fast path can be
checked exactly.

States are immutable once constructed; the echelon form is fixed at
construction and expectation queries only append to a per-string memo, so
concurrent readers are safe.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import CapabilityError, ConfigurationError, DimensionError, InvariantError
from .paulis import Observable, PauliString, PhasedPauli, commutes

_DENSE_MAX_QUBITS = 5


class StabilizerState:
    """Pure n-qubit state fixed by n signed Pauli generators.

    Construction validates that the generators pairwise commute, carry
    phases +/-1 only, and are independent over GF(2); the row-echelon form
    built during the rank check is kept for expectation queries.
    """

    __slots__ = ("n", "generators", "label", "_pivot_rows", "_memo")

    def __init__(self, generators: Sequence[PhasedPauli], label: str = "") -> None:
        if not generators:
            raise ValueError("at least one generator required")
        n = generators[0].string.n
        if len(generators) != n:
            raise InvariantError(f"expected {n} generators, got {len(generators)}")
        for g in generators:
            if g.string.n != n:
                raise DimensionError("generators act on differing qubit counts")
            if g.phase not in (1 + 0j, -1 + 0j):
                raise InvariantError(f"generator phase must be +/-1, got {g.phase}")
        for i in range(n):
            for j in range(i + 1, n):
                if not commutes(generators[i].string, generators[j].string):
                    raise InvariantError(
                        f"generators {i} and {j} anticommute: "
                        f"{generators[i]} vs {generators[j]}"
                    )
        self.n = n
        self.generators = tuple(generators)
        self.label = label
        # pivot bit -> (symplectic vector, generator subset mask), echelon form
        self._pivot_rows: dict[int, tuple[int, int]] = {}
        for index, g in enumerate(self.generators):
            vec = (g.string.x << n) | g.string.z
            combo = 1 << index
            while vec:
                top = vec.bit_length() - 1
                row = self._pivot_rows.get(top)
                if row is None:
                    self._pivot_rows[top] = (vec, combo)
                    break
                vec ^= row[0]
                combo ^= row[1]
            else:
                raise InvariantError(f"generator {index} is dependent on earlier ones")
        self._memo: dict[PauliString, int] = {}

    def __repr__(self) -> str:
        return f"StabilizerState(n={self.n}, label={self.label!r})"


def expectation(state: StabilizerState, p: PauliString) -> int:
    """Tr(rho p) for a stabilizer state: +1/-1 if sigma*p is in the group, else 0."""
    if p.n != state.n:
        raise DimensionError(f"string on {p.n} qubits, state on {state.n}")
    cached = state._memo.get(p)
    if cached is not None:
        return cached
    vec = (p.x << state.n) | p.z
    combo = 0
    while vec:
        row = state._pivot_rows.get(vec.bit_length() - 1)
        if row is None:
            state._memo[p] = 0
            return 0
        vec ^= row[0]
        combo ^= row[1]
    acc = PhasedPauli(PauliString.identity(state.n))
    index = 0
    while combo:
        if combo & 1:
            acc = acc * state.generators[index]
        combo >>= 1
        index += 1
    if acc.string != p or acc.phase not in (1 + 0j, -1 + 0j):
        raise InvariantError(
            "generator subset does not reproduce the queried string with a real sign"
        )
    sign = int(acc.phase.real)
    state._memo[p] = sign
    return sign


def expectation_observable(state: StabilizerState, o: Observable) -> float:
    """Exact mean of an observable: weighted sum of per-string expectations."""
    if o.n != state.n:
        raise DimensionError(f"observable on {o.n} qubits, state on {state.n}")
    total = 0.0
    for string, coeff in o.items():
        if string.is_identity():
            total += coeff
        else:
            total += coeff * expectation(state, string)
    return total


def dense_expectation(state: StabilizerState, o: Observable) -> float:
    """Statevector oracle for small n: exact quadratic form <psi|O|psi>.

    Builds rho as the product of (I + g)/2 projectors, extracts the unique
    +1 eigenvector, and evaluates the observable's dense matrix against it.
    """
    if state.n > _DENSE_MAX_QUBITS:
        raise CapabilityError(
            f"dense oracle limited to n <= {_DENSE_MAX_QUBITS}, got {state.n}"
        )
    if o.n != state.n:
        raise DimensionError(f"observable on {o.n} qubits, state on {state.n}")
    dim = 2**state.n
    rho = np.eye(dim, dtype=complex)
    for g in state.generators:
        rho = rho @ (np.eye(dim, dtype=complex) + g.phase * g.string.to_matrix()) / 2.0
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > 1e-9:
        raise InvariantError(f"projection is not rank one (trace {trace})")
    column = int(np.argmax(np.linalg.norm(rho, axis=0)))
    psi = rho[:, column]
    psi = psi / np.linalg.norm(psi)
    value = complex(np.conjugate(psi) @ (o.to_matrix() @ psi))
    return float(value.real)


def _signed_single(n: int, site: int, letter: str, sign: int) -> PhasedPauli:
    return PhasedPauli(PauliString.single(n, site, letter), complex(sign))


def _check_n(n: int, even: bool = False) -> None:
    if n < 2:
        raise ConfigurationError(f"need at least 2 qubits, got {n}")
    if even and n % 2 != 0:
        raise ConfigurationError(f"alternating-pattern states need even n, got {n}")


def all_plus(n: int) -> StabilizerState:
    """|++...+>: generators +X_i."""
    _check_n(n)
    return StabilizerState([_signed_single(n, i, "X", +1) for i in range(n)], "all_plus")


def all_minus(n: int) -> StabilizerState:
    """|--...->: generators -X_i."""
    _check_n(n)
    return StabilizerState([_signed_single(n, i, "X", -1) for i in range(n)], "all_minus")


def all_one(n: int) -> StabilizerState:
    """|11...1>: generators -Z_i."""
    _check_n(n)
    return StabilizerState([_signed_single(n, i, "Z", -1) for i in range(n)], "all_one")


def neel_z(n: int) -> StabilizerState:
    """|0101...>: generators alternate +Z, -Z starting with +Z on site 0."""
    _check_n(n, even=True)
    gens = [_signed_single(n, i, "Z", +1 if i % 2 == 0 else -1) for i in range(n)]
    return StabilizerState(gens, "neel_z")


def x_alternating(n: int) -> StabilizerState:
    """|+-+-...>: generators alternate +X, -X starting with +X on site 0."""
    _check_n(n, even=True)
    gens = [_signed_single(n, i, "X", +1 if i % 2 == 0 else -1) for i in range(n)]
    return StabilizerState(gens, "x_alternating")


def cluster_state(n: int, sign: int) -> StabilizerState:
    """Periodic 1-D cluster state: generators sign * X_{i-1} Z_i X_{i+1}.

    Indices wrap around modulo n; the three single-site factors are
    multiplied out so coinciding sites (n = 2) collapse correctly.
    """
    _check_n(n)
    if sign not in (+1, -1):
        raise ConfigurationError(f"sign must be +1 or -1, got {sign}")
    gens = []
    for i in range(n):
        term = (
            PhasedPauli(PauliString.single(n, (i - 1) % n, "X"))
            * PhasedPauli(PauliString.single(n, i, "Z"))
            * PhasedPauli(PauliString.single(n, (i + 1) % n, "X"))
        )
        gens.append(PhasedPauli(term.string, term.phase * sign))
    label = "cluster_plus" if sign > 0 else "cluster_minus"
    return StabilizerState(gens, label)


def random_product_state(n: int, rng: np.random.Generator, label: str = "") -> StabilizerState:
    """Product state with a random signed X/Y/Z generator on each site."""
    _check_n(n)
    gens = []
    for i in range(n):
        letter = ("X", "Y", "Z")[int(rng.integers(0, 3))]
        sign = +1 if rng.integers(0, 2) == 0 else -1
        gens.append(_signed_single(n, i, letter, sign))
    return StabilizerState(gens, label or "random_product")
