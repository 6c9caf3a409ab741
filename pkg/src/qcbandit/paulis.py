"""Exact algebra for n-qubit Pauli strings and real-weighted Pauli sums.

A Pauli string is stored as two n-bit integers (x, z): bit i of x marks an X
factor on site i, bit i of z marks a Z factor, and both bits together mark
Y = iXZ.  Products, commutation checks and Hilbert-Schmidt inner products
then reduce to word-level bit arithmetic, which keeps strings on 100 qubits
cheap and hashable.

Sites are 0-indexed; the leftmost character of a letter rendering like
"XIZY" is site 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import DimensionError

PAULI_LETTERS = ("I", "X", "Y", "Z")

_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}

_SINGLE_QUBIT_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

# i**e for e = 0..3; every product of Hermitian Pauli strings lands here.
_PHASES = (1 + 0j, 1j, -1 + 0j, -1j)


class PauliString:
    """Hermitian Pauli word on ``n`` qubits.

    Treated as immutable; the hash is computed once at construction because
    strings are used as dictionary keys in every inner loop.
    """

    __slots__ = ("n", "x", "z", "_hash")

    def __init__(self, n: int, x: int = 0, z: int = 0) -> None:
        if n <= 0:
            raise ValueError(f"qubit count must be positive, got {n}")
        mask = (1 << n) - 1
        if x & ~mask or z & ~mask:
            raise ValueError("x/z bits fall outside the n-qubit register")
        self.n = n
        self.x = x
        self.z = z
        self._hash = hash((n, x, z))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return self.x == other.x and self.z == other.z and self.n == other.n

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "PauliString") -> bool:
        return (self.n, self.x, self.z) < (other.n, other.x, other.z)

    def __repr__(self) -> str:
        return f"PauliString({self.n}, '{self.letters()}')"

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def single(cls, n: int, site: int, letter: str) -> "PauliString":
        """One non-identity letter at ``site``, identity elsewhere."""
        if not 0 <= site < n:
            raise ValueError(f"site {site} outside [0, {n})")
        xb, zb = _LETTER_BITS[letter]
        return cls(n, xb << site, zb << site)

    @classmethod
    def from_letters(cls, letters: str) -> "PauliString":
        x = z = 0
        for site, letter in enumerate(letters):
            try:
                xb, zb = _LETTER_BITS[letter]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {letter!r}") from None
            x |= xb << site
            z |= zb << site
        return cls(len(letters), x, z)

    def letter(self, site: int) -> str:
        return _BITS_LETTER[(self.x >> site) & 1, (self.z >> site) & 1]

    def letters(self) -> str:
        return "".join(self.letter(i) for i in range(self.n))

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def weight(self) -> int:
        """Number of non-identity sites."""
        return (self.x | self.z).bit_count()

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix; intended for small-n oracles and tests."""
        mat = np.ones((1, 1), dtype=complex)
        for site in range(self.n):
            mat = np.kron(mat, _SINGLE_QUBIT_MATS[self.letter(site)])
        return mat

    def __str__(self) -> str:
        return self.letters()


@dataclass(frozen=True, slots=True)
class PhasedPauli:
    """A Pauli string together with a fourth-root-of-unity phase."""

    string: PauliString
    phase: complex = 1 + 0j

    def __post_init__(self) -> None:
        if self.phase not in _PHASES:
            raise ValueError(f"phase must be a fourth root of unity, got {self.phase}")

    def __mul__(self, other: "PhasedPauli") -> "PhasedPauli":
        prod = pauli_product(self.string, other.string)
        return PhasedPauli(prod.string, self.phase * other.phase * prod.phase)

    def __str__(self) -> str:
        tag = {1 + 0j: "+", -1 + 0j: "-", 1j: "+i", -1j: "-i"}[self.phase]
        return f"{tag}{self.string.letters()}"


def pauli_product(p: PauliString, q: PauliString) -> PhasedPauli:
    """Product of two Hermitian Pauli strings: p*q = phase * r.

    Writing each string as i^{|x&z|} X^x Z^z, commuting Z^{z_p} past X^{x_q}
    contributes (-1)^{|z_p & x_q|}; normalizing the result back to Hermitian
    form fixes the remaining power of i.
    """
    if p.n != q.n:
        raise DimensionError(f"cannot multiply strings on {p.n} and {q.n} qubits")
    x = p.x ^ q.x
    z = p.z ^ q.z
    exponent = (
        (p.x & p.z).bit_count()
        + (q.x & q.z).bit_count()
        - (x & z).bit_count()
        + 2 * (p.z & q.x).bit_count()
    ) % 4
    return PhasedPauli(PauliString(p.n, x, z), _PHASES[exponent])


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff pq = qp: the symplectic form over GF(2) vanishes."""
    if p.n != q.n:
        raise DimensionError(f"cannot compare strings on {p.n} and {q.n} qubits")
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) % 2 == 0


class Observable:
    """Real-weighted sum of Pauli strings on a fixed qubit count.

    Duplicate strings are merged at construction and exactly-zero
    coefficients are dropped, so the term map is canonical.  Instances are
    treated as immutable; the arithmetic operators return new objects.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Iterable[tuple[PauliString, float]] = ()) -> None:
        if n <= 0:
            raise ValueError(f"qubit count must be positive, got {n}")
        merged: dict[PauliString, float] = {}
        for string, coeff in terms:
            if string.n != n:
                raise DimensionError(
                    f"term on {string.n} qubits in an observable on {n} qubits"
                )
            acc = merged.get(string, 0.0) + float(coeff)
            if acc == 0.0:
                merged.pop(string, None)
            else:
                merged[string] = acc
        self.n = n
        self._terms = merged

    @classmethod
    def _raw(cls, n: int, merged: dict[PauliString, float]) -> "Observable":
        """Wrap an already-canonical term map without re-merging (internal)."""
        obs = cls.__new__(cls)
        obs.n = n
        obs._terms = merged
        return obs

    def items(self) -> Iterator[tuple[PauliString, float]]:
        return iter(self._terms.items())

    def coeff(self, string: PauliString) -> float:
        return self._terms.get(string, 0.0)

    def as_dict(self) -> Mapping[PauliString, float]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Observable):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    __hash__ = None  # mutable-dict backed; not a dict key

    def __neg__(self) -> "Observable":
        return Observable._raw(self.n, {p: -w for p, w in self._terms.items()})

    def __add__(self, other: "Observable") -> "Observable":
        if self.n != other.n:
            raise DimensionError("observable qubit counts differ")
        combined = list(self._terms.items()) + list(other._terms.items())
        return Observable(self.n, combined)

    def __sub__(self, other: "Observable") -> "Observable":
        return self + (-other)

    def __mul__(self, scalar: float) -> "Observable":
        if scalar == 0.0:
            return Observable(self.n)
        return Observable._raw(self.n, {p: w * scalar for p, w in self._terms.items()})

    __rmul__ = __mul__

    def to_matrix(self) -> np.ndarray:
        mat = np.zeros((2**self.n, 2**self.n), dtype=complex)
        for string, coeff in self._terms.items():
            mat += coeff * string.to_matrix()
        return mat

    def to_text(self) -> str:
        """One line per term, ``coeff<TAB>letters``, in canonical string order."""
        return "\n".join(
            f"{self._terms[p]!r}\t{p.letters()}" for p in sorted(self._terms)
        )

    def __repr__(self) -> str:
        return f"Observable(n={self.n}, terms={len(self._terms)})"


def hs_inner(a: Observable, b: Observable) -> float:
    """Hilbert-Schmidt inner product Tr(ab)/2^n via Pauli-basis orthonormality."""
    if a.n != b.n:
        raise DimensionError("observable qubit counts differ")
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    get = big._terms.get
    return sum(w * get(p, 0.0) for p, w in small._terms.items())


def hs_norm(a: Observable) -> float:
    return float(np.sqrt(hs_inner(a, a)))


def all_pauli_strings(n: int) -> Iterator[PauliString]:
    """All 4^n strings in a fixed order, identity first.  Small n only."""
    for x in range(1 << n):
        for z in range(1 << n):
            yield PauliString(n, x, z)


def random_bits(n: int, rng: np.random.Generator) -> int:
    """Uniform n-bit integer drawn in 32-bit chunks (n may exceed 64)."""
    value = 0
    for offset in range(0, n, 32):
        width = min(32, n - offset)
        value |= int(rng.integers(0, 1 << width)) << offset
    return value


def random_pauli_string(
    n: int, rng: np.random.Generator, allow_identity: bool = False
) -> PauliString:
    while True:
        p = PauliString(n, random_bits(n, rng), random_bits(n, rng))
        if allow_identity or not p.is_identity():
            return p
