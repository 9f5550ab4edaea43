"""Mod-2 cohomology of K(Z^r, 2) with its Sq^2 action.

The ring is the polynomial algebra GF(2)[x_1, ..., x_r] with every x_i in
degree 2.  All generators are reductions of integral classes, so Sq^1 is
identically zero and Sq^2 is the derivation determined by Sq^2 x_i = x_i^2.

Matrices use the column convention: a map from a degree-d basis of size n to
a degree-(d+2) basis of size m is an ``m x n`` BitMatrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .errors import DimensionMismatch, SingularSubstitution
from .linalg import BitMatrix, is_invertible

MAX_RANK = 16

Exponents = Tuple[int, ...]


def _check_rank(r: int) -> None:
    if not 0 <= r <= MAX_RANK:
        raise ValueError(f"rank must lie in [0, {MAX_RANK}], got {r}")


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: Exponents

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return 2 * sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.rank != other.rank:
            raise DimensionMismatch("monomials of different rank")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        parts = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) or "1"


@lru_cache(maxsize=None)
def _compositions(k: int, r: int) -> Tuple[Exponents, ...]:
    """Exponent vectors of total ``k`` in ``r`` variables, lexicographically descending."""
    if r == 0:
        return ((),) if k == 0 else ()
    if r == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        for rest in _compositions(k - first, r - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _index(k: int, r: int) -> Dict[Exponents, int]:
    return {e: i for i, e in enumerate(_compositions(k, r))}


def monomial_basis(r: int, degree: int) -> List[Monomial]:
    """Monomials of the given cohomological degree in graded-lex order.

    >>> [str(m) for m in monomial_basis(2, 4)]
    ['x1^2', 'x1*x2', 'x2^2']
    """
    _check_rank(r)
    if degree < 0 or degree % 2:
        return []
    return [Monomial(e) for e in _compositions(degree // 2, r)]


@dataclass(frozen=True)
class GradedElement:
    """Homogeneous element of H^degree(K(Z^r, 2); Z_2), a set of monomials."""

    rank: int
    degree: int
    support: FrozenSet[Exponents]

    def __post_init__(self) -> None:
        _check_rank(self.rank)
        k2 = self.degree
        for e in self.support:
            if len(e) != self.rank or 2 * sum(e) != k2:
                raise DimensionMismatch(f"monomial {e} not of rank {self.rank} and degree {k2}")

    @classmethod
    def zero(cls, r: int, degree: int) -> "GradedElement":
        return cls(r, degree, frozenset())

    @classmethod
    def from_monomials(cls, r: int, degree: int, monomials: Iterable) -> "GradedElement":
        """Sum of monomials; repeated terms cancel in pairs."""
        support: set = set()
        for m in monomials:
            e = m.exponents if isinstance(m, Monomial) else tuple(m)
            support ^= {e}
        return cls(r, degree, frozenset(support))

    @classmethod
    def monomial(cls, exponents: Iterable[int]) -> "GradedElement":
        e = tuple(exponents)
        return cls(len(e), 2 * sum(e), frozenset([e]))

    @classmethod
    def generator(cls, r: int, i: int) -> "GradedElement":
        e = [0] * r
        e[i] = 1
        return cls.monomial(e)

    def is_zero(self) -> bool:
        return not self.support

    def monomials(self) -> List[Monomial]:
        return sorted((Monomial(e) for e in self.support), reverse=True)

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._compatible(other)
        if self.degree != other.degree:
            raise DimensionMismatch("adding elements of different degree")
        return GradedElement(self.rank, self.degree, self.support ^ other.support)

    def __mul__(self, other: "GradedElement") -> "GradedElement":
        self._compatible(other)
        out: set = set()
        for a in self.support:
            for b in other.support:
                out ^= {tuple(x + y for x, y in zip(a, b))}
        return GradedElement(self.rank, self.degree + other.degree, frozenset(out))

    def _compatible(self, other: "GradedElement") -> None:
        if self.rank != other.rank:
            raise DimensionMismatch("elements of different rank")

    def to_vector(self) -> int:
        """Bitset of coordinates in ``monomial_basis(rank, degree)``."""
        idx = _index(self.degree // 2, self.rank)
        v = 0
        for e in self.support:
            v |= 1 << idx[e]
        return v

    @classmethod
    def from_vector(cls, r: int, degree: int, v: int) -> "GradedElement":
        basis = _compositions(degree // 2, r)
        return cls(r, degree, frozenset(basis[j] for j in range(len(basis)) if (v >> j) & 1))

    def __str__(self) -> str:
        return " + ".join(str(m) for m in self.monomials()) or "0"


def _sq2_exponents(e: Exponents) -> List[Exponents]:
    # Only odd exponents survive: coefficient e_i mod 2.
    out = []
    for i, ei in enumerate(e):
        if ei & 1:
            out.append(e[:i] + (ei + 1,) + e[i + 1:])
    return out


def sq2(element: GradedElement) -> GradedElement:
    """Sq^2 as the derivation extending x_i -> x_i^2."""
    out: set = set()
    for e in element.support:
        for t in _sq2_exponents(e):
            out ^= {t}
    return GradedElement(element.rank, element.degree + 2, frozenset(out))


@lru_cache(maxsize=None)
def sq2_matrix(r: int, degree: int) -> BitMatrix:
    """Matrix of Sq^2: H^degree -> H^(degree+2) in the monomial bases."""
    _check_rank(r)
    if degree % 2 or degree < 0:
        raise ValueError("degree must be even and nonnegative")
    k = degree // 2
    src = _compositions(k, r)
    tgt = _index(k + 1, r)
    rows = [0] * len(tgt)
    for j, e in enumerate(src):
        for t in _sq2_exponents(e):
            rows[tgt[t]] ^= 1 << j
    return BitMatrix(len(tgt), len(src), tuple(rows))


def _poly_mul(a: Dict[Exponents, int], b: Dict[Exponents, int]) -> Dict[Exponents, int]:
    out: Dict[Exponents, int] = {}
    for ea in a:
        for eb in b:
            e = tuple(x + y for x, y in zip(ea, eb))
            if e in out:
                del out[e]
            else:
                out[e] = 1
    return out


def _substitute_exponents(a: BitMatrix, e: Exponents) -> Dict[Exponents, int]:
    r = a.nrows
    images = []
    for i in range(r):
        lin = {}
        for j in range(r):
            if a[i, j]:
                unit = [0] * r
                unit[j] = 1
                lin[tuple(unit)] = 1
        images.append(lin)
    acc: Dict[Exponents, int] = {(0,) * r: 1}
    for i, ei in enumerate(e):
        for _ in range(ei):
            acc = _poly_mul(acc, images[i])
    return acc


def _check_substitution(a: BitMatrix, r: int) -> None:
    if a.shape != (r, r):
        raise DimensionMismatch(f"substitution must be {r}x{r}, got {a.shape}")
    if not is_invertible(a):
        raise SingularSubstitution("substitution matrix is not invertible over GF(2)")


def apply_substitution(a: BitMatrix, element: GradedElement) -> GradedElement:
    """Ring map induced by x_i -> sum_j a[i, j] x_j."""
    _check_substitution(a, element.rank)
    out: set = set()
    for e in element.support:
        for t in _substitute_exponents(a, e):
            out ^= {t}
    return GradedElement(element.rank, element.degree, frozenset(out))


def substitution_matrix(a: BitMatrix, degree: int) -> BitMatrix:
    """Matrix of the substitution ring map on H^degree (square, column convention)."""
    r = a.nrows
    _check_substitution(a, r)
    k = degree // 2
    src = _compositions(k, r)
    idx = _index(k, r)
    rows = [0] * len(src)
    for j, e in enumerate(src):
        for t in _substitute_exponents(a, e):
            rows[idx[t]] ^= 1 << j
    return BitMatrix(len(src), len(src), tuple(rows))


def all_bit_vectors(r: int) -> List[Tuple[int, ...]]:
    return [tuple(bits) for bits in product((0, 1), repeat=r)]
