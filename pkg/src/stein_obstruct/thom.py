"""Thom module of a complex line bundle over K(Z^r, 2) and its mod-2 chain complex.

The reduced cohomology of the Thom space is free over H^*(K(Z^r, 2)) on the
Thom class U in degree 2.  By the Wu formula Sq^1 U = 0 and Sq^2 U = w2 * U,
so by the Cartan formula

    Sq^2(U * m) = U * (w2 * m + Sq^2 m).

Only w2 = c_1 mod 2 enters.  The chain complex has C_i = H_{2i+2}(T; Z_2)
with differential the dual of Sq^2, i.e. the transpose of the Sq^2 matrix in
the monomial bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .cache import MatrixCache
from .chain import ChainComplex, validate
from .cohomology import GradedElement, _compositions, _index, _sq2_exponents, monomial_basis
from .errors import DimensionMismatch, InvalidComplex, TopIndexTooSmall
from .linalg import BitMatrix

DEFAULT_TOP_INDEX = 6


@dataclass(frozen=True)
class LineBundleClass:
    """A complex line bundle over K(Z^r, 2), remembered through w2 only."""

    w2: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "w2", tuple(int(b) & 1 for b in self.w2))

    @property
    def rank(self) -> int:
        return len(self.w2)

    @classmethod
    def from_bits(cls, bits: str) -> "LineBundleClass":
        bits = bits.strip()
        if bits in ("", "-"):
            return cls(())
        if set(bits) - {"0", "1"}:
            raise ValueError(f"w2 must be a bit string, got {bits!r}")
        return cls(tuple(int(b) for b in bits))

    @classmethod
    def from_chern(cls, c1: Sequence[int]) -> "LineBundleClass":
        return cls(tuple(c % 2 for c in c1))

    def bits(self) -> str:
        return "".join(map(str, self.w2))

    def w2_element(self) -> GradedElement:
        r = self.rank
        return GradedElement.from_monomials(
            r, 2, [tuple(1 if j == i else 0 for j in range(r)) for i in range(r) if self.w2[i]]
        )


@dataclass(frozen=True)
class ThomElement:
    underlying: GradedElement

    @property
    def degree(self) -> int:
        return 2 + self.underlying.degree

    def __str__(self) -> str:
        terms = [("U" if str(m) == "1" else f"U*{m}") for m in self.underlying.monomials()]
        return " + ".join(terms) or "0"


def thom_basis(bundle: LineBundleClass, thom_degree: int) -> List[ThomElement]:
    """Basis ``{U * m}`` of H^thom_degree(T; Z_2); empty in odd degrees."""
    if thom_degree < 2 or thom_degree % 2:
        return []
    return [
        ThomElement(GradedElement.monomial(m.exponents))
        for m in monomial_basis(bundle.rank, thom_degree - 2)
    ]


def _sq2_thom_rows(r: int, w2: Tuple[int, ...], k: int) -> BitMatrix:
    src = _compositions(k, r)
    tgt = _index(k + 1, r)
    rows = [0] * len(tgt)
    for j, e in enumerate(src):
        targets: List[Tuple[int, ...]] = []
        for i in range(r):
            if w2[i]:
                targets.append(e[:i] + (e[i] + 1,) + e[i + 1:])
        targets.extend(_sq2_exponents(e))
        for t in targets:
            rows[tgt[t]] ^= 1 << j
    return BitMatrix(len(tgt), len(src), tuple(rows))


@lru_cache(maxsize=4096)
def _sq2_thom_cached(r: int, w2: Tuple[int, ...], k: int) -> BitMatrix:
    return _sq2_thom_rows(r, w2, k)


def sq2_thom_matrix(
    bundle: LineBundleClass, thom_degree: int, cache: Optional[MatrixCache] = None
) -> BitMatrix:
    """Matrix of Sq^2 from Thom degree ``thom_degree`` to ``thom_degree + 2``."""
    if thom_degree < 2 or thom_degree % 2:
        raise ValueError("thom_degree must be even and at least 2")
    k = (thom_degree - 2) // 2
    if cache is None:
        return _sq2_thom_cached(bundle.rank, bundle.w2, k)
    m = cache.get(bundle.rank, bundle.w2, thom_degree)
    if m is None:
        m = _sq2_thom_rows(bundle.rank, bundle.w2, k)
        cache.put(bundle.rank, bundle.w2, thom_degree, m)
    return m


def build_chain_complex(
    bundle: LineBundleClass,
    top_index: int = DEFAULT_TOP_INDEX,
    cache: Optional[MatrixCache] = None,
) -> ChainComplex:
    """``C_i = H_{2i+2}(T; Z_2)`` for ``0 <= i <= top_index``, ``d_{i+1} = (Sq^2)^*``."""
    if top_index < 4:
        raise TopIndexTooSmall(f"top_index must be >= 4 to reach H_3, got {top_index}")
    dims = tuple(len(_compositions(i, bundle.rank)) for i in range(top_index + 1))
    diffs = tuple(sq2_thom_matrix(bundle, 2 * i + 2, cache).transpose() for i in range(top_index))
    c = ChainComplex(dims, diffs, truncated=True, label=f"C(r={bundle.rank}, w2={bundle.bits()})")
    report = validate(c)
    if not report:
        raise InvalidComplex(report.reason)
    return c


def transform_bundle(a: BitMatrix, bundle: LineBundleClass) -> LineBundleClass:
    """w2 after the substitution x_i -> sum_j a[i, j] x_j, which sends w2 to a^T w2."""
    r = bundle.rank
    if a.shape != (r, r):
        raise DimensionMismatch(f"substitution must be {r}x{r}")
    return LineBundleClass(tuple(sum(a[i, j] * bundle.w2[i] for i in range(r)) % 2 for j in range(r)))
