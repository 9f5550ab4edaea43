"""Homology of GF(2) chain complexes, tensor products and the Kunneth cross-check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .chain import ChainComplex, ValidationReport, validate
from .cohomology import _compositions, _index
from .errors import InvalidComplex
from .linalg import BitMatrix, rank
from .thom import DEFAULT_TOP_INDEX, LineBundleClass, build_chain_complex

__all__ = [
    "ChainComplex",
    "ValidationReport",
    "validate",
    "homology_dims",
    "homology",
    "HomologyResult",
    "tensor",
    "tensor_basis",
    "kunneth_check",
    "KunnethReport",
    "unit_complex",
]


@dataclass(frozen=True)
class HomologyResult:
    dims: Tuple[int, ...]
    homology: Tuple[int, ...]
    ranks: Tuple[int, ...]
    truncated_indices: Tuple[int, ...]

    @property
    def verified(self) -> Tuple[int, ...]:
        """Homology at the indices below any truncation boundary."""
        return tuple(h for k, h in enumerate(self.homology) if k not in self.truncated_indices)

    def as_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "homology": list(self.homology),
            "verified_homology": list(self.verified),
            "ranks": list(self.ranks),
            "truncated_indices": list(self.truncated_indices),
        }


def _require_valid(c: ChainComplex) -> None:
    report = validate(c)
    if not report:
        raise InvalidComplex(report.reason)


def homology(c: ChainComplex) -> HomologyResult:
    """``H_k = ker d_k / im d_{k+1}`` with ``d_0 = 0`` and ``d_{top+1} = 0``.

    ``ranks[k]`` is the rank of ``d_{k+1}``.  For a truncated complex the top
    index is reported in ``truncated_indices``.
    """
    _require_valid(c)
    ranks = [rank(m) for m in c.diffs]
    out = []
    for k, dim in enumerate(c.dims):
        incoming = ranks[k] if k < len(ranks) else 0
        outgoing = ranks[k - 1] if k >= 1 else 0
        out.append(dim - outgoing - incoming)
    truncated = (c.top_index,) if c.truncated else ()
    return HomologyResult(tuple(c.dims), tuple(out), tuple(ranks), truncated)


def homology_dims(c: ChainComplex) -> List[int]:
    return list(homology(c).homology)


def unit_complex() -> ChainComplex:
    """GF(2) in degree 0; the unit for ``tensor``."""
    return ChainComplex((1,), ())


def _tensor_top(a: ChainComplex, b: ChainComplex) -> Tuple[int, bool]:
    if a.truncated and b.truncated:
        return min(a.top_index, b.top_index), True
    if a.truncated:
        return a.top_index, True
    if b.truncated:
        return b.top_index, True
    return a.top_index + b.top_index, False


def tensor_basis(a: ChainComplex, b: ChainComplex, n: int) -> List[Tuple[int, int, int]]:
    """Basis of ``(a (x) b)_n`` as ``(p, i, j)``: ``i``-th basis vector of ``a_p`` tensor ``j``-th of ``b_{n-p}``."""
    out = []
    for p in range(n + 1):
        q = n - p
        if p > a.top_index or q > b.top_index:
            continue
        for i in range(a.dims[p]):
            for j in range(b.dims[q]):
                out.append((p, i, j))
    return out


def tensor(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product with ``d(x (x) y) = dx (x) y + x (x) dy`` (no signs mod 2)."""
    _require_valid(a)
    _require_valid(b)
    top, truncated = _tensor_top(a, b)
    bases = [tensor_basis(a, b, n) for n in range(top + 1)]
    positions = [{t: k for k, t in enumerate(basis)} for basis in bases]
    diffs = []
    for n in range(1, top + 1):
        tgt = positions[n - 1]
        rows = [0] * len(bases[n - 1])
        for col, (p, i, j) in enumerate(bases[n]):
            q = n - p
            if p >= 1:
                da = a.d(p).column(i)
                for i2 in da.support():
                    rows[tgt[(p - 1, i2, j)]] ^= 1 << col
            if q >= 1:
                db = b.d(q).column(j)
                for j2 in db.support():
                    rows[tgt[(p, i, j2)]] ^= 1 << col
        diffs.append(BitMatrix(len(rows), len(bases[n]), tuple(rows)))
    c = ChainComplex(tuple(len(bb) for bb in bases), tuple(diffs), truncated=truncated)
    _require_valid(c)
    return c


@dataclass
class KunnethReport:
    rank: int
    w2_last: int
    ok: bool
    dims_direct: List[int]
    dims_tensor: List[int]
    homology_direct: List[int]
    homology_tensor: List[int]
    isomorphism_ok: bool
    mismatches: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _iso_matrix(r: int, n: int, basis: List[Tuple[int, int, int]]) -> Optional[BitMatrix]:
    """Permutation from the tensor basis to the monomial basis of rank ``r``, or None if not bijective."""
    idx = _index(n, r)
    rows = [0] * len(idx)
    hit = set()
    for col, (p, i, _j) in enumerate(basis):
        head = _compositions(p, r - 1)[i]
        target = idx[head + (n - p,)]
        if target in hit:
            return None
        hit.add(target)
        rows[target] |= 1 << col
    if len(hit) != len(idx) or len(basis) != len(idx):
        return None
    return BitMatrix(len(idx), len(basis), tuple(rows))


def kunneth_check(r: int, w2_last: int, top_index: int = DEFAULT_TOP_INDEX) -> KunnethReport:
    """Compare ``C(Z^r, w2=(0..0,b))`` with ``C(Z^(r-1), 0) (x) C(Z, b)``.

    Checks group dimensions, homology dimensions and that the monomial
    identification ``U*m*x_r^q <-> (U*m) (x) (U*x^q)`` is a chain isomorphism.
    """
    if r < 2:
        raise ValueError("kunneth_check needs rank >= 2")
    b = int(w2_last) & 1
    direct = build_chain_complex(LineBundleClass((0,) * (r - 1) + (b,)), top_index)
    left = build_chain_complex(LineBundleClass((0,) * (r - 1)), top_index)
    right = build_chain_complex(LineBundleClass((b,)), top_index)
    prod = tensor(left, right)

    mismatches: List[str] = []
    hd = homology_dims(direct)
    ht = homology_dims(prod)
    if list(direct.dims) != list(prod.dims):
        mismatches.append(f"dims differ: {direct.dims} vs {prod.dims}")
    if hd != ht:
        mismatches.append(f"homology differs: {hd} vs {ht}")

    iso_ok = True
    isos: Dict[int, BitMatrix] = {}
    for n in range(min(direct.top_index, prod.top_index) + 1):
        m = _iso_matrix(r, n, tensor_basis(left, right, n))
        if m is None:
            iso_ok = False
            mismatches.append(f"basis identification is not bijective in degree {n}")
            break
        isos[n] = m
    if iso_ok:
        for n in range(1, len(isos)):
            if direct.d(n) @ isos[n] != isos[n - 1] @ prod.d(n):
                iso_ok = False
                mismatches.append(f"identification does not commute with d_{n}")
                break
    return KunnethReport(
        rank=r,
        w2_last=b,
        ok=not mismatches,
        dims_direct=list(direct.dims),
        dims_tensor=list(prod.dims),
        homology_direct=hd,
        homology_tensor=ht,
        isomorphism_ok=iso_ok,
        mismatches=mismatches,
    )
