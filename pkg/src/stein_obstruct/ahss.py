"""Total-degree-7 line of the AHSS for twisted SU-bordism of K(Z^r, 2).

    E^2_{p,q} = H_{p+2}(T(gamma); Omega^SU_q)  =>  Omega^SU_{p+q}(K(Z^r, 2); gamma)

Integral homology of the Thom space is free and concentrated in even
degrees, so E^2 on the 7-line reduces to the single group
E^2_{6,1} = H_8(T; Z_2).  The differentials into and out of it are
d^2_{8,0} = (Sq^2)^* o rho_2 and d^2_{6,1} = (Sq^2)^*; rho_2 is onto because
the integral homology is free, so E^3_{6,1} is the homology of the mod-2
chain complex at index 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Tuple

from .errors import OutOfRange, UnusedCoefficient
from .homology import homology
from .linalg import BitMatrix, rank
from .thom import LineBundleClass, build_chain_complex, thom_basis

TOTAL_DEGREE = 7

RHO2_ASSUMPTION = (
    "rho_2: H_10(T; Z) -> H_10(T; Z_2) is onto since H_*(K(Z^r,2); Z) is torsion free "
    "and the Thom isomorphism preserves this; hence im d2_{8,0} = im (Sq^2)^*"
)


@dataclass(frozen=True)
class GroupDescriptor:
    """Finitely generated abelian group ``Z^free_rank + Z_2^z2_rank``."""

    free_rank: int = 0
    z2_rank: int = 0

    @property
    def trivial(self) -> bool:
        return self.free_rank == 0 and self.z2_rank == 0

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        if self.z2_rank:
            parts.append("Z_2" if self.z2_rank == 1 else f"Z_2^{self.z2_rank}")
        return " + ".join(parts) or "0"

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "z2_rank": self.z2_rank, "group": str(self)}


def _odd_su_group_vanishes(n: int) -> bool:
    # Omega^SU_{2k+1} = 0 when 4 does not divide k.
    return n % 2 == 1 and ((n - 1) // 2) % 4 != 0


_SU_TABLE: Dict[int, Optional[GroupDescriptor]] = {
    0: GroupDescriptor(1, 0),
    1: GroupDescriptor(0, 1),
    2: GroupDescriptor(0, 1),
    3: GroupDescriptor(),
    4: None,
    5: GroupDescriptor(),
    6: None,
    7: GroupDescriptor(),
}


def su_table() -> Dict[int, Optional[GroupDescriptor]]:
    """The coefficient table; ``None`` marks entries the 7-line never needs."""
    return dict(_SU_TABLE)


def su_coefficients(q: int) -> GroupDescriptor:
    if not 0 <= q <= TOTAL_DEGREE:
        raise OutOfRange(f"Omega^SU_{q} is outside the tabulated range 0..7")
    g = _SU_TABLE[q]
    if g is None:
        raise UnusedCoefficient(f"Omega^SU_{q} is not needed for the 7-line and is not tabulated")
    return g


@dataclass(frozen=True)
class E2Entry:
    p: int
    q: int
    homology_degree: int
    dimension: int
    group: GroupDescriptor
    reason: str

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "homology_degree": self.homology_degree,
            "dimension": self.dimension,
            "group": self.group.as_dict(),
            "reason": self.reason,
        }


def e2_seven_line(bundle: LineBundleClass) -> Dict[Tuple[int, int], E2Entry]:
    """All E^2_{p,q} with p + q = 7 and p >= 0."""
    out: Dict[Tuple[int, int], E2Entry] = {}
    for p in range(TOTAL_DEGREE + 1):
        q = TOTAL_DEGREE - p
        deg = p + 2
        if deg % 2:
            out[(p, q)] = E2Entry(p, q, deg, 0, GroupDescriptor(), "H_odd(T) = 0")
            continue
        coeff = su_coefficients(q)
        if coeff.trivial:
            out[(p, q)] = E2Entry(p, q, deg, 0, GroupDescriptor(), f"Omega^SU_{q} = 0")
            continue
        n = len(thom_basis(bundle, deg))
        group = GroupDescriptor(n * coeff.free_rank, n * coeff.z2_rank)
        out[(p, q)] = E2Entry(
            p, q, deg, n * (coeff.free_rank + coeff.z2_rank), group,
            f"H_{deg}(T; Z) free of rank {n}, tensored with Omega^SU_{q} = {coeff}",
        )
    return out


def _matrix_rows(m: BitMatrix) -> List[str]:
    return ["".join(str(b) for b in row) for row in m.to_lists()]


@dataclass
class E3Result:
    value: int
    kernel_dim: int
    image_dim: int
    certificate: dict = field(default_factory=dict)


def e3_61(bundle: LineBundleClass) -> E3Result:
    """``dim ker d2_{6,1} - dim im d2_{8,0}``, computed as H_3 of the chain complex."""
    c = build_chain_complex(bundle, 4)
    h = homology(c)
    d61 = c.d(3)  # H_8 -> H_6, i.e. C_3 -> C_2
    d80 = c.d(4)  # H_10 -> H_8, i.e. C_4 -> C_3
    kernel_dim = c.dims[3] - rank(d61)
    image_dim = rank(d80)
    value = kernel_dim - image_dim
    assert value == h.homology[3]
    cert = {
        "chain_dims": list(c.dims),
        "d2_61": {"shape": list(d61.shape), "rows": _matrix_rows(d61), "rank": rank(d61)},
        "d2_80_mod2": {"shape": list(d80.shape), "rows": _matrix_rows(d80), "rank": image_dim},
        "kernel_dim": kernel_dim,
        "image_dim": image_dim,
        "homology": list(h.homology),
        "assumption": RHO2_ASSUMPTION,
    }
    return E3Result(value, kernel_dim, image_dim, cert)


@dataclass
class SevenLineReport:
    rank: int
    w2: Tuple[int, ...]
    e2: Dict[Tuple[int, int], E2Entry]
    e3_61: int
    conclusion: Optional[GroupDescriptor]
    certificate: dict

    @property
    def trivial(self) -> bool:
        return self.conclusion is not None and self.conclusion.trivial

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "w2": "".join(map(str, self.w2)),
            "e2": [entry.as_dict() for _, entry in sorted(self.e2.items())],
            "e3_61": self.e3_61,
            "conclusion": None if self.conclusion is None else self.conclusion.as_dict(),
            "trivial": self.trivial,
            "certificate": self.certificate,
        }


def omega7_su(bundle: LineBundleClass) -> SevenLineReport:
    """Certify (or fail to certify) that Omega^SU_7(K(Z^r, 2); gamma) = 0."""
    r = bundle.rank
    if r == 0:
        g = su_coefficients(7)
        assert g.trivial and _odd_su_group_vanishes(7)
        return SevenLineReport(
            0, (), {}, 0, g,
            {"rule": "H = 0: Omega^SU_7 = 0 since 7 = 2k+1 with k = 3 not divisible by 4"},
        )
    e2 = e2_seven_line(bundle)
    survivors = {pq: e for pq, e in e2.items() if e.dimension and pq != (6, 1)}
    e3 = e3_61(bundle)
    cert = {
        "rule": "AHSS 7-line; only E2_{6,1} can be nonzero; E3_{6,1} = H_3 of the mod-2 chain complex",
        "e2_61_dimension": e2[(6, 1)].dimension,
        "e2_61_expected": comb(3 + r - 1, r - 1),
        "e3_61": e3.certificate,
        "higher_differentials": "not needed: all other 7-line entries vanish at E2",
    }
    if survivors or e3.value:
        conclusion = None
        cert["unresolved"] = {
            "nonzero_e2": [list(pq) for pq in survivors],
            "e3_61": e3.value,
        }
    else:
        conclusion = GroupDescriptor()
    return SevenLineReport(r, bundle.w2, e2, e3.value, conclusion, cert)
