"""Verdict-level rules for Stein fillability.

Each classifier returns a :class:`Verdict` whose certificate lists the rules
that fired.  Rule ids are short stable strings; the human-readable text next
to them says what the rule asserts.  Inputs describing cohomology (Chern
products, maps to K(pi, 1)) are taken on trust: the checks validate shape and
applicability, not the user's topology.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .ahss import omega7_su
from .errors import BadDimension, DimensionMismatch, InconsistentFlags, MalformedPartition, OutOfRange
from .thom import LineBundleClass


class Status(str, enum.Enum):
    FILLABLE = "Fillable"
    NOT_FILLABLE = "NotFillable"
    CONDITIONAL = "Conditional"
    UNSUPPORTED = "Unsupported"
    NO_OBSTRUCTION_FOUND = "NoObstructionFound"


@dataclass
class Verdict:
    status: Status
    description: str = ""
    certificate: List[dict] = field(default_factory=list)

    def cite(self, rule: str, text: str, **data) -> "Verdict":
        self.certificate.append({"rule": rule, "text": text, **data})
        return self

    @property
    def rules(self) -> List[str]:
        return [c["rule"] for c in self.certificate]

    def as_dict(self) -> dict:
        return {"status": self.status.value, "description": self.description, "certificate": self.certificate}

    @classmethod
    def from_dict(cls, d: Mapping) -> "Verdict":
        return cls(Status(d["status"]), d.get("description", ""), list(d.get("certificate", [])))


# Simply connected 7-manifolds


@dataclass(frozen=True)
class SevenManifoldDescriptor:
    b2: int = 0
    c1: Tuple[int, ...] = ()
    simply_connected: bool = True
    pi2_torsion_free: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", tuple(int(c) for c in self.c1))
        if self.b2 < 0:
            raise ValueError("b2 must be nonnegative")
        if len(self.c1) != self.b2:
            raise DimensionMismatch(f"c1 has {len(self.c1)} entries but b2 = {self.b2}")


def classify_seven(desc: SevenManifoldDescriptor) -> Verdict:
    """Fillable when the twisted SU-bordism group of K(pi_2, 2) in degree 7 is
    certified trivial; Unsupported when the input falls outside the simply
    connected, torsion-free pi_2 setting."""
    if not desc.simply_connected:
        return Verdict(Status.UNSUPPORTED, "manifold is not simply connected").cite(
            "seven.hypothesis", "requires a simply connected 7-manifold"
        )
    if not desc.pi2_torsion_free:
        return Verdict(Status.UNSUPPORTED, "pi_2(M) has torsion").cite(
            "seven.hypothesis", "requires pi_2(M) torsion free"
        )
    # gamma has c_1 = -c_1(zeta); only the mod-2 class is used.
    bundle = LineBundleClass.from_chern([-c for c in desc.c1])
    report = omega7_su(bundle)
    v = Verdict(Status.FILLABLE if report.trivial else Status.UNSUPPORTED)
    v.cite(
        "seven.spinc",
        "simply connected with torsion-free pi_2 implies spin^c, hence an almost contact structure exists",
    )
    v.cite(
        "seven.normal-2-type",
        "the normal 2-type is K(H_2(M), 2) with the unique line bundle whose c_1 is -c_1(zeta)",
        w2="".join(map(str, bundle.w2)),
    )
    if report.trivial:
        v.description = "Omega^SU_7(K(H,2); gamma) = 0, so the obstruction class vanishes"
        v.cite("seven.bordism-vanishes", "twisted SU-bordism in degree 7 vanishes", report=report.as_dict())
    else:
        v.description = "bordism group not certified trivial"
        v.cite("seven.bordism-unresolved", "7-line did not collapse", report=report.as_dict())
    return v


def conjugate(desc: SevenManifoldDescriptor) -> SevenManifoldDescriptor:
    """(M, zeta) -> (-M, -zeta): negate c1."""
    return SevenManifoldDescriptor(desc.b2, tuple(-c for c in desc.c1), desc.simply_connected, desc.pi2_torsion_free)


# Homotopy spheres


@dataclass(frozen=True)
class HomotopySphereDescriptor:
    q: int
    in_bP: bool = False
    cokerJ_nontrivial: bool = False
    alpha_one: Optional[bool] = None

    @property
    def dimension(self) -> int:
        return 2 * self.q + 1


def classify_sphere(desc: HomotopySphereDescriptor) -> Verdict:
    q = desc.q
    if q < 2:
        raise OutOfRange("q must be at least 2 (dimension >= 5)")
    if desc.in_bP and desc.cokerJ_nontrivial:
        raise InconsistentFlags("a sphere in bP maps trivially to Coker J")
    alpha = bool(desc.alpha_one)
    if alpha and q % 4:
        raise InconsistentFlags(f"alpha lives in KO_{2 * q + 1} = 0; only dimensions 8k+1 carry alpha = 1")
    if alpha and desc.in_bP:
        raise InconsistentFlags("spheres in bP bound parallelisable manifolds, so alpha = 0")
    coker = desc.cokerJ_nontrivial or alpha
    if not desc.in_bP and not coker:
        raise InconsistentFlags("a homotopy sphere either lies in bP or maps nontrivially to Coker J")

    if desc.in_bP:
        return Verdict(Status.FILLABLE, "bP spheres are Brieskorn spheres").cite(
            "sphere.bP", "every sphere in bP_{2q+2} is a Brieskorn sphere with a Milnor-fibre Stein filling"
        )

    m = q % 8
    if 3 <= q <= 7:
        v = Verdict(Status.NOT_FILLABLE, "C_q^U = 0 for 3 <= q <= 7").cite(
            "sphere.cokerJ.low-q",
            "eta o boundary vanishes on q-connected (2q+2)-manifolds for 3 <= q <= 7, so C_q^U = 0",
        )
        if m in (3, 7) and q != 7:
            v.cite(
                "sphere.cokerJ.statement-level",
                "the coarse case table would only give a conditional answer here; the sharper rule applies",
            )
    elif m not in (1, 3, 7):
        v = Verdict(Status.NOT_FILLABLE, "pi_q(U) -> pi_q(SO) is zero, so C_q^U = 0").cite(
            "sphere.cokerJ.no-complex-image", "q is not 1, 3, 7 mod 8"
        )
    elif q == 9:
        v = Verdict(Status.CONDITIONAL, "C_9 ∈ {0, Z_2}").cite(
            "sphere.cokerJ.q9",
            "fillable iff Sigma maps to zero in Coker J / C_9^U, with C_9^U either 0 or Z_2",
        )
    elif m == 1:
        v = Verdict(Status.NOT_FILLABLE, "C_q^U = 0 for q = 8k+1 > 9").cite(
            "sphere.cokerJ.8k+1", "eta o boundary vanishes for q = 8k+1 > 9"
        )
    elif q == 15:
        v = Verdict(Status.NOT_FILLABLE, "C_15^U = 0").cite(
            "sphere.cokerJ.q15", "Coker J_31 = Z_2^2, so C_15^U = 4 * im = 0"
        )
    elif m == 3:
        v = Verdict(Status.CONDITIONAL, "cyclic C_q^U").cite(
            "sphere.cokerJ.3mod8", "fillable iff Sigma maps to zero in Coker J / C_q^U for a cyclic C_q^U"
        )
    else:
        v = Verdict(Status.CONDITIONAL, "C_q^U ⊆ 4·Coker J").cite(
            "sphere.cokerJ.7mod8", "fillable iff Sigma maps to zero in Coker J / C_q^U with C_q^U in 4 Coker J"
        )

    if alpha:
        if v.status is not Status.NOT_FILLABLE:
            v.status = Status.NOT_FILLABLE
            v.description = "alpha(Sigma) = 1"
        v.cite("sphere.alpha", "alpha = 1 obstructs a spin (hence any 4k-connected) filling in dimension 8k+1")
    return v


def contamination(base_fillable: bool, base_c1_zero: bool, sigma_alpha_one: bool, dim_8k1: bool) -> Verdict:
    """Connected sum of a fillable (8k+1)-manifold with c_1 = 0 and an alpha = 1 sphere."""
    missing = [
        name
        for name, flag in (
            ("base_fillable", base_fillable),
            ("base_c1_zero", base_c1_zero),
            ("sigma_alpha_one", sigma_alpha_one),
            ("dim_8k1", dim_8k1),
        )
        if not flag
    ]
    if missing:
        return Verdict(Status.UNSUPPORTED, "rule inapplicable: " + ", ".join(missing) + " not satisfied").cite(
            "contamination.hypothesis", "needs all of base_fillable, base_c1_zero, sigma_alpha_one, dim_8k1"
        )
    return Verdict(Status.NOT_FILLABLE, "M # Sigma is not Stein fillable").cite(
        "contamination.alpha",
        "the SU-bordism class of M # Sigma maps to [Sigma] != 0 since alpha(Sigma) = 1",
    )


# Cohomological obstructions


Partition = Tuple[int, ...]


@dataclass(frozen=True)
class ObstructionDescriptor:
    q: int
    u_nonzero_degrees: frozenset = frozenset()
    aspherical: bool = False
    chern_top_products: Tuple[Tuple[Partition, int], ...] = ()
    mixed_products: Tuple[Tuple[int, Partition, bool], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping) -> "ObstructionDescriptor":
        known = {"q", "u_nonzero_degrees", "aspherical", "chern_top_products", "mixed_products", "schema", "name"}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown fields: {sorted(extra)}")
        if "q" not in d:
            raise ValueError("missing field 'q'")
        top = []
        for entry in d.get("chern_top_products", []):
            if isinstance(entry, Mapping):
                top.append((tuple(entry["partition"]), int(entry["value"])))
            else:
                part, value = entry
                top.append((tuple(part), int(value)))
        mixed = []
        for entry in d.get("mixed_products", []):
            if isinstance(entry, Mapping):
                mixed.append((int(entry["degree"]), tuple(entry["partition"]), bool(entry["nonzero"])))
            else:
                j, part, nz = entry
                mixed.append((int(j), tuple(part), bool(nz)))
        return cls(
            q=int(d["q"]),
            u_nonzero_degrees=frozenset(int(i) for i in d.get("u_nonzero_degrees", [])),
            aspherical=bool(d.get("aspherical", False)),
            chern_top_products=tuple(top),
            mixed_products=tuple(mixed),
        )


def _check_partition(part: Sequence[int]) -> None:
    if not part or any((not isinstance(i, int)) or i < 1 for i in part):
        raise MalformedPartition(f"partition {tuple(part)} must be a nonempty tuple of positive integers")


@dataclass
class ObstructionResult:
    violations: List[dict]
    verdict: Verdict

    def as_dict(self) -> dict:
        return {"violations": self.violations, "verdict": self.verdict.as_dict()}


def check_obstructions(desc: ObstructionDescriptor) -> ObstructionResult:
    q = desc.q
    if q < 2:
        raise OutOfRange("q must be at least 2")
    n = 2 * q + 1
    for i in desc.u_nonzero_degrees:
        if not 0 <= i <= n:
            raise OutOfRange(f"degree {i} outside [0, {n}]")
    for part, _ in desc.chern_top_products:
        _check_partition(part)
        if sum(part) != q:
            raise MalformedPartition(f"top Chern product {part} must sum to q = {q}")
    for j, part, _ in desc.mixed_products:
        _check_partition(part)
        if j < 0 or n - j != 2 * sum(part):
            raise MalformedPartition(f"mixed product of degree {j} with {part}: need {n} - j = 2 * sum")

    violations: List[dict] = []
    high = sorted(i for i in desc.u_nonzero_degrees if q + 2 <= i <= n)
    if high:
        violations.append({
            "rule": "obstruction.universal-cover",
            "text": f"u_*: H_i(M) -> H_i(K(pi,1)) must vanish for {q + 2} <= i <= {n}",
            "degrees": high,
        })
    if desc.aspherical:
        violations.append({"rule": "obstruction.aspherical", "text": "a Stein fillable manifold is not aspherical"})
    for j, part, nonzero in desc.mixed_products:
        if nonzero:
            violations.append({
                "rule": "obstruction.mixed-chern",
                "text": "products p_M^*(beta) c_i1 ... c_ik in top degree must vanish",
                "degree": j,
                "partition": list(part),
            })
    for part, value in desc.chern_top_products:
        if value:
            violations.append({
                "rule": "obstruction.chern-product",
                "text": f"products of Chern classes in H^{2 * q}(M) must vanish",
                "partition": list(part),
                "value": value,
            })
    if violations:
        v = Verdict(Status.NOT_FILLABLE, f"{len(violations)} obstruction(s) violated")
        for item in violations:
            v.certificate.append(dict(item))
    else:
        v = Verdict(Status.NO_OBSTRUCTION_FOUND, "no listed obstruction applies (not a fillability verdict)")
    return ObstructionResult(violations, v)


# Subcritical fillings

FLAGS = ("A", "B", "C", "D", "E")
FLAG_MEANINGS = {
    "A": "M admits a subcritical Stein filling",
    "B": "M x F admits a Stein filling",
    "C": "[M, nu] = 0 in the normal q-type bordism group",
    "D": "nu_*[M] = 0 in H_{2q+1}(B)",
    "E": "the torsion of H_q(M) vanishes",
}

# (premises, conclusion); "g" stands for genus(F) > 0.
IMPLICATIONS: Tuple[Tuple[Tuple[str, ...], str], ...] = (
    (("A",), "C"),
    (("A",), "B"),
    (("C",), "B"),
    (("B", "g"), "C"),
    (("B",), "D"),
    (("D",), "E"),
)


def _parse_flag(value) -> Optional[bool]:
    if value is None or value == "unknown":
        return None
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ("true", "false"):
        return value.lower() == "true"
    raise ValueError(f"flag values must be true, false or unknown, got {value!r}")


@dataclass
class PropagationResult:
    flags: Dict[str, Optional[bool]]
    contradictions: List[str]
    derivations: List[str]

    @property
    def consistent(self) -> bool:
        return not self.contradictions

    def as_dict(self) -> dict:
        return {
            "flags": {k: ("unknown" if v is None else v) for k, v in self.flags.items()},
            "consistent": self.consistent,
            "contradictions": self.contradictions,
            "derivations": self.derivations,
        }


def subcritical_propagate(flags: Mapping[str, object], genus_positive: bool = False) -> PropagationResult:
    """Close a partial assignment under the implications and their contrapositives."""
    unknown = set(flags) - set(FLAGS)
    if unknown:
        raise ValueError(f"unknown flags {sorted(unknown)}; expected a subset of {FLAGS}")
    state: Dict[str, Optional[bool]] = {k: _parse_flag(flags.get(k)) for k in FLAGS}
    state["g"] = bool(genus_positive)
    contradictions: List[str] = []
    derivations: List[str] = []

    def assign(name: str, value: bool, why: str) -> bool:
        cur = state[name]
        if cur is None:
            state[name] = value
            derivations.append(f"{name} = {value} ({why})")
            return True
        if cur != value:
            msg = f"{name} forced to {value} by {why} but is {cur}"
            if msg not in contradictions:
                contradictions.append(msg)
        return False

    changed = True
    while changed:
        changed = False
        for premises, concl in IMPLICATIONS:
            rule = " & ".join(premises) + f" => {concl}"
            if all(state[p] is True for p in premises):
                changed |= assign(concl, True, rule)
            if state[concl] is False:
                pending = [p for p in premises if state[p] is not False and state[p] is not True]
                if all(state[p] is True for p in premises if p not in pending) and len(pending) == 1:
                    changed |= assign(pending[0], False, f"contrapositive of {rule}")
    return PropagationResult({k: state[k] for k in FLAGS}, contradictions, derivations)


_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_TWIST = "×̃"


def _sum_term(name: str, count: int) -> str:
    if count == 1:
        return f"({name})"
    return f"♯{str(count).translate(_SUBSCRIPTS)}({name})"


def subcritical_normal_form(dim: int, spin: bool, r: int = 0, s: int = 0) -> str:
    """Diffeomorphism type forced by a subcritical filling (simply connected, dim 5 or 7)."""
    if dim not in (5, 7):
        raise BadDimension(f"normal forms exist for dimensions 5 and 7, not {dim}")
    if r < 0 or s < 0:
        raise ValueError("r and s must be nonnegative")
    if dim == 5 and s:
        raise BadDimension("s must be 0 in dimension 5")
    if dim == 5:
        terms = [] if spin else [(f"S³{_TWIST}S²", 1)]
        terms.append(("S³×S²", r))
        sphere = "S⁵"
    else:
        terms = [] if spin else [(f"S⁵{_TWIST}S²", 1)]
        terms += [("S⁵×S²", r), ("S⁴×S³", s)]
        sphere = "S⁷"
    terms = [(name, n) for name, n in terms if n]
    if not terms:
        return sphere
    if len(terms) == 1 and terms[0][1] == 1:
        return terms[0][0]
    out = ""
    for name, n in terms:
        piece = _sum_term(name, n)
        out += piece if (piece.startswith("♯") or not out) else "♯" + piece
    return out

