"""Exact quaternion arithmetic and the commuting-actions check on H = R^4.

Coefficients may be any ring elements supporting ``+``, ``-`` and ``*``:
``fractions.Fraction`` for exact rational samples, sympy symbols for the
symbolic identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, NamedTuple


class Quaternion(NamedTuple):
    w: Any
    x: Any
    y: Any
    z: Any

    def __add__(self, other):  # type: ignore[override]
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other):
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, other):  # type: ignore[override]
        a1, b1, c1, d1 = self
        a2, b2, c2, d2 = other
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def inverse(self) -> "Quaternion":
        n = self.norm2()
        c = self.conjugate()
        return Quaternion(c.w / n, c.x / n, c.y / n, c.z / n)

    @classmethod
    def rational(cls, w, x=0, y=0, z=0) -> "Quaternion":
        return cls(Fraction(w), Fraction(x), Fraction(y), Fraction(z))


ONE = Quaternion.rational(1)
I = Quaternion.rational(0, 1)
J = Quaternion.rational(0, 0, 1)
K = Quaternion.rational(0, 0, 0, 1)
BASIS = (ONE, I, J, K)


def left_mult(x: Quaternion, y: Quaternion) -> Quaternion:
    """The SO(4) element y -> x*y for a unit quaternion x."""
    return x * y


def right_mult(lam: Quaternion, y: Quaternion) -> Quaternion:
    """The SO(4) element y -> y*lam for a unit complex number lam."""
    return y * lam


def random_unit_quaternion(rng: random.Random, spread: int = 50) -> Quaternion:
    """Rational point of S^3 by inverse stereographic projection of a rational point of R^3."""
    u, v, t = (Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(3))
    s = u * u + v * v + t * t
    d = 1 + s
    return Quaternion((1 - s) / d, 2 * u / d, 2 * v / d, 2 * t / d)


def random_unit_complex(rng: random.Random, spread: int = 50) -> Quaternion:
    t = Fraction(rng.randint(-spread, spread), rng.randint(1, spread))
    d = 1 + t * t
    return Quaternion((1 - t * t) / d, 2 * t / d, Fraction(0), Fraction(0))


def random_quaternion(rng: random.Random, spread: int = 50) -> Quaternion:
    return Quaternion(*(Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(4)))


@dataclass
class SamelsonReport:
    ok: bool
    symbolic_ok: bool
    samples: int
    discrepancies: int
    counterexample: dict | None = None
    checks: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _symbolic_check() -> bool:
    import sympy

    a, b, c, d, u, v = sympy.symbols("a b c d u v", real=True)
    x = Quaternion(a, b, c, d)
    lam = Quaternion(u, v, sympy.Integer(0), sympy.Integer(0))
    for y in BASIS:
        ys = Quaternion(*(sympy.Integer(int(t)) for t in y))
        diff = (x * ys) * lam - x * (ys * lam)
        if any(sympy.expand(t) != 0 for t in diff):
            return False
    return True


def samelson_check(sample_count: int = 1000, rng_seed: int = 0) -> SamelsonReport:
    """Check that y -> x*y and y -> y*lam commute, symbolically and on exact rational samples.

    On samples the full commutator ``x (x^-1 y lam^-1) lam`` is also compared with ``y``.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    symbolic_ok = _symbolic_check()
    rng = random.Random(rng_seed)
    bad = 0
    counterexample = None
    for _ in range(sample_count):
        x = random_unit_quaternion(rng)
        lam = random_unit_complex(rng)
        y = random_quaternion(rng)
        assert x.norm2() == 1 and lam.norm2() == 1
        lhs = right_mult(lam, left_mult(x, y))
        rhs = left_mult(x, right_mult(lam, y))
        commutator = left_mult(x, right_mult(lam, left_mult(x.inverse(), right_mult(lam.inverse(), y))))
        if lhs != rhs or commutator != y:
            bad += 1
            if counterexample is None:
                counterexample = {"x": [str(t) for t in x], "lambda": [str(t) for t in lam], "y": [str(t) for t in y]}
    return SamelsonReport(
        ok=symbolic_ok and bad == 0,
        symbolic_ok=symbolic_ok,
        samples=sample_count,
        discrepancies=bad,
        counterexample=counterexample,
        checks=[
            "symbolic: (x*y)*lam - x*(y*lam) expands to 0 for y in {1, i, j, k}",
            "samples: (x*y)*lam == x*(y*lam) and the commutator fixes y, exactly over Q",
        ],
    )
