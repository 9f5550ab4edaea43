import itertools
import random
from math import comb

import pytest

from stein_obstruct.cohomology import (
    GradedElement,
    Monomial,
    all_bit_vectors,
    apply_substitution,
    monomial_basis,
    sq2,
    sq2_matrix,
    substitution_matrix,
)
from stein_obstruct.errors import SingularSubstitution
from stein_obstruct.linalg import BitMatrix, is_invertible


def total_square_sq2(exponents):
    """Degree-raising-by-2 part of prod_i (x_i + x_i^2)^{e_i}, coefficients mod 2."""
    per_var = [{e + k: comb(e, k) % 2 for k in range(e + 1)} for e in exponents]
    target = sum(exponents) + 1
    out = set()
    for combo in itertools.product(*[sorted(d) for d in per_var]):
        if sum(combo) != target:
            continue
        coeff = 1
        for d, a in zip(per_var, combo):
            coeff *= d[a]
        if coeff:
            out ^= {combo}
    return GradedElement.from_monomials(len(exponents), 2 * target, out)


def exps(r, k):
    return [m.exponents for m in monomial_basis(r, 2 * k)]


def test_basis_examples():
    assert [m.exponents for m in monomial_basis(1, 6)] == [(3,)]
    assert [m.exponents for m in monomial_basis(2, 4)] == [(2, 0), (1, 1), (0, 2)]
    assert monomial_basis(3, 3) == []


@pytest.mark.parametrize("r", range(1, 6))
def test_basis_counts(r):
    for k in range(7):
        basis = monomial_basis(r, 2 * k)
        assert len(basis) == comb(k + r - 1, r - 1)
        assert len(set(basis)) == len(basis)
        assert all(sum(m.exponents) == k for m in basis)


def test_sq2_examples():
    x = GradedElement.generator(1, 0)
    assert sq2(x) == GradedElement.monomial((2,))
    assert sq2(GradedElement.monomial((2,))).is_zero()
    got = sq2(GradedElement.monomial((1, 1)))
    assert got == GradedElement.monomial((2, 1)) + GradedElement.monomial((1, 2))


def test_sq2_matrix_examples():
    assert sq2_matrix(1, 2).to_lists() == [[1]]
    assert sq2_matrix(1, 4).to_lists() == [[0]]
    # Columns are sources (x1, x2), rows are targets (x1^2, x1x2, x2^2).
    assert sq2_matrix(2, 2).to_lists() == [[1, 0], [0, 0], [0, 1]]


@pytest.mark.parametrize("r", range(1, 5))
def test_sq2_matches_total_square(r):
    for k in range(6):
        for e in exps(r, k):
            assert sq2(GradedElement.monomial(e)) == total_square_sq2(e)


@pytest.mark.parametrize("r", range(1, 5))
def test_sq2_squares_to_zero(r):
    for k in range(5):
        m2 = sq2_matrix(r, 2 * k + 2) @ sq2_matrix(r, 2 * k)
        assert m2.is_zero()


def test_sq2_additive_and_derivation():
    rng = random.Random(2)
    for _ in range(200):
        r = rng.randint(1, 4)
        ka, kb = rng.randint(0, 3), rng.randint(0, 3)
        a = GradedElement.from_monomials(r, 2 * ka, rng.sample(exps(r, ka), rng.randint(0, len(exps(r, ka)))))
        a2 = GradedElement.from_monomials(r, 2 * ka, rng.sample(exps(r, ka), rng.randint(0, len(exps(r, ka)))))
        b = GradedElement.from_monomials(r, 2 * kb, rng.sample(exps(r, kb), rng.randint(0, len(exps(r, kb)))))
        assert sq2(a + a2) == sq2(a) + sq2(a2)
        assert sq2(a * b) == sq2(a) * b + a * sq2(b)


def test_matrix_agrees_with_operator():
    for r in range(1, 4):
        for k in range(5):
            m = sq2_matrix(r, 2 * k)
            for j, e in enumerate(exps(r, k)):
                col = m.column(j).value
                assert GradedElement.from_vector(r, 2 * k + 2, col) == sq2(GradedElement.monomial(e))


def test_substitution_examples():
    a = BitMatrix.identity(2)
    e = GradedElement.monomial((1, 2))
    assert apply_substitution(a, e) == e
    swap = BitMatrix.from_lists([[0, 1], [1, 0]])
    assert apply_substitution(swap, GradedElement.monomial((2, 0))) == GradedElement.monomial((0, 2))
    shear = BitMatrix.from_lists([[1, 1], [0, 1]])
    assert apply_substitution(shear, GradedElement.generator(2, 0)) == GradedElement.monomial(
        (1, 0)
    ) + GradedElement.monomial((0, 1))


def test_singular_substitution_rejected():
    with pytest.raises(SingularSubstitution):
        apply_substitution(BitMatrix.from_lists([[1, 1], [1, 1]]), GradedElement.generator(2, 0))


def test_substitution_is_ring_map_commuting_with_sq2():
    rng = random.Random(9)
    for _ in range(300):
        r = rng.randint(1, 4)
        while True:
            a = BitMatrix(r, r, tuple(rng.getrandbits(r) for _ in range(r)))
            if is_invertible(a):
                break
        e1 = GradedElement.monomial(tuple(rng.randint(0, 3) for _ in range(r)))
        e2 = GradedElement.monomial(tuple(rng.randint(0, 2) for _ in range(r)))
        assert apply_substitution(a, e1 * e2) == apply_substitution(a, e1) * apply_substitution(a, e2)
        assert sq2(apply_substitution(a, e1)) == apply_substitution(a, sq2(e1))


def test_substitution_matrix_naturality():
    rng = random.Random(4)
    for r in range(1, 4):
        for _ in range(20):
            while True:
                a = BitMatrix(r, r, tuple(rng.getrandbits(r) for _ in range(r)))
                if is_invertible(a):
                    break
            for deg in (0, 2, 4, 6):
                lhs = substitution_matrix(a, deg + 2) @ sq2_matrix(r, deg)
                rhs = sq2_matrix(r, deg) @ substitution_matrix(a, deg)
                assert lhs == rhs


def test_all_bit_vectors():
    assert all_bit_vectors(2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(all_bit_vectors(5)) == 32


def test_monomial_str_and_degree():
    m = Monomial((2, 0, 1))
    assert m.degree == 6
    assert m.rank == 3
