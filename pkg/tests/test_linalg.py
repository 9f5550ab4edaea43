import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stein_obstruct.errors import ContainmentViolation, DimensionMismatch
from stein_obstruct.linalg import (
    BitMatrix,
    BitVector,
    image_basis,
    inverse,
    is_invertible,
    kernel_basis,
    quotient_dim,
    rank,
    span_rank,
)

from conftest import brute_kernel_dim, brute_rank, span_set


def vec(*bits):
    return BitVector.from_bits(bits)


def test_rank_examples():
    assert rank(BitMatrix.identity(2)) == 2
    assert rank(BitMatrix.zeros(3, 4)) == 0
    assert rank(BitMatrix.from_lists([[1, 1], [1, 1]])) == 1


def test_kernel_examples():
    assert kernel_basis(BitMatrix.identity(2)) == []
    ker = kernel_basis(BitMatrix.zeros(2, 3))
    assert len(ker) == 3 and span_rank(ker) == 3
    assert kernel_basis(BitMatrix.from_lists([[1, 1]])) == [vec(1, 1)]


def test_image_examples():
    img = image_basis(BitMatrix.identity(2))
    assert len(img) == 2 and span_rank(img) == 2
    assert image_basis(BitMatrix.zeros(3, 2)) == []
    assert image_basis(BitMatrix.from_lists([[1], [1]])) == [vec(1, 1)]


def test_quotient_examples():
    e1, e2 = vec(1, 0), vec(0, 1)
    assert quotient_dim([e1, e2], [e1]) == 1
    assert quotient_dim([e1, e2], [e1, e2]) == 0
    assert quotient_dim([vec(1, 1, 0), vec(0, 0, 1)], []) == 2


def test_quotient_errors():
    with pytest.raises(ContainmentViolation):
        quotient_dim([vec(1, 0)], [vec(0, 1)])
    with pytest.raises(DimensionMismatch):
        quotient_dim([vec(1, 0)], [vec(1, 0, 0)])


def test_rank_against_enumeration(small_matrices):
    for m in small_matrices:
        assert rank(m) == brute_rank(m)
        assert rank(m) == rank(m.T)


def test_rank_nullity(small_matrices):
    for m in small_matrices:
        ker = kernel_basis(m)
        assert rank(m) + len(ker) == m.ncols
        assert len(ker) == brute_kernel_dim(m)
        assert span_rank(ker, m.ncols) == len(ker)
        for v in ker:
            assert m.apply(v).is_zero()


def test_image_spans_columns(small_matrices):
    for m in small_matrices:
        img = image_basis(m)
        assert len(img) == rank(m)
        cols = [m.column(j).value for j in range(m.ncols)]
        assert span_set([v.value for v in img], m.nrows) == span_set(cols, m.nrows)


def test_matmul_against_entries():
    rng = random.Random(3)
    for _ in range(50):
        a = BitMatrix(3, 4, tuple(rng.getrandbits(4) for _ in range(3)))
        b = BitMatrix(4, 2, tuple(rng.getrandbits(2) for _ in range(4)))
        prod = (a @ b).to_lists()
        for i in range(3):
            for j in range(2):
                assert prod[i][j] == sum(a[i, k] * b[k, j] for k in range(4)) % 2


def test_inverse_roundtrip():
    rng = random.Random(5)
    done = 0
    while done < 30:
        m = BitMatrix(4, 4, tuple(rng.getrandbits(4) for _ in range(4)))
        if not is_invertible(m):
            with pytest.raises(ValueError):
                inverse(m)
            continue
        assert m @ inverse(m) == BitMatrix.identity(4)
        done += 1


def test_bad_bits_rejected():
    with pytest.raises(ValueError):
        BitVector(0b100, 2)
    with pytest.raises(ValueError):
        BitMatrix.from_lists([[1, 0], [1]])


matrices = st.integers(1, 6).flatmap(
    lambda nc: st.lists(st.integers(0, (1 << nc) - 1), min_size=0, max_size=6).map(
        lambda rows: BitMatrix(len(rows), nc, tuple(rows))
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_rank_permutation_invariant(m, rnd):
    rp = list(range(m.nrows))
    cp = list(range(m.ncols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    assert rank(m.permute(rp, cp)) == rank(m)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_transpose_involution(m):
    assert m.T.T == m
    assert rank(m) + len(kernel_basis(m.T)) == m.nrows
