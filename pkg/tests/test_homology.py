import random

import pytest

from stein_obstruct.chain import ChainComplex, validate
from stein_obstruct.errors import InvalidComplex
from stein_obstruct.homology import homology, homology_dims, kunneth_check, tensor, unit_complex
from stein_obstruct.linalg import BitMatrix, BitVector
from stein_obstruct.thom import LineBundleClass, build_chain_complex


def brute_homology(c: ChainComplex):
    """dim ker d_k - dim im d_{k+1}, both found by enumerating vectors."""
    out = []
    for k, n in enumerate(c.dims):
        if k >= 1:
            kernel = sum(1 for v in range(1 << n) if c.d(k).apply(BitVector(v, n)).is_zero())
        else:
            kernel = 1 << n
        if k + 1 <= c.top_index:
            m = c.d(k + 1)
            image = len({m.apply(BitVector(v, m.ncols)).value for v in range(1 << m.ncols)})
        else:
            image = 1
        out.append(kernel.bit_length() - image.bit_length())
    return out


def random_complex(rng, length, max_dim=4):
    """A random complex built as d_{k} = random map composed to kill the previous image."""
    dims = [rng.randint(0, max_dim) for _ in range(length)]
    diffs = []
    for i in range(length - 1):
        nr, nc = dims[i], dims[i + 1]
        while True:
            m = BitMatrix(nr, nc, tuple(rng.getrandbits(nc) if nc else 0 for _ in range(nr)))
            if not diffs or (diffs[-1] @ m).is_zero():
                break
            if rng.random() < 0.3:
                m = BitMatrix.zeros(nr, nc)
                break
        diffs.append(m)
    c = ChainComplex(tuple(dims), tuple(diffs))
    assert validate(c)
    return c


def test_validate_examples():
    assert validate(build_chain_complex(LineBundleClass((1, 0)), 6))
    bad = ChainComplex((1, 1, 1), (BitMatrix.from_lists([[1]]), BitMatrix.from_lists([[1]])))
    rep = validate(bad)
    assert not rep and rep.failing_index == 0
    assert validate(ChainComplex((0,), ()))
    with pytest.raises(InvalidComplex):
        homology(bad)


def test_homology_examples():
    assert homology_dims(build_chain_complex(LineBundleClass((1,)), 6))[:6] == [0] * 6
    assert homology_dims(build_chain_complex(LineBundleClass((0,)), 6))[:6] == [1, 0, 0, 0, 0, 0]
    zero = ChainComplex((2, 3, 1), (BitMatrix.zeros(2, 3), BitMatrix.zeros(3, 1)))
    assert homology_dims(zero) == [2, 3, 1]


def test_truncation_flag():
    h = homology(build_chain_complex(LineBundleClass((1,)), 6))
    assert h.truncated_indices == (6,)
    assert h.verified == (0,) * 6


def test_homology_against_enumeration():
    rng = random.Random(21)
    for _ in range(80):
        c = random_complex(rng, rng.randint(1, 5))
        assert homology_dims(c) == brute_homology(c)
        assert all(0 <= h <= d for h, d in zip(homology_dims(c), c.dims))


def test_bundle_homology_against_enumeration():
    for bits in [(0,), (1,), (0, 0), (1, 0), (1, 1), (0, 1, 1)]:
        c = build_chain_complex(LineBundleClass(bits), 4)
        assert homology_dims(c) == brute_homology(c)


def test_euler_characteristic():
    rng = random.Random(4)
    for _ in range(50):
        c = random_complex(rng, rng.randint(1, 5))
        h = homology_dims(c)
        assert sum((-1) ** i * d for i, d in enumerate(c.dims)) == sum((-1) ** i * x for i, x in enumerate(h))


def test_tensor_unit():
    c = build_chain_complex(LineBundleClass((1, 0)), 5)
    t = tensor(c, unit_complex())
    assert t.dims == c.dims
    assert homology_dims(t) == homology_dims(c)
    assert tensor(unit_complex(), unit_complex()).dims == (1,)


def test_tensor_rank_one_pair():
    a = build_chain_complex(LineBundleClass((0,)), 4)
    t = tensor(a, a)
    assert t.dims == (1, 2, 3, 4, 5)
    assert t.truncated and validate(t)


def test_kunneth_formula_on_finite_complexes():
    rng = random.Random(31)
    for _ in range(60):
        a = random_complex(rng, rng.randint(1, 4), 3)
        b = random_complex(rng, rng.randint(1, 4), 3)
        t = tensor(a, b)
        ha, hb = homology_dims(a), homology_dims(b)
        expected = [
            sum(ha[p] * hb[n - p] for p in range(n + 1) if p < len(ha) and n - p < len(hb))
            for n in range(len(t.dims))
        ]
        assert homology_dims(t) == expected
        if max(t.dims) <= 10:
            assert expected == brute_homology(t)


@pytest.mark.parametrize("r,b", [(2, 0), (2, 1), (3, 0), (3, 1), (4, 1)])
def test_kunneth_check(r, b):
    rep = kunneth_check(r, b)
    assert rep.ok and rep.isomorphism_ok, rep.mismatches
    if b == 1:
        assert rep.homology_direct[:6] == [0] * 6
