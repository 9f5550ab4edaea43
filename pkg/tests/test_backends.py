import random

import pytest

from stein_obstruct import _gf2_py, linalg

ext = pytest.importorskip("stein_obstruct._gf2_ext")


def random_rows(rng, nrows, ncols):
    return [rng.getrandbits(ncols) if ncols else 0 for _ in range(nrows)]


@pytest.mark.parametrize("ncols", [0, 1, 7, 63, 64, 65, 130, 300])
def test_backends_agree(ncols):
    rng = random.Random(ncols)
    for _ in range(20):
        rows = random_rows(rng, rng.randint(0, 40), ncols)
        # Force some dependencies.
        if len(rows) > 2:
            rows.append(rows[0] ^ rows[1])
        assert ext.rank(rows, ncols) == _gf2_py.rank(rows, ncols)
        assert ext.echelon(rows, ncols) == _gf2_py.echelon(rows, ncols)


def test_echelon_is_reduced():
    rng = random.Random(1)
    rows = random_rows(rng, 30, 90)
    basis, pivots = _gf2_py.echelon(rows, 90)
    assert pivots == sorted(pivots)
    for row, p in zip(basis, pivots):
        assert row & ((1 << p) - 1) == 0 and (row >> p) & 1
        for other, q in zip(basis, pivots):
            if other is not row:
                assert not (other >> p) & 1


def test_backend_reported():
    assert linalg.BACKEND in ("cython", "python")
