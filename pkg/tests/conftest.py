import itertools

import pytest

from stein_obstruct.linalg import BitMatrix, BitVector


def span_set(values, length):
    """Every GF(2) combination of ``values``, by enumeration."""
    out = set()
    for coeffs in itertools.product((0, 1), repeat=len(values)):
        acc = 0
        for c, v in zip(coeffs, values):
            if c:
                acc ^= v
        out.add(acc)
    return out


def brute_rank(m: BitMatrix) -> int:
    return len(span_set(list(m.rows), m.ncols)).bit_length() - 1


def brute_kernel_dim(m: BitMatrix) -> int:
    count = sum(1 for v in range(1 << m.ncols) if m.apply(BitVector(v, m.ncols)).is_zero())
    return count.bit_length() - 1


@pytest.fixture
def small_matrices():
    import random

    rng = random.Random(11)
    out = []
    for _ in range(150):
        nr, nc = rng.randint(0, 6), rng.randint(0, 6)
        out.append(BitMatrix(nr, nc, tuple(rng.getrandbits(nc) if nc else 0 for _ in range(nr))))
    return out
