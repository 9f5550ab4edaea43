from math import comb

import pytest

from stein_obstruct.ahss import e2_seven_line, e3_61, omega7_su, su_coefficients, su_table
from stein_obstruct.errors import OutOfRange, UnusedCoefficient
from stein_obstruct.homology import homology_dims
from stein_obstruct.thom import LineBundleClass, build_chain_complex


def L(*bits):
    return LineBundleClass(tuple(bits))


def test_su_coefficients():
    assert str(su_coefficients(0)) == "Z"
    assert str(su_coefficients(1)) == "Z_2"
    assert str(su_coefficients(2)) == "Z_2"
    for q in (3, 5, 7):
        assert su_coefficients(q).trivial
    for q in (4, 6):
        with pytest.raises(UnusedCoefficient):
            su_coefficients(q)
    for q in (-1, 8):
        with pytest.raises(OutOfRange):
            su_coefficients(q)
    assert su_table()[4] is None


def test_e2_rank_one():
    for w in (0, 1):
        e2 = e2_seven_line(L(w))
        nonzero = {pq: e.dimension for pq, e in e2.items() if e.dimension}
        assert nonzero == {(6, 1): 1}


def test_e2_rank_two():
    assert e2_seven_line(L(1, 0))[(6, 1)].dimension == 4
    assert len(e2_seven_line(L(1, 0))) == 8


@pytest.mark.parametrize("r", range(1, 6))
def test_e3_is_chain_homology(r):
    for w in range(1 << r):
        b = L(*((w >> i) & 1 for i in range(r)))
        e3 = e3_61(b)
        assert e3.value == homology_dims(build_chain_complex(b, 4))[3] == 0
        assert e3.kernel_dim == e3.image_dim
        assert e2_seven_line(b)[(6, 1)].dimension == comb(r + 2, r - 1)


def test_e3_examples():
    assert e3_61(L(1)).value == 0
    assert e3_61(L(0)).value == 0
    cert = e3_61(L(1, 1, 0)).certificate
    assert cert["d2_61"]["shape"] == [6, 10]
    assert cert["d2_80_mod2"]["shape"] == [10, 15]
    assert "rho_2" in cert["assumption"]


def test_omega7_examples():
    assert omega7_su(L()).trivial
    assert omega7_su(L(0)).trivial
    rep = omega7_su(L(1, 0, 1, 1, 0))
    assert rep.trivial and rep.e3_61 == 0
    d = rep.as_dict()
    assert d["trivial"] and d["e2"][6]["dimension"] == 35
