"""One line per acceptance criterion; run with ``pytest -s`` to see them."""

import pytest

from stein_obstruct.acceptance import CRITERIA, EXPECTED_COKERJ, run_criterion
from stein_obstruct.fillability import HomotopySphereDescriptor, Status, classify_sphere


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[f"criterion-{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    print(result.line())
    assert result.passed, result.line()


def test_hand_table_is_independent():
    # Written out again here so a mistake in one copy cannot hide a mistake in the other.
    conditional = {9, 11, 19}
    for q in range(2, 21):
        assert EXPECTED_COKERJ[q] == ("C" if q in conditional else "N")
        got = classify_sphere(HomotopySphereDescriptor(q, cokerJ_nontrivial=True)).status
        assert (got is Status.CONDITIONAL) == (q in conditional)
