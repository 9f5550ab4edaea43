import doctest

import pytest

from stein_obstruct import cohomology, linalg, thom


@pytest.mark.parametrize("module", [cohomology, linalg, thom])
def test_doctests(module):
    failures, _ = doctest.testmod(module)
    assert failures == 0
