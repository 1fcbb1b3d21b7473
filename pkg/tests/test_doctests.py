import doctest

import pytest

import repcount.exterior
import repcount.intlinalg
import repcount.invariants
import repcount.oracle
import repcount.splitting
import repcount.words


@pytest.mark.parametrize("module", [
    repcount.words,
    repcount.intlinalg,
    repcount.exterior,
    repcount.splitting,
    repcount.invariants,
    repcount.oracle,
])
def test_module_doctests(module):
    failures, _ = doctest.testmod(module, verbose=False)
    assert failures == 0
