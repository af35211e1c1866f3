import random

import pytest

from takagi_lab.omega import omega_membership
from takagi_lab.verify import SUITES, random_expansion, random_omega_member, run_suite


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_each_suite_passes(suite):
    checks = run_suite(suite, seed=1, n=200)
    assert checks and all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_seed_reproducible():
    assert run_suite("eval", 9, 100) == run_suite("eval", 9, 100)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_generators():
    rng = random.Random(0)
    kinds = {random_expansion(rng).tail_kind for _ in range(200)}
    assert kinds == {"zeros", "ones", "periodic"}
    assert all(omega_membership(random_omega_member(rng)).member for _ in range(500))
