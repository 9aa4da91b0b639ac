"""One test per acceptance criterion; each prints a PASS/FAIL line with its key numbers."""

import pytest

from exceptional_euler.verify import CHECKS, run_check

CRITERIA = [
    (1, "g2_volume"),
    (2, "f4_volume"),
    (3, "e6_volume"),
    (4, "macdonald"),
    (5, "derivations"),
    (6, "roots"),
    (7, "automorphism"),
    (8, "iwasawa"),
    (9, "coset_metrics"),
    (10, "sampler"),
    (11, "f_function"),
]


def test_every_check_is_a_criterion():
    assert sorted(k for _, k in CRITERIA) == sorted(CHECKS)


@pytest.mark.parametrize("number, key", CRITERIA, ids=[k for _, k in CRITERIA])
def test_criterion(number, key, capsys):
    result = run_check(key, seed=0)
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {result.line()}")
        for name, value in result.values.items():
            print(f"    {name}: {value}")
    assert result.passed, f"criterion {number} failed: {', '.join(result.failures)}"
