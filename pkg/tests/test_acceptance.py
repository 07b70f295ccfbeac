"""Acceptance battery: every headline check at its full sample size.

Each test prints one PASS/FAIL line; the functions live in
``galecubics.selftests`` and are shared verbatim with the command-line
``selftest all``.
"""

import time

import pytest

from galecubics.selftests import CHECKS, DEFAULT_SEED

BUDGET_SECONDS = {
    "gale-composition-zero": 10,
    "lagrangian-sigma-normal-form": 10,
    "frame-dual-basis-and-sigma-identity": 1,
    "cone-projection-roundtrip": 30,
    "overlattice-count-and-orbits": 5,
    "epw-coordinate-planes": 10,
    "epw-line-degree": 30,
    "singular-conic-on-epw": 60,
    "fano-line-roundtrip": 60,
    "gm-ideal-membership": 120,
    "a4-family-end-to-end": 600,
    "groebner-soundness": 60,
    "invariant-generators": 120,
}


@pytest.mark.parametrize("check_id", list(CHECKS))
def test_acceptance(check_id):
    start = time.time()
    passed, detail = CHECKS[check_id](DEFAULT_SEED)
    elapsed = time.time() - start
    status = "PASS" if passed else "FAIL"
    print(f"{status} {check_id} ({elapsed:.1f}s): {detail}")
    assert passed, f"{check_id}: {detail}"
    budget = BUDGET_SECONDS.get(check_id)
    if budget is not None:
        assert elapsed < budget, f"{check_id} exceeded {budget}s ({elapsed:.1f}s)"
