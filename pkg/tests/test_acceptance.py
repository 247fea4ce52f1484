"""Acceptance gate: every release criterion at its stated tolerance.

Each test prints one PASS/FAIL line with the measured figure so the
suite output doubles as a verification report.  The same checks back
the ``ring-spectra verify`` subcommand.
"""

import pytest

from ring_spectra.acceptance import CHECKS


@pytest.mark.parametrize(
    "number,description,check",
    CHECKS,
    ids=[f"criterion_{num:02d}" for num, _, _ in CHECKS],
)
def test_acceptance_criterion(number, description, check):
    result = check()
    status = "PASS" if result.ok else "FAIL"
    print(f"{status} criterion {number}: {description} -- {result.detail}")
    assert result.ok, f"criterion {number} ({description}): {result.detail}"
