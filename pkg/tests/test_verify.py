"""The named verification battery."""

import pytest

from mwb.errors import VerificationFailed
from mwb.verify import check_names, run_check, verify_all


def test_all_checks_pass():
    report = verify_all()
    assert report["all_ok"]
    assert set(report["checks"]) == set(check_names())
    for name, result in report["checks"].items():
        assert result["ok"], f"{name}: {result['detail']}"
        assert result["detail"]


def test_run_single_check():
    result = run_check("quantum-exchange")
    assert result["ok"] and result["name"] == "quantum-exchange"
    with pytest.raises(VerificationFailed):
        run_check("no-such-check")
