import pytest

from injgen.verify import check_names, run_suite

EXPECTED_CHECKS = ["zero-context", "covering-roundtrip", "tensor-formula",
                   "power-block-law", "twisted-dual", "degeneracy",
                   "corner-pd", "cleft-vanishing"]


def test_check_names():
    assert check_names() == EXPECTED_CHECKS


def test_full_suite_passes():
    reports = run_suite()
    assert [r.name for r in reports] == EXPECTED_CHECKS
    for rep in reports:
        assert rep.ok is True, (rep.name, rep.details)


def test_only_filter():
    reports = run_suite(only=["degeneracy", "zero-context"])
    assert sorted(r.name for r in reports) == ["degeneracy", "zero-context"]


def test_unknown_name_raises():
    with pytest.raises(ValueError):
        run_suite(only=["zero-context", "bogus"])
