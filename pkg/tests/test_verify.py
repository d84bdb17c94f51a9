import pytest

from bohemian.verify import SUITES, run_suite


@pytest.mark.parametrize("suite", SUITES)
def test_suite_passes(suite):
    rep = run_suite(suite, 6)
    assert rep.checks and rep.failed == 0, rep.serialize()


def test_report_is_deterministic():
    assert run_suite("constructions", 5).serialize() == run_suite("constructions", 5).serialize()
    assert run_suite("caseII", 5, seed=1).serialize() != run_suite("caseII", 5, seed=2).serialize()


def test_inequality_tables_at_n8():
    rep = run_suite("inequalities", 8)
    assert rep.failed == 0
    assert sum("five inequalities" in c.name for c in rep.checks) == 7


def test_report_lines_name_anchor():
    rep = run_suite("caseI", 4)
    for c in rep.checks:
        assert c.line().startswith("PASS [caseI] ") and f"<{c.anchor}>" in c.line()


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
