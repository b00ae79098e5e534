"""End-to-end acceptance suite: the twelve seeded verification criteria.

Each test runs one criterion from the self-verification module and prints
its pass/fail line, so the suite output doubles as the acceptance report.
"""

from skewloci import selftest


def _run(criterion):
    res = criterion()
    print(res.line())
    assert res.passed, res.detail
    return res


def test_criterion_01_degree_table():
    _run(selftest.criterion_1)


def test_criterion_02_pfaffian_square():
    _run(selftest.criterion_2)


def test_criterion_03_subpfaffian_kernel():
    _run(selftest.criterion_3)


def test_criterion_04_fiber_meet_suite():
    _run(selftest.criterion_4)


def test_criterion_05_triple_roundtrip():
    _run(selftest.criterion_5)


def test_criterion_06_pencil_generics():
    _run(selftest.criterion_6)


def test_criterion_07_scroll_counts():
    _run(selftest.criterion_7)


def test_criterion_08_degree_probe():
    _run(selftest.criterion_8)


def test_criterion_09_directrix_suite():
    _run(selftest.criterion_9)


def test_criterion_10_cohomology_tables():
    _run(selftest.criterion_10)


def test_criterion_11_companion_nets():
    _run(selftest.criterion_11)


def test_criterion_12_type2_locus():
    _run(selftest.criterion_12)
