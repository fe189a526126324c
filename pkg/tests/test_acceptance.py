"""One test per acceptance criterion; each prints a PASS or FAIL line."""

import pytest

from latticeforge import integerposets as ipo
from latticeforge import intervalposets as ivp
from latticeforge import permutrees as ptr
from latticeforge import qtstats as qt
from latticeforge import sweak as sw
from latticeforge.verify import SUITES, run_suite
from latticeforge.weakorder import perm, weak_join, weak_meet


@pytest.fixture
def report(capsys):
    def emit(name, checks, extra_ok=True):
        ok = extra_ok and all(c.ok for c in checks)
        failed = [c.name for c in checks if not c.ok]
        with capsys.disabled():
            number = SUITES[name][0]
            print(f"\n{'PASS' if ok else 'FAIL'} {number} {name} ({len(checks)} checks)" + (f" failed: {failed}" if failed else ""))
        assert ok, failed

    return emit


def test_tamari_counts(report):
    counts = [ivp.interval_formula(n) for n in range(1, 7)]
    report("tamari-counts", run_suite("tamari-counts"), counts == [1, 3, 13, 68, 399, 2530])


def test_rise_contact(report):
    report("rise-contact", run_suite("rise-contact"))


def test_m_tamari(report):
    counts = [ivp.m_interval_formula(m, n) for m, n in ((2, 2), (2, 3), (3, 2))]
    report("m-tamari", run_suite("m-tamari"), counts == [6, 58, 10])


def test_zeta(report):
    image = qt.zeta_inverse(qt.parse_area("01211123301101221"))
    report("zeta", run_suite("zeta"), image == (0, 0, 1, 2, 2, 2, 0, 1, 2, 3, 4, 5, 6, 5, 5, 6, 3))


def test_integer_posets(report):
    posets = ipo.all_posets(3)
    extra = len(posets) == 19 and sum(map(ipo.is_toip, posets)) == 13
    report("integer-posets", run_suite("integer-posets"), extra)


def test_permutrees(report):
    extra = ptr.count("NNDN") == 18 and ptr.count("NBUN") == 10
    extra &= ptr.coordinates(ptr.insert("2751346", "DUNBNDU")) == (7, -4, 3, 8, 1, 12, 1)
    report("permutrees", run_suite("permutrees"), extra)


def test_s_weak(report):
    extra = len(sw.all_pure_intervals((0, 2, 2))) == 41
    report("s-weak", run_suite("s-weak"), extra)


def test_qt_statistics(report):
    extra = sum(1 for _ in qt.sub_partitions((3, 2, 2, 1))) == 23
    extra &= qt.schur_expand(qt.qt_distribution(qt.staircase(3))) == {(3, 0): 1, (1, 1): 1}
    report("qt-statistics", run_suite("qt-statistics"), extra)


def test_coherence(report):
    extra = weak_meet("3214", "3142") == perm("3124") and weak_join("3214", "3142") == perm("3421")
    report("coherence", run_suite("coherence"), extra)
