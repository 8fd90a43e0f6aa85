import pytest

from blockwyt.covers import (
    CoverReport,
    IncompleteRangeError,
    MonotonicityError,
    Sequence,
    SequenceFamily,
    check_exact_cover,
    complementary_beatty_family,
    double_cover_family,
    tail_cover_family,
    xi,
)


def family_of(*seqs):
    return SequenceFamily(tuple(seqs))


IDENTITY = Sequence("identity", lambda n: n, 1)


def test_xi_identity():
    assert xi(family_of(IDENTITY), 7) == 1


def test_xi_beatty_pair():
    assert xi(complementary_beatty_family(), 4) == 1


def test_xi_double_cover_values():
    fam = double_cover_family()
    assert xi(fam, 6) == 2
    assert xi(fam, 2) == 2
    assert xi(fam, 1) == 2
    assert xi(fam, 12) == 2


def test_xi_additive_over_family_split():
    fam = double_cover_family()
    left = family_of(*fam.members[:2])
    right = family_of(*fam.members[2:])
    for x in (1, 2, 5, 9, 40):
        assert xi(fam, x) == xi(left, x) + xi(right, x)


def test_xi_incomplete_range():
    stuck = Sequence("stuck", lambda n: 5, 0)
    assert xi(family_of(stuck), 4) == 0  # exceeds 4 immediately
    with pytest.raises(IncompleteRangeError):
        xi(family_of(stuck), 5)


def test_monotonicity_enforced():
    falling = Sequence("falling", lambda n: -n, 0)
    with pytest.raises(MonotonicityError):
        xi(family_of(falling), 10)


def test_identity_is_exact_1_cover():
    report = check_exact_cover(family_of(IDENTITY), 1, 500, 1)
    assert report.ok
    assert (report.lo, report.hi, report.p) == (1, 500, 1)


def test_identity_fails_as_2_cover():
    report = check_exact_cover(family_of(IDENTITY), 1, 50, 2)
    assert not report.ok
    assert report.violations == [(x, 1) for x in range(1, 51)]


def test_missing_values_reported_as_zero():
    odd = Sequence("odd", lambda n: 2 * n + 1, 0)
    report = check_exact_cover(family_of(odd), 1, 9, 1)
    assert report.violations == [(2, 0), (4, 0), (6, 0), (8, 0)]


def test_beatty_pair_exact_1_cover():
    report = check_exact_cover(complementary_beatty_family(), 1, 50_000, 1)
    assert report.ok


def test_double_cover_exact_2_cover():
    report = check_exact_cover(double_cover_family(), 1, 50_000, 2)
    assert report.ok


def test_tail_cover_exact_1_cover_from_3():
    report = check_exact_cover(tail_cover_family(), 3, 50_000, 1)
    assert report.ok


def test_tail_cover_misses_below_3():
    report = check_exact_cover(tail_cover_family(), 1, 10, 1)
    assert (1, 0) in report.violations
    assert (2, 0) in report.violations


def test_order_independence():
    fam = double_cover_family()
    shuffled = family_of(*reversed(fam.members))
    a = check_exact_cover(fam, 1, 2000, 2)
    b = check_exact_cover(shuffled, 1, 2000, 2)
    assert a.violations == b.violations == []
    a = check_exact_cover(fam, 1, 200, 1)
    b = check_exact_cover(shuffled, 1, 200, 1)
    assert a.violations == b.violations


def test_empty_range_rejected():
    with pytest.raises(ValueError):
        check_exact_cover(family_of(IDENTITY), 5, 4, 1)


def test_empty_family_rejected():
    with pytest.raises(ValueError):
        SequenceFamily(())


def test_report_ok_property():
    assert CoverReport(1, 1, 10).ok
    assert not CoverReport(1, 1, 10, [(3, 0)]).ok
