from __future__ import annotations

from fractions import Fraction

import pytest

from mellinkit.errors import ZeroOperator
from mellinkit.germs import singular_points
from mellinkit.parser import parse
from mellinkit.skew import DiffOp
from mellinkit.stationary import CHECKS, CURATED, PUNCTUAL, Profile, Status, random_operator, verify


def statuses(r):
    return {k: v.status for k, v in r.checks.items()}


def test_verify_regular_singular_example():
    r = verify(parse("(z-1)*T + 1"))
    assert all(s is Status.PASS for s in statuses(r).values())
    assert [(g.point.label(), g.dim, g.irr, g.mu) for g in r.locals] == [
        ("0", 1, 0, 1), ("1", 1, 0, 1), ("inf", 1, 0, 1)]
    assert r.mellin_polygon.width == 1
    assert r.punctual_defect == 0
    assert r.horz_set == {Fraction(1)}
    assert r.passed()


def test_verify_delta_module():
    r = verify(parse("z - 2"))
    assert r.checks["ROTATION"].status is Status.PASS
    assert r.checks["DIM_IDENTITY"].status is Status.FAIL
    assert r.punctual_defect == 1
    assert not r.passed()
    assert verify(parse("z - 2"), expect_defect=1).passed()
    assert not verify(parse("z - 2"), expect_defect=0).passed()


@pytest.mark.parametrize("c", ["0", "1/2", "-3"])
def test_verify_constant_coefficient(c):
    r = verify(parse(f"T - {c}") if not c.startswith("-") else parse(f"T + {c[1:]}"))
    assert all(s is Status.PASS for s in statuses(r).values())
    assert r.mellin_polygon.width == 0 and r.punctual_defect == 0
    assert r.width_partition == (0, 0, 0)


def test_non_rational_points_are_skipped():
    r = verify(parse("(z^2 + 1)*T + z"))
    assert r.checks["ROTATION"].status is Status.PASS
    for name in CHECKS[1:]:
        assert r.checks[name].status is Status.SKIPPED
        assert "z^2 + 1" in r.checks[name].reason
    assert r.residual == "z^2 + 1" and r.punctual_defect is None
    assert r.passed() and r.warnings


def test_curated_suite():
    for text, expected in CURATED + PUNCTUAL:
        r = verify(parse(text))
        assert r.punctual_defect == expected, text
        assert r.passed() == (expected == 0)
        assert verify(parse(text), expect_defect=expected).passed()


def test_zero_operator_is_rejected():
    with pytest.raises(ZeroOperator):
        verify(DiffOp())


def test_random_operator_is_deterministic():
    assert random_operator(1, Profile.SMALL) == random_operator(1, "SMALL")
    assert random_operator(1, Profile.SMALL) != random_operator(2, Profile.SMALL)
    assert str(random_operator(1, Profile.SMALL)) == str(random_operator(1, Profile.SMALL))


def test_profiles():
    for seed in range(50):
        P = random_operator(seed, Profile.REGULAR)
        lead = P.leading_coefficient()
        assert len(list(lead.items())) == 1 and lead.degree() == 0
        P = random_operator(seed, Profile.SINGULAR)
        points, residual = singular_points(P)
        assert len(points) == 1 and residual == 0
        P = random_operator(seed, Profile.SMALL)
        assert P.order() <= 5 and all(-4 <= r <= 4 for r in P.z_exponents())


def test_verify_is_pure():
    P = random_operator(7, Profile.SINGULAR)
    assert verify(P).to_dict() == verify(P).to_dict()


def test_regular_corpus_structural_checks():
    for seed in range(60):
        r = verify(random_operator(seed, Profile.REGULAR))
        for name in ("ROTATION", "SLOPE_PARTITION", "LOCAL_DIMS", "HORZ_LOCALIZATION"):
            assert r.checks[name].status is Status.PASS
        assert r.width_partition[1] == r.punctual_defect


def test_defect_is_signed_for_apparent_points():
    r = verify(parse("(z-1)*T^2 + 1"))
    assert r.punctual_defect == -1
    assert r.checks["DIM_IDENTITY"].status is Status.FAIL
    assert r.checks["SLOPE_PARTITION"].status is Status.PASS
