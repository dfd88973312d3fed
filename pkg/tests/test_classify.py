from fractions import Fraction

import pytest

from polarcyl.certify import verify_certificate
from polarcyl.classify import (
    ClassifyError,
    Reason,
    Status,
    classify,
    explain,
    proportional_to_anticanonical,
)
from polarcyl.cone import NotAmple, PeThresholdCertificate
from polarcyl.families import DP2_CONTRACTED, build_dp2, Dp2Params, dp2_tower, nine_points
from polarcyl.picard import DivisorClass, canonical_class, general_position

F = Fraction


def E(i, n):
    return DivisorClass.exceptional(i, n)


def test_spec_examples():
    v = classify(general_position(6), -canonical_class(6))
    assert v.status is Status.NO_CYLINDER and v.reason is Reason.THEOREM_MAIN
    assert v.r == 0 and v.K2 == 3 and v.mu == 1
    v = classify(general_position(5), -canonical_class(5))
    assert v.status is Status.CYLINDER and v.reason is Reason.DEL_PEZZO_1
    assert v.certificate is None
    v = classify(*nine_points(F(1, 2)))
    assert v.status is Status.UNKNOWN and v.reason is Reason.OPEN_WINDOW
    assert "1/4 < x <= 7/8" in v.detail


@pytest.mark.parametrize("n", range(0, 9))
def test_anticanonical_boundary(n):
    v = classify(general_position(n), -canonical_class(n))
    expected = Status.CYLINDER if 9 - n >= 4 else Status.NO_CYLINDER
    assert v.status is expected


def test_del_pezzo_2_branch():
    n = 6
    v = classify(general_position(n), -canonical_class(n) + F(1, 2) * E(6, n))
    assert v.status is Status.CYLINDER and v.reason is Reason.DEL_PEZZO_2
    assert v.r == 1
    n = 4
    v = classify(general_position(n), -canonical_class(n) + F(1, 3) * E(1, n))
    assert v.reason is Reason.DEL_PEZZO_2


def test_theorem_main_grid():
    for n in (7, 8):
        for x in (F(1, 10), F(1, 4), F(49, 100)):
            v = classify(general_position(n), -canonical_class(n) + x * E(n, n))
            assert v.status is Status.NO_CYLINDER and v.reason is Reason.THEOREM_MAIN
            assert v.r + v.K2 <= 3


def test_auxiliary_branch_has_certificate():
    n = 7
    A = -canonical_class(n) + F(9, 10) * (E(6, n) + E(7, n))
    v = classify(general_position(n), A)
    assert v.status is Status.CYLINDER and v.reason is Reason.AUXILIARY
    assert verify_certificate(general_position(n), v.certificate).accepted
    assert v.r + v.K2 == 4


def test_nine_points_trichotomy():
    grid = [F(k, 40) for k in range(1, 40)]
    for x in grid:
        v = classify(*nine_points(x))
        if x <= F(1, 4):
            assert v.status is Status.NO_CYLINDER and v.reason is Reason.NINE_POINTS_LEMMA
        elif x <= F(7, 8):
            assert v.status is Status.UNKNOWN and v.reason is Reason.OPEN_WINDOW
        else:
            assert v.status is Status.CYLINDER and v.certificate is not None


def test_nine_points_needs_certificate():
    spec, A, _ = nine_points(F(1, 4))
    with pytest.raises(ClassifyError):
        classify(spec, A)


def test_nine_points_other_shape_is_unknown():
    spec = general_position(9)
    A = -canonical_class(9) + F(1, 3) * E(9, 9)
    cert = PeThresholdCertificate(1, ((E(9, 9), F(1, 3)),), {"H-E1": 1})
    v = classify(spec, A, cert)
    assert v.status is Status.UNKNOWN and v.reason is Reason.NO_RULE


def test_errors():
    with pytest.raises(NotAmple):
        classify(general_position(6), -canonical_class(6) + 2 * E(6, 6))
    with pytest.raises(ClassifyError):
        classify(general_position(6), -canonical_class(5))


def test_star_violated_surface_is_unknown():
    surface = dp2_tower(DP2_CONTRACTED)
    # positive on every tracked curve of the contracted surface
    A = surface.contraction().project(-canonical_class(surface.n) + DivisorClass.line(surface.n))
    v = classify(surface, A)
    assert v.status is Status.UNKNOWN and v.reason is Reason.STAR_UNVERIFIED


def test_dp2_polarization_is_rejected():
    # A.pi(L2) = 0 at class level, so the ampleness precondition fails
    rep = build_dp2(Dp2Params(F(1, 4), F(1, 8)))
    with pytest.raises(NotAmple):
        classify(rep.surface, rep.A)


def test_deterministic_and_no_contradiction():
    # never NoCylinder where the auxiliary family certifies a cylinder
    for n in (6, 7, 8):
        k = n - 5
        for x in (F(1, 4), F(3, 4), F(9, 10), F(99, 100)):
            A = -canonical_class(n)
            for i in range(6, n + 1):
                A = A + x * E(i, n)
            v1 = classify(general_position(n), A)
            assert v1 == classify(general_position(n), A)
            if x > 1 - F(1, 2 * k):
                assert v1.status is Status.CYLINDER


def test_proportionality():
    K = canonical_class(4)
    assert proportional_to_anticanonical(-F(3, 2) * K) == F(3, 2)
    assert proportional_to_anticanonical(K) is None
    assert proportional_to_anticanonical(-K + E(1, 4)) is None


def test_explain():
    text = explain(classify(general_position(6), -canonical_class(6)))
    assert "r_A + K^2 = 3" in text and "theorem-main" in text
    n = 6
    text = explain(classify(general_position(n), -canonical_class(n) + F(15, 16) * E(6, n)))
    # the matched witness is eps1 = eps2 = (1 - 2(1 - 15/16))/4 = 7/32
    assert "certificate:" in text and "71/64 * [conic]" in text and "eps1 = eps2 = 7/32" in text
    text = explain(classify(*nine_points(F(1, 2))))
    assert "1/4 < x <= 7/8" in text
