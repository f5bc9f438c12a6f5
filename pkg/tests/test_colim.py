import pytest

from thoma2.colim import (LeftIdealPushout, UnsupportedPushout, nerve_comparison,
                          pushout_skew, quotient, quotient_iso_checks, standard_target,
                          universal_property_check, vwb_check, xi_well_defined)
from thoma2.ideals import horn_skew_immersion, verify_skew_immersion
from thoma2.twocat import (FullSub, TwoFunctor, oriental, terminal, validate_two_category,
                           walking_2cell)


def test_quotient_of_oriental():
    B = oriental(2)
    Q, star = quotient(B, {0})
    assert set(Q.objects()) == {star, ("b", 1), ("b", 2)}
    assert validate_two_category(Q).ok
    assert Q.kappa().validate().ok and Q.omega().validate().ok


@pytest.mark.parametrize("X", [walking_2cell, lambda: oriental(1), terminal])
def test_quotient_universal_property(X):
    Q, _ = quotient(oriental(2), {0, 1})
    rep = universal_property_check(Q, X())
    assert rep.ok, rep.summary()


def test_pushout_universal_property_small():
    B = oriental(2)
    A = FullSub(B, {0}, "A")
    F = TwoFunctor(A, oriental(1), {0: 1}, {(0,): (1,)}, {((0,), (0,)): ((1,), (1,))}, "F")
    PO = LeftIdealPushout(B, {0}, oriental(1), F)
    assert validate_two_category(PO).ok
    assert universal_property_check(PO, walking_2cell()).ok


def test_unsupported_shapes():
    with pytest.raises(UnsupportedPushout):
        quotient(oriental(2), {2})  # up-closed, not a left ideal
    with pytest.raises(UnsupportedPushout) as info:
        quotient(oriental(2), {1})
    assert "supported shapes" in str(info.value)


@pytest.mark.parametrize("n,k", [(1, 0), (2, 1)])
@pytest.mark.parametrize("kind", ["identity", "collapse", "walking"])
def test_pushout_of_horn_certificate(n, k, kind):
    cert = horn_skew_immersion(n, k)
    F = standard_target(cert.A, kind)
    assert F.validate().ok
    PO, Jp, xi = pushout_skew(cert, F)
    assert validate_two_category(PO).ok
    assert verify_skew_immersion(Jp).ok
    assert xi_well_defined(PO, cert.eps).ok
    assert quotient_iso_checks(cert, F, (PO, Jp, xi)).ok


def test_identity_pushout_reproduces_b():
    cert = horn_skew_immersion(2, 1)
    PO, _, _ = pushout_skew(cert, standard_target(cert.A, "identity"))
    assert PO.cell_counts() == cert.B.cell_counts()


def test_standard_target_rejects_unknown_kind():
    with pytest.raises(ValueError):
        standard_target(oriental(1), "sideways")


@pytest.mark.parametrize("n,k", [(1, 0), (1, 1)])
def test_nerve_square_is_pushout_at_cap_3(n, k):
    cert = horn_skew_immersion(n, k)
    assert vwb_check(cert.B, cert.A_objs, cert.W_objs, 3).ok


def test_nerve_square_reports_non_ideal_input():
    cert = horn_skew_immersion(1, 0)
    # swapping the roles breaks the ideal conditions and is reported, not raised
    rep = vwb_check(cert.B, cert.W_objs, cert.A_objs, 2)
    assert not rep.ok
    assert rep.failed_checks() & {"A-left-ideal", "W-right-ideal"}


def test_nerve_comparison_small_case():
    cert = horn_skew_immersion(1, 0)
    c, PO = nerve_comparison(cert.B, cert.A_objs, standard_target(cert.A, "collapse"), 2)
    assert c.validate().ok
