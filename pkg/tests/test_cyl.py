import pytest

from thoma2.cyl import (Cyl, LaxSquare, NotLax, classify_lax_transformation, cyl_structure,
                        example_lax_transformation, extract_components, homotopy_Hni,
                        lax_transformation_report, path_object_check, right_homotopy_witness)
from thoma2.nlax import N2Ops, NormalLaxFunctor, enumerate_simplices
from thoma2.poset import Poset, ordinal
from thoma2.sset import homotopy_check
from thoma2.twocat import (PosetCategory, TwoFunctor, materialize, oriental, terminal,
                           validate_two_category, walking_2cell)


def oracle_commuting_squares(P):
    """Arrows of Cyl over a poset: any pair (u0, u1) of comparabilities gives a square."""
    arrows = [(a, b) for a in P.elements for b in P.elements if P.le(a, b)]
    return sum(1 for f in arrows for g in arrows
               if P.le(f[0], g[0]) and P.le(f[1], g[1]))


@pytest.mark.parametrize("P", [ordinal(1), ordinal(2),
                               Poset("abc", [("a", "b"), ("a", "c")])])
def test_cyl_of_poset_counts(P):
    C = Cyl(PosetCategory(P))
    assert len(C.objects()) == len(PosetCategory(P).all_arrows())
    assert len(C.all_arrows()) == oracle_commuting_squares(P)
    assert validate_two_category(C).ok


@pytest.mark.parametrize("make", [terminal, walking_2cell, lambda: oriental(2),
                                  lambda: materialize(oriental(2))])
def test_cyl_axioms(make):
    C = Cyl(make())
    rep = validate_two_category(C)
    assert rep.ok, rep.summary()


def test_square_direction():
    # the 2-cell of a square goes from u1 o f to g o u0
    A = oriental(2)
    C = Cyl(A)
    for s in C.all_arrows():
        assert s.alpha in A.cells(A.comp(s.u1, s.f), A.comp(s.g, s.u0))
    assert C.cell_counts()[0] == len(A.all_arrows())


def test_structure_functors():
    C = Cyl(walking_2cell())
    dom, cod, I = cyl_structure(C)
    for F in (dom, cod, I):
        assert F.validate().ok
    f = "f"
    assert I.arr(f) == LaxSquare("id_x", "id_y", "f", "f", ("f", "f"))


@pytest.mark.parametrize("make,cap", [(terminal, 3), (walking_2cell, 2), (lambda: oriental(1), 3)])
def test_path_object(make, cap):
    rep = path_object_check(make(), cap)
    assert rep.ok, rep.summary()


def test_path_homotopy_detects_wrong_endpoints():
    C = Cyl(walking_2cell())
    dom, _, I = cyl_structure(C)
    H = homotopy_Hni(C)
    simp = enumerate_simplices(C, 1)
    ops = N2Ops(C)
    ID = NormalLaxFunctor.of_functor(I.compose(dom)).on_simplex
    assert homotopy_check(H, ID, lambda S: S, simp, ops, ops).ok
    # the two ends are not interchangeable
    assert not homotopy_check(H, lambda S: S, ID, simp, ops, ops).ok


def test_identity_transformation():
    B = oriental(2)
    F = TwoFunctor.identity(B)
    abar = classify_lax_transformation(F, F, B.id1, lambda f: B.id2(f))
    assert abar.validate().ok
    c0, c1 = extract_components(abar)
    assert all(c1(f) == B.id2(f) for f in B.all_arrows())


def test_example_transformation_round_trip():
    F, G, c0, c1 = example_lax_transformation()
    assert lax_transformation_report(F, G, c0, c1).ok
    abar = classify_lax_transformation(F, G, c0, c1)
    e0, e1 = extract_components(abar)
    for f in F.source.all_arrows():
        assert e1(f) == c1(f)
    rep = right_homotopy_witness(F, G, c0, c1, cap=1)
    assert rep.ok, rep.summary()


def test_reversed_transformation_is_not_lax_but_is_oplax():
    F, G, c0, c1 = example_lax_transformation()
    assert not lax_transformation_report(G, F, c0, c1).ok
    with pytest.raises(NotLax):
        classify_lax_transformation(G, F, c0, c1)
    assert right_homotopy_witness(G, F, c0, c1, cap=1, oplax=True).ok


def test_bad_component_is_located():
    F, G, c0, c1 = example_lax_transformation()
    B = F.target

    def bad(f):
        return B.id2((0, 2)) if f == (0, 1) else c1(f)

    rep = lax_transformation_report(F, G, c0, bad)
    assert not rep.ok
    assert rep.failures[0].where == (0, 1)
