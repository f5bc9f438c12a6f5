import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thoma2.exfun import (ex, ex2, ex2_n2, ex_map, generating_sets, sd_codegeneracy, sd_coface,
                          sdr_witness_check)
from thoma2.ideals import horn_skew_immersion
from thoma2.poset import Poset, chain_poset, iterate_chain_poset, monotone_maps, ordinal
from thoma2.sset import EZ, SimplicialMap, basic_complex, nerve
from thoma2.twocat import terminal, validate_two_category, walking_2cell


@st.composite
def posets(draw, max_size=3):
    n = draw(st.integers(1, max_size))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Poset(range(n), rel)


@settings(max_examples=15, deadline=None)
@given(posets())
def test_ex_of_nerve_counts_monotone_maps_out_of_chains(P):
    # an n-simplex of Ex N(P) is a monotone map f([n]) -> P
    E = ex(nerve(P, 2), 2)
    for n in range(3):
        assert E.count(n) == len(monotone_maps(chain_poset(ordinal(n)), P))


def test_ex_of_point_and_interval():
    assert ex(basic_complex("standard", 0, cap=2), 2).counts() == [1, 0, 0]
    E = ex(basic_complex("standard", 1, cap=2), 2)
    assert E.count(1) == 5
    assert E.validate().ok


def test_ex_squared_degree_one():
    E2 = ex2(basic_complex("standard", 1, cap=1), 1)
    oracle = len(monotone_maps(iterate_chain_poset(ordinal(1), 2), ordinal(1)))
    assert oracle == 13
    assert E2.count(1) == oracle


def test_ex_rejects_short_input():
    with pytest.raises(ValueError):
        ex(basic_complex("standard", 1), 2)


@pytest.mark.parametrize("n", [1, 2])
def test_subdivided_cofaces_and_codegeneracies(n):
    for i in range(n + 1):
        assert sd_coface(n, i).validate().ok
    for i in range(n):
        assert sd_codegeneracy(n - 1, i).validate().ok


def test_ex_on_maps_is_functorial():
    K = basic_complex("standard", 1, cap=2)
    L = basic_complex("standard", 0, cap=2)
    f = SimplicialMap(K, L, {(0,): EZ((0,), (0,)), (1,): EZ((0,), (0,)),
                             (0, 1): EZ((0,), (0, 0))})
    EK, EL = ex(K, 2), ex(L, 2)
    g = ex_map(f, EK, EL)
    assert g.validate().ok
    ident = ex_map(SimplicialMap.identity(K), EK, EK)
    assert all(ident(x) == x for x in EK.simplices(1))


def test_ex2_of_2_nerve_small():
    assert ex2_n2(terminal(), 1).counts() == [1, 0]
    E = ex2_n2(walking_2cell(), 1)
    assert E.count(0) == 2
    assert E.validate().ok


@pytest.mark.parametrize("n,k,sizes", [(1, None, (2, 5)), (2, 1, (9, 25)), (0, None, (0, 1))])
def test_generating_sets(n, k, sizes):
    g = generating_sets(n, k)
    assert (len(g.small.objects()), len(g.big.objects())) == sizes
    assert g.inclusion().validate().ok
    assert validate_two_category(g.big).ok
    assert g.to_json()["kind"] == ("boundary" if k is None else "horn")


@pytest.mark.parametrize("n,k,cap", [(1, 0, 3), (1, 1, 3), (2, 0, 2)])
def test_sdr_witness(n, k, cap):
    rep = sdr_witness_check(horn_skew_immersion(n, k), cap)
    assert rep.ok, rep.summary()
