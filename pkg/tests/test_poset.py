import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thoma2.poset import (Poset, PosetMap, boundary_poset, chain_map, chain_poset, closure,
                          collar, collar_check, collar_retraction, face_chain, full_chain,
                          horn_poset, is_down_closed, is_up_closed, iterate_chain_poset,
                          monotone_maps, ordinal)


@st.composite
def posets(draw, max_size=6):
    """Random posets: a random relation compatible with the order 0 < 1 < ... < n-1."""
    n = draw(st.integers(1, max_size))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Poset(range(n), rel)


def brute_chains(P):
    out = []
    for r in range(1, len(P) + 1):
        for combo in itertools.combinations(P.elements, r):
            if all(P.comparable(a, b) for a, b in itertools.combinations(combo, 2)):
                out.append(combo)
    return out


@given(posets())
def test_order_axioms(P):
    for a in P:
        assert P.le(a, a)
        for b in P:
            if P.le(a, b) and P.le(b, a):
                assert a == b
            for c in P:
                if P.le(a, b) and P.le(b, c):
                    assert P.le(a, c)


@given(posets())
def test_chains_match_brute_force(P):
    assert {frozenset(c) for c in P.chains()} == {frozenset(c) for c in brute_chains(P)}
    assert len(chain_poset(P)) == len(brute_chains(P))
    for c in P.chains():
        assert P.is_chain(c)


@given(posets())
def test_json_round_trip(P):
    Q = Poset.from_json(json.loads(P.dumps()))
    assert Q == P


@given(posets(), st.data())
def test_closure_is_idempotent_and_closed(P, data):
    S = data.draw(st.lists(st.sampled_from(P.elements), unique=True))
    up = closure(P, S, "up")
    down = closure(P, S, "down")
    assert is_up_closed(P, up) and is_down_closed(P, down)
    assert closure(P, up, "up") == up
    assert set(S) <= up and set(S) <= down


def test_cycle_rejected():
    with pytest.raises(ValueError):
        Poset([0, 1], [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Poset([0], [(0, 5)])
    with pytest.raises(ValueError):
        Poset([0, 0])


def test_ordinal_and_chain_sizes():
    # chains of [n] are the non-empty subsets
    for n in range(4):
        assert len(chain_poset(ordinal(n))) == 2 ** (n + 1) - 1
    assert len(iterate_chain_poset(ordinal(1), 2)) == 5
    assert len(iterate_chain_poset(ordinal(2), 2)) == 25
    assert len(chain_poset(horn_poset(2, 1))) == 9
    # the boundary of [2] has 3 vertices and 3 edges
    assert len(boundary_poset(2)) == 6
    with pytest.raises(ValueError):
        ordinal(-1)
    with pytest.raises(ValueError):
        horn_poset(2, 3)


def test_monotone_maps_count():
    # maps [1] -> [2] are pairs a <= b
    assert len(monotone_maps(ordinal(1), ordinal(2))) == 6
    # maps [1] -> f([1]) are the 5 pairs a <= b in a 3-element Lambda shape
    assert len(monotone_maps(ordinal(1), chain_poset(ordinal(1)))) == 5


def test_chain_map_is_monotone():
    g = PosetMap(ordinal(2), ordinal(1), {0: 0, 1: 0, 2: 1})
    assert g.is_monotone()
    fg = chain_map(g)
    assert fg.is_monotone()
    assert fg((0, 1, 2)) == (0, 1)
    bad = PosetMap(ordinal(1), ordinal(1), {0: 1, 1: 0})
    assert not bad.is_monotone()
    assert bad.non_monotone_pair() == (0, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_collar_all_k(n):
    P = chain_poset(ordinal(n))
    for k in range(n + 1):
        rep = collar_check(P, full_chain(n), face_chain(n, k))
        assert rep.ok, rep.summary()


def test_collar_retraction_values():
    P = chain_poset(ordinal(1))
    top, k = (0, 1), (1,)
    H, C = collar(P, top, k)
    assert set(H.elements) == {((0,),)}
    r = collar_retraction(P, top, k)
    assert r(((0,), (0, 1))) == ((0,),)
    assert all(r(x) == ((0,),) for x in C)


def test_collar_rejects_bad_input():
    P = chain_poset(ordinal(2))
    with pytest.raises(ValueError):
        collar(P, (0, 1), (0,))  # not the top
    with pytest.raises(ValueError):
        collar(P, full_chain(2), (0,))  # not maximal below the top


@settings(max_examples=40, deadline=None)
@given(posets(max_size=4), st.data())
def test_collar_holds_on_random_posets_with_top(Q, data):
    top = "t"
    P = Poset(list(Q.elements) + [top], list(Q.leq) + [(x, top) for x in Q])
    k = data.draw(st.sampled_from(sorted(Q.maximal())))
    if len(Q) < 2:
        return
    rep = collar_check(P, top, k)
    assert rep.ok, rep.summary()
