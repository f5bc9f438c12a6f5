import itertools
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thoma2.homology import (betti, chain_complex, euler_characteristic, homology,
                             homology_iso_probe, invariant_factors, smith)
from thoma2.poset import Poset, iterate_chain_poset, ordinal
from thoma2.sset import EZ, SimplicialMap, SimplicialSet, basic_complex, nd, nerve, sd


def _det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]])
               for j in range(len(M)) if M[0][j])


def oracle_invariant_factors(M):
    """d_1 ... d_k = gcd of the k x k minors (determinantal divisors)."""
    m, n = len(M), len(M[0])
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(n), k):
                g = gcd(g, _det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_against_determinantal_divisors(M):
    S = smith(M)
    assert S.d == oracle_invariant_factors(M)
    for a, b in zip(S.d, S.d[1:]):
        assert b % a == 0
    D = _matmul(_matmul(S.P, M), S.Q)
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            assert v == (S.d[i] if i == j and i < len(S.d) else 0)
    m, n = len(M), len(M[0])
    assert _matmul(S.P, S.Pinv) == [[int(i == j) for j in range(m)] for i in range(m)]
    assert _matmul(S.Q, S.Qinv) == [[int(i == j) for j in range(n)] for i in range(n)]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_sparse_path_matches_dense(M):
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    assert invariant_factors(rows, len(M[0])) == smith(M, track=False).d


def test_circle_and_spheres():
    assert betti(basic_complex("boundary", 2), 1) == (1, 1)
    assert betti(basic_complex("boundary", 3), 2) == (1, 0, 1)
    assert betti(sd(sd(basic_complex("boundary", 3))), 2) == (1, 0, 1)
    assert betti(nerve(iterate_chain_poset(ordinal(2), 2), 3), 2) == (1, 0, 0)
    assert betti(basic_complex("horn", 2, 1), 1) == (1, 0)


def test_projective_plane_torsion():
    # one vertex v, one edge e, a triangle with faces (e, s0 v, e): boundary 2e
    v = nd("v", 0)
    K = SimplicialSet(2, {0: ["v"], 1: ["e"], 2: ["t"]},
                      {"e": (v, v), "t": (nd("e", 1), EZ("v", (0, 0)), nd("e", 1))}, "RP2")
    assert K.validate().ok
    assert homology(K, 2, assume_complete=True) == [(1, []), (0, [2]), (0, [])]


def test_one_vertex_circle():
    v = nd("v", 0)
    K = SimplicialSet(1, {0: ["v"], 1: ["e"]}, {"e": (v, v)}, "S1")
    assert homology(K, 1, assume_complete=True) == [(1, []), (1, [])]


def test_cap_guard():
    with pytest.raises(ValueError):
        homology(nerve(ordinal(3), 2), 2)
    assert betti(nerve(ordinal(3), 2), 2, assume_complete=True)[0] == 1


@st.composite
def posets(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Poset(range(n), rel)


@settings(max_examples=40, deadline=None)
@given(posets())
def test_euler_characteristic_is_alternating_betti_sum(P):
    top = len(P)
    K = nerve(P, top)
    b = betti(K, top - 1)
    assert sum((-1) ** i * x for i, x in enumerate(b)) == euler_characteristic(K)
    assert chain_complex(K, top).check_dd().ok


def test_cones_are_acyclic():
    # a poset with a top element has contractible nerve
    P = Poset("abct", [("a", "t"), ("b", "t"), ("c", "t"), ("a", "b")])
    assert betti(nerve(P, 4), 3) == (1, 0, 0, 0)


def test_iso_probe():
    K = basic_complex("boundary", 2)
    ident = homology_iso_probe(SimplicialMap.identity(K), 1)
    assert ident.ok and any("necessary" in n for n in ident.notes)
    pt = basic_complex("standard", 0, cap=1)
    const = SimplicialMap(K, pt, {t: EZ((0,), (0,) * (m + 1)) for t, m in K.dims.items()})
    rep = homology_iso_probe(const, 1, assume_complete=True)
    assert not rep.ok
    I = basic_complex("standard", 1, cap=2)
    P0 = basic_complex("standard", 0, cap=2)
    collapse = SimplicialMap(I, P0, {t: EZ((0,), (0,) * (m + 1)) for t, m in I.dims.items()})
    assert homology_iso_probe(collapse, 1).ok


def test_folding_the_circle_kills_h1():
    K = basic_complex("boundary", 2)
    assert homology_iso_probe(SimplicialMap.identity(sd(K)), 1).ok
    # send vertex 0 to 0 and vertices 1, 2 to 1
    I = basic_complex("standard", 1)
    fold = {}
    for t in K.dims:
        vals = [0 if v == 0 else 1 for v in t]
        base = sorted(set(vals))
        target = (base[0],) if len(base) == 1 else (0, 1)
        fold[t] = EZ(target, tuple(base.index(x) for x in vals))
    f = SimplicialMap(K, I, fold)
    assert f.validate().ok
    assert not homology_iso_probe(f, 1, assume_complete=True).ok
