import json
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thoma2.poset import Poset, chain_poset, monotone_maps, ordinal
from thoma2.sset import (EZ, SimplicialHomotopy, SimplicialMap, SimplicialSet, basic_complex,
                         codegeneracy, compose, face_poset, hom_enumerate, homotopy_check,
                         iso_check, nerve, product, pushout_sset, sd, sd_horn_check,
                         surj_of_word, surjections, word_of)


@st.composite
def posets(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Poset(range(n), rel)


@given(st.integers(0, 6), st.data())
def test_surjections_and_words(m, data):
    k = data.draw(st.integers(0, m))
    surjs = list(surjections(m, k))
    assert len(surjs) == comb(m, k)
    for s in surjs:
        assert surj_of_word(word_of(s), k) == s
        w = word_of(s)
        assert list(w) == sorted(set(w), reverse=True)


def test_codegeneracy_identity():
    # sigma^j sigma^i = sigma^i sigma^{j+1} for i <= j, as maps [m+2] -> [m]
    m = 3
    for i in range(m + 1):
        for j in range(i, m + 1):
            lhs = compose(codegeneracy(j, m), codegeneracy(i, m + 1))
            rhs = compose(codegeneracy(i, m), codegeneracy(j + 1, m + 1))
            assert lhs == rhs


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_simplex_counts_and_identities(n):
    D = basic_complex("standard", n, cap=n + 2)
    for m in range(n + 3):
        # m-simplices of Delta[n] are monotone maps [m] -> [n]
        assert D.count(m) == comb(n + m + 1, m + 1)
        assert len(D.simplices(m)) == D.count(m)
    assert D.validate().ok


@pytest.mark.parametrize("kind,n,k,expected", [
    ("boundary", 2, None, [3, 3, 0]),
    ("horn", 2, 1, [3, 2, 0]),
    ("horn", 3, 0, [4, 6, 3, 0]),
    ("boundary", 3, None, [4, 6, 4, 0]),
])
def test_boundary_and_horn_counts(kind, n, k, expected):
    K = basic_complex(kind, n, k)
    assert K.counts() == expected
    assert K.validate().ok


def test_bad_complex_arguments():
    with pytest.raises(ValueError):
        basic_complex("horn", 2, 5)
    with pytest.raises(ValueError):
        basic_complex("standard", 2, 1)
    with pytest.raises(ValueError):
        basic_complex("cube", 2)
    with pytest.raises(ValueError):
        basic_complex("standard", 2, cap=1)


@settings(max_examples=30, deadline=None)
@given(posets())
def test_nerve_valid_and_hom_matches_monotone_maps(P):
    N = nerve(P, 3)
    assert N.validate().ok
    for m in range(3):
        maps = hom_enumerate(basic_complex("standard", m), N)
        assert len(maps) == len(monotone_maps(ordinal(m), P))
        assert len(maps) == N.count(m)


def test_hom_into_lambda_shape_is_five():
    assert len(hom_enumerate(basic_complex("standard", 1), nerve(chain_poset(ordinal(1)), 1))) == 5


def test_sd_counts():
    assert sd(basic_complex("standard", 1)).counts() == [3, 2]
    assert sd(basic_complex("standard", 2)).counts() == [7, 12, 6]
    assert sd(sd(basic_complex("standard", 2))).counts() == [25, 60, 36]
    assert sd(basic_complex("boundary", 2)).counts() == [6, 6, 0]


def test_face_poset_of_sd_is_chain_poset():
    D = basic_complex("standard", 2)
    assert len(face_poset(D)) == len(chain_poset(ordinal(2)))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_sd_horn_lemma(n):
    assert sd_horn_check(n).ok
    for k in range(n + 1) if n else ():
        assert sd_horn_check(n, k).ok


def test_iso_check_distinguishes_orientation():
    vee = Poset(["a", "b", "c"], [("a", "b"), ("a", "c")])
    wedge = Poset(["a", "b", "c"], [("a", "c"), ("b", "c")])
    assert nerve(vee, 2).counts() == nerve(wedge, 2).counts()
    assert iso_check(nerve(vee, 2), nerve(wedge, 2)) is None
    iso = iso_check(nerve(vee, 2), nerve(Poset(["x", "y", "z"], [("x", "y"), ("x", "z")]), 2))
    assert iso is not None and iso.validate().ok


def test_json_round_trip():
    K = sd(basic_complex("horn", 2, 1))
    L = SimplicialSet.from_json(json.loads(json.dumps(K.to_json())))
    assert L.counts() == K.counts()
    assert iso_check(K, L) is not None


def test_product_of_intervals():
    I = basic_complex("standard", 1, cap=2)
    sq = product(I, I)
    assert sq.counts() == [4, 5, 2]
    assert sq.validate().ok


def test_pushout_glues_two_edges_at_a_vertex():
    pt = basic_complex("standard", 0, cap=1)
    I = basic_complex("standard", 1)
    f = SimplicialMap(pt, I, {(0,): EZ((1,), (0,))})
    g = SimplicialMap(pt, I, {(0,): EZ((0,), (0,))})
    P, iB, iC = pushout_sset(f, g)
    assert P.counts() == [3, 2]
    assert iB.validate().ok and iC.validate().ok


def test_validate_catches_broken_face():
    D = basic_complex("standard", 2)
    faces = dict(D.faces)
    top = (0, 1, 2)
    bad = list(faces[top])
    bad[0] = bad[1]
    faces[top] = tuple(bad)
    K = SimplicialSet(2, D.nondeg, faces)
    assert not K.validate().ok


# -- homotopies ----------------------------------------------------------------

def _nerve_simplex(vals):
    base = tuple(v for i, v in enumerate(vals) if i == 0 or vals[i - 1] != v)
    surj, k = [], -1
    for i, v in enumerate(vals):
        if i == 0 or vals[i - 1] != v:
            k += 1
        surj.append(k)
    return EZ(base, tuple(surj))


def _contraction(K):
    """Delta[1] onto its vertex 1 by pointwise max with the interval coordinate."""

    def H(x, tau):
        xs = tuple(v[0] for v in K.vertices(x))
        ts = tuple(tau.base[s] for s in tau.surj)
        return _nerve_simplex(tuple(max(a, b) for a, b in zip(xs, ts)))

    return SimplicialHomotopy.from_product(K, H)


def test_homotopy_check_on_contraction():
    K = nerve(ordinal(1), 3)
    h = _contraction(K)
    simp = {m: K.simplices(m) for m in range(3)}

    def const(x):
        return EZ((1,), (0,) * (x.dim + 1))

    rep = homotopy_check(h, lambda x: x, const, simp, K, K)
    assert rep.ok, rep.summary()
    # swapping the endpoints must be reported
    bad = homotopy_check(h, const, lambda x: x, simp, K, K)
    assert not bad.ok
    assert {"endpoint-f", "endpoint-g"} & bad.failed_checks()


def test_homotopy_check_locates_single_perturbation():
    K = nerve(ordinal(1), 3)
    h = _contraction(K)
    simp = {m: K.simplices(m) for m in range(3)}
    target = simp[1][1]

    def h2(j, x):
        return EZ((0,), (0,) * (x.dim + 2)) if (j, x) == (0, target) else h(j, x)

    rep = homotopy_check(h2, lambda x: x, lambda x: EZ((1,), (0,) * (x.dim + 1)), simp, K, K)
    assert not rep.ok
    assert any(target in f.where for f in rep.failures if isinstance(f.where, tuple))
