"""Ex by the hom formula, Ex^2 o N2, generating inclusions and SDR witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ideals import SkewImmersionCertificate, distortion_to_sdr
from .nlax import N2Ops, enumerate_simplices, n2
from .poset import Poset, PosetMap, ordinal
from .report import Report
from .sset import (SimplicialMap, SimplicialSet, basic_complex, face_poset, from_concrete,
                   hom_enumerate, homotopy_check, nerve_map, sd, sd_map)
from .twocat import ChainTwoCategory, TwoFunctor


@lru_cache(maxsize=None)
def sd_simplex(n: int) -> SimplicialSet:
    return sd(basic_complex("standard", n))


def _delta(n: int, theta: tuple) -> SimplicialMap:
    """The map Delta[len(theta)-1] -> Delta[n] given by a monotone list of vertices."""
    m = len(theta) - 1
    g = PosetMap(ordinal(m), ordinal(n), dict(enumerate(theta)))
    return nerve_map(g, basic_complex("standard", m), basic_complex("standard", n))


@lru_cache(maxsize=None)
def sd_coface(n: int, i: int) -> SimplicialMap:
    """Sd of the i-th coface Delta[n-1] -> Delta[n]."""
    d = _delta(n, tuple(p for p in range(n + 1) if p != i))
    return sd_map(d, sd_simplex(n - 1), sd_simplex(n))


@lru_cache(maxsize=None)
def sd_codegeneracy(n: int, i: int) -> SimplicialMap:
    """Sd of the i-th codegeneracy Delta[n+1] -> Delta[n]."""
    s = _delta(n, tuple(p if p <= i else p - 1 for p in range(n + 2)))
    return sd_map(s, sd_simplex(n + 1), sd_simplex(n))


@dataclass(frozen=True)
class ExSimplex:
    """A map Sd Delta[n] -> K, stored as its frozen assignment."""

    n: int
    assignment: frozenset

    def as_map(self, K: SimplicialSet) -> SimplicialMap:
        return SimplicialMap(sd_simplex(self.n), K, dict(self.assignment))


def ex(K: SimplicialSet, cap: int, budget: int | None = None) -> SimplicialSet:
    """Ex(K) up to cap; its n-simplices are the maps Sd Delta[n] -> K."""
    if K.dim_cap < cap:
        raise ValueError(f"K is only known up to degree {K.dim_cap}")

    levels = {}

    def simplices(m):
        if m not in levels:
            maps = hom_enumerate(sd_simplex(m), K, cap=m, budget=budget)
            levels[m] = [ExSimplex(m, frozenset(f.assignment.items())) for f in maps]
        return levels[m]

    def face(x, i):
        g = x.as_map(K).compose(sd_coface(x.n, i))
        return ExSimplex(x.n - 1, frozenset(g.assignment.items()))

    def degen(x, i):
        g = x.as_map(K).compose(sd_codegeneracy(x.n, i))
        return ExSimplex(x.n + 1, frozenset(g.assignment.items()))

    return from_concrete(cap, simplices, face, degen, f"Ex({K.name})")


def ex_map(f: SimplicialMap, EK: SimplicialSet, EL: SimplicialSet) -> SimplicialMap:
    """Ex on maps: postcomposition."""
    asg = {}
    for t, m in EK.dims.items():
        g = f.compose(t.as_map(f.source))
        y = ExSimplex(m, frozenset(g.assignment.items()))
        asg[t] = EL.ez_of[y]
    return SimplicialMap(EK, EL, asg)


def ex2(K: SimplicialSet, cap: int, budget: int | None = None) -> SimplicialSet:
    return ex(ex(K, cap, budget), cap, budget)


def ex2_n2(A, cap: int = 2, budget: int | None = None) -> SimplicialSet:
    """(Ex^2 o N2)(A) up to cap."""
    return ex2(n2(A, cap, budget), cap, budget)


# -- generating inclusions ------------------------------------------------------------

@dataclass
class GeneratingInclusion:
    """C2 Sd^2 of a boundary or horn inclusion, as an inclusion of chain 2-categories."""

    kind: str
    n: int
    k: int | None
    small: ChainTwoCategory
    big: ChainTwoCategory

    def inclusion(self) -> TwoFunctor:
        return TwoFunctor.inclusion(self.small, self.big)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "k": self.k,
            "small": self.small.to_json(),
            "big": self.big.to_json(),
        }


def _sd2_poset(K: SimplicialSet) -> Poset:
    """The poset whose nerve is Sd^2 K."""
    return face_poset(sd(K))


def generating_sets(n: int, k: int | None = None) -> GeneratingInclusion:
    """Boundary inclusion when k is None, horn inclusion otherwise."""
    if k is None:
        small, kind = basic_complex("boundary", n), "boundary"
    else:
        small, kind = basic_complex("horn", n, k), "horn"
    big = basic_complex("standard", n)
    Ps, Pb = _sd2_poset(small), _sd2_poset(big)
    if not set(Ps.elements) <= set(Pb.elements):
        raise AssertionError("subdivided subcomplex is not a subposet")
    return GeneratingInclusion(kind, n, k,
                               ChainTwoCategory(Ps, f"C2Sd2({small.name})"),
                               ChainTwoCategory(Pb, f"C2Sd2({big.name})"))


# -- strong deformation retraction witnesses ----------------------------------------

def sdr_witness_check(cert: SkewImmersionCertificate, cap: int,
                      budget: int | None = None) -> Report:
    """The homotopy from N2(J R) to id on N2(W) induced by the distortion.

    Also checks that it is constant on N2(A) and that R J = id on A.
    """
    rep = Report("SDR witness")
    W, A = cert.W, cert.A
    h, f, g = distortion_to_sdr(cert.eps)
    simp = enumerate_simplices(W, cap, budget)
    ops = N2Ops(W)
    rep.merge(homotopy_check(h, f, g, simp, ops, ops), "homotopy:")
    JR = cert.eps.F
    for x in W.objects():
        rep.tick("endpoint functor is J R", JR.obj(x) == cert.R.obj(x), x)
    for x in A.objects():
        rep.tick("R J = id", cert.R.obj(x) == x, x)
    for f1 in A.all_arrows():
        rep.tick("R J = id", cert.R.arr(f1) == f1, f1)
    for a in A.all_cells():
        rep.tick("R J = id", cert.R.cell(a) == a, a)
    simpA = enumerate_simplices(A, cap, budget)
    for n, xs in simpA.items():
        for S in xs:
            for j in range(n + 1):
                rep.tick("constant on N2(A)", h(j, S) == ops.degen(j, S), (n, j, S))
    rep.notes.append("W simplices per degree: " + str([len(simp[m]) for m in sorted(simp)]))
    return rep
