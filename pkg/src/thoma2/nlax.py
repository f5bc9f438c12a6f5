"""Normal lax functors, the 2-nerve and the unit comparison on poset nerves.

A simplex of the 2-nerve is a normal lax functor out of the ordinal [n]: objects
F(0..n), arrows F(i, j) for i < j and structural 2-cells
``gamma_ijk : F(j, k) o F(i, j) => F(i, k)`` subject to the cocycle condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .poset import Poset
from .report import BudgetExceeded, Report, cell_budget
from .sset import SimplicialMap, SimplicialSet, from_concrete, nerve
from .twocat import CellError, ChainTwoCategory, TwoCategory, TwoFunctor


@dataclass(frozen=True)
class NerveSimplex:
    n: int
    objs: tuple
    arrows: tuple  # F(i, j) for i < j, in lexicographic order of (i, j)
    gammas: tuple  # gamma_ijk for i < j < k, in lexicographic order

    def __repr__(self):
        return f"NerveSimplex(n={self.n}, objs={self.objs}, arrows={self.arrows})"

    def to_json(self) -> dict:
        from .poset import to_jsonable

        return {
            "n": self.n,
            "objects": [to_jsonable(x) for x in self.objs],
            "arrows": [to_jsonable(f) for f in self.arrows],
            "gammas": [to_jsonable(g) for g in self.gammas],
        }


def pair_index(n: int) -> dict:
    return {p: i for i, p in enumerate(itertools.combinations(range(n + 1), 2))}


def triple_index(n: int) -> dict:
    return {t: i for i, t in enumerate(itertools.combinations(range(n + 1), 3))}


_PAIRS: dict = {}
_TRIPLES: dict = {}


def _pairs(n):
    if n not in _PAIRS:
        _PAIRS[n] = pair_index(n)
    return _PAIRS[n]


def _triples(n):
    if n not in _TRIPLES:
        _TRIPLES[n] = triple_index(n)
    return _TRIPLES[n]


class SimplexView:
    """Read access to a NerveSimplex with identities filled in for repeated indices."""

    def __init__(self, A: TwoCategory, S: NerveSimplex):
        self.A, self.S = A, S

    def obj(self, i):
        return self.S.objs[i]

    def arr(self, i, j):
        if i == j:
            return self.A.id1(self.S.objs[i])
        return self.S.arrows[_pairs(self.S.n)[(i, j)]]

    def gam(self, i, j, k):
        if i == j or j == k:
            return self.A.id2(self.arr(i, k))
        return self.S.gammas[_triples(self.S.n)[(i, j, k)]]


def precompose(A: TwoCategory, S: NerveSimplex, theta: tuple) -> NerveSimplex:
    """S restricted along a monotone map theta : [m] -> [n]."""
    v = SimplexView(A, S)
    m = len(theta) - 1
    return NerveSimplex(
        m,
        tuple(S.objs[t] for t in theta),
        tuple(v.arr(theta[i], theta[j]) for i, j in _pairs(m)),
        tuple(v.gam(theta[i], theta[j], theta[k]) for i, j, k in _triples(m)),
    )


class N2Ops:
    """Face and degeneracy operators on nerve simplices of A."""

    def __init__(self, A: TwoCategory):
        self.A = A

    def face(self, i, S):
        return precompose(self.A, S, tuple(p for p in range(S.n + 1) if p != i))

    def degen(self, i, S):
        return precompose(self.A, S, tuple(p if p <= i else p - 1 for p in range(S.n + 2)))


def cocycle_holds(A: TwoCategory, v: SimplexView, i, j, k, l) -> bool:
    lhs = A.vcomp(v.gam(i, k, l), A.wpost(v.arr(k, l), v.gam(i, j, k)))
    rhs = A.vcomp(v.gam(i, j, l), A.wpre(v.gam(j, k, l), v.arr(i, j)))
    return lhs == rhs


def validate_simplex(A: TwoCategory, S: NerveSimplex) -> Report:
    rep = Report("nerve simplex")
    v = SimplexView(A, S)
    for i, j in _pairs(S.n):
        rep.tick("arrow-type", v.arr(i, j) in A.arrows(S.objs[i], S.objs[j]), (i, j))
    for i, j, k in _triples(S.n):
        ok = v.gam(i, j, k) in A.cells(A.comp(v.arr(j, k), v.arr(i, j)), v.arr(i, k))
        rep.tick("gamma-type", ok, (i, j, k))
    if rep.ok:
        for q in itertools.combinations(range(S.n + 1), 4):
            rep.tick("cocycle", cocycle_holds(A, v, *q), q)
    return rep


def point_simplex(x) -> NerveSimplex:
    return NerveSimplex(0, (x,), (), ())


def enumerate_simplices(A: TwoCategory, cap: int, budget: int | None = None) -> dict:
    """All nerve simplices of A in degrees 0..cap, grown from their d_top faces."""
    limit = cell_budget(budget)
    total = 0
    out = {0: [point_simplex(x) for x in A.objects()]}
    objs = A.objects()
    for m in range(1, cap + 1):
        level = []
        pairs, triples = _pairs(m), _triples(m)
        new_tr = [t for t in triples if t[2] == m]
        for S in out[m - 1]:
            v = SimplexView(A, S)
            for y in objs:
                homs = [A.arrows(S.objs[i], y) for i in range(m)]
                if any(not h for h in homs):
                    continue
                for fs in itertools.product(*homs):
                    # gamma_{i,j,m} : f_j o F(i,j) => f_i
                    opts = []
                    for i, j, _ in new_tr:
                        cs = A.cells(A.comp(fs[j], v.arr(i, j)), fs[i])
                        if not cs:
                            break
                        opts.append(cs)
                    else:
                        for gs in itertools.product(*opts):
                            arrows = tuple(
                                S.arrows[_pairs(m - 1)[(i, j)]] if j < m else fs[i]
                                for (i, j) in pairs
                            )
                            gammas = []
                            it = iter(gs)
                            for (i, j, k) in triples:
                                gammas.append(S.gammas[_triples(m - 1)[(i, j, k)]]
                                              if k < m else next(it))
                            T = NerveSimplex(m, S.objs + (y,), arrows, tuple(gammas))
                            tv = SimplexView(A, T)
                            if all(cocycle_holds(A, tv, i, j, k, m)
                                   for i, j, k in itertools.combinations(range(m), 3)):
                                level.append(T)
                                total += 1
                                if total > limit:
                                    raise BudgetExceeded(
                                        f"more than {limit} nerve simplices up to degree {m}")
        out[m] = level
    return out


def n2(A: TwoCategory, cap: int, budget: int | None = None) -> SimplicialSet:
    """The 2-nerve of A up to degree cap."""
    simp = enumerate_simplices(A, cap, budget)
    ops = N2Ops(A)
    K = from_concrete(cap, lambda m: simp[m], lambda c, i: ops.face(i, c),
                      lambda c, i: ops.degen(i, c), f"N2({A.name})")
    K.ops = ops
    K.twocat = A
    return K


def c2_poset(P: Poset) -> ChainTwoCategory:
    """C2 of the nerve of P, realized as the chain model on P."""
    return ChainTwoCategory(P, f"C2N({len(P)})")


def eta_simplex(chain: tuple, C: ChainTwoCategory) -> NerveSimplex:
    """The unit on a (possibly repeating) chain x_0 <= ... <= x_m of P."""
    m = len(chain) - 1

    def gen(p, q):
        a, b = chain[p], chain[q]
        return (a,) if a == b else (a, b)

    def dedup(xs):
        return tuple(x for i, x in enumerate(xs) if i == 0 or xs[i - 1] != x)

    return NerveSimplex(
        m,
        tuple(chain),
        tuple(gen(p, q) for p, q in _pairs(m)),
        tuple((dedup((chain[p], chain[q], chain[r])), dedup((chain[p], chain[r])))
              for p, q, r in _triples(m)),
    )


def eta_map(P: Poset, cap: int, budget: int | None = None):
    """(N1(P), N2(C2 N1 P), eta) up to cap."""
    K = nerve(P, cap, "N1(P)")
    C = c2_poset(P)
    N = n2(C, cap, budget)
    asg = {t: N.ez_of[eta_simplex(t, C)] for t in K.dims}
    return K, N, SimplicialMap(K, N, asg)


def eta_check(P: Poset, cap: int, budget: int | None = None) -> Report:
    """Degree-wise bijectivity of the unit N1(P) -> N2(C2 N1 P)."""
    K, N, eta = eta_map(P, cap, budget)
    rep = Report(f"unit on a {len(P)}-element poset")
    rep.merge(eta.validate(), "simplicial:")
    for m in range(cap + 1):
        src, tgt = K.count(m), N.count(m)
        imgs = {eta(x) for x in K.simplices(m)}
        rep.tick("injective", len(imgs) == src, m, f"{src} simplices, {len(imgs)} images")
        rep.tick("surjective", len(imgs) == tgt, m,
                 f"image {len(imgs)} of {tgt} target simplices")
        if len(imgs) < tgt:
            missing = [N.concrete_of[x] for x in N.simplices(m) if x not in imgs][:3]
            rep.notes.append(f"degree {m}: {tgt - len(imgs)} simplices outside the image, "
                             f"e.g. {missing}")
    return rep


# -- lax functors between 2-categories --------------------------------------------

class NormalLaxFunctor:
    """Cell maps plus structural cells ``gamma(f, g) : F g o F f => F(g o f)``."""

    def __init__(self, source: TwoCategory, target: TwoCategory, obj, arr, cell,
                 gamma: Callable | None = None, name: str = ""):
        self.source, self.target = source, target
        self._obj, self._arr, self._cell = obj, arr, cell
        self._gamma = gamma
        self.name = name or "F"

    @staticmethod
    def _ap(m, x):
        return m(x) if callable(m) else m[x]

    def obj(self, x):
        return self._ap(self._obj, x)

    def arr(self, f):
        return self._ap(self._arr, f)

    def cell(self, a):
        return self._ap(self._cell, a)

    def gamma(self, f, g):
        if self._gamma is None:
            return self.target.id2(self.arr(self.source.comp(g, f)))
        return self._gamma(f, g)

    @classmethod
    def of_functor(cls, F: TwoFunctor) -> "NormalLaxFunctor":
        return cls(F.source, F.target, F.obj, F.arr, F.cell, None, F.name)

    @classmethod
    def identity(cls, A: TwoCategory) -> "NormalLaxFunctor":
        return cls(A, A, lambda x: x, lambda f: f, lambda a: a, None, "id")

    def on_simplex(self, S: NerveSimplex) -> NerveSimplex:
        """Postcomposition S |-> self o S."""
        A, B = self.source, self.target
        v = SimplexView(A, S)
        gam = []
        for i, j, k in _triples(S.n):
            f, g = v.arr(i, j), v.arr(j, k)
            gam.append(B.vcomp(self.cell(v.gam(i, j, k)), self.gamma(f, g)))
        return NerveSimplex(S.n, tuple(self.obj(x) for x in S.objs),
                            tuple(self.arr(f) for f in S.arrows), tuple(gam))


def compose_nlax(G: NormalLaxFunctor, F):
    """G after F; F may also be a NerveSimplex."""
    if isinstance(F, NerveSimplex):
        return G.on_simplex(F)
    B = G.target

    def gamma(f, g):
        return B.vcomp(G.cell(F.gamma(f, g)), G.gamma(F.arr(f), F.arr(g)))

    return NormalLaxFunctor(F.source, B, lambda x: G.obj(F.obj(x)),
                            lambda f: G.arr(F.arr(f)), lambda a: G.cell(F.cell(a)),
                            gamma, f"{G.name}{F.name}")


def simplex_functor(A: TwoCategory, S: NerveSimplex) -> NormalLaxFunctor:
    """S as a normal lax functor out of the locally discrete ordinal [n]."""
    from .poset import ordinal
    from .twocat import PosetCategory

    v = SimplexView(A, S)
    src = PosetCategory(ordinal(S.n), f"[{S.n}]")
    return NormalLaxFunctor(
        src, A, lambda i: S.objs[i], lambda f: v.arr(*f),
        lambda a: A.id2(v.arr(*a[0])), lambda f, g: v.gam(f[0], f[1], g[1]), "S",
    )


def validate_nlax(F: NormalLaxFunctor, budget: int | None = None) -> Report:
    """Local functoriality, unit preservation, normality, associativity and naturality."""
    A, B = F.source, F.target
    rep = Report(f"normal lax functor {F.name}")
    limit = cell_budget(budget)
    obs = A.objects()
    hom = {(x, y): A.arrows(x, y) for x in obs for y in obs}
    if sum(len(v) for v in hom.values()) > limit:
        raise BudgetExceeded("source too large")

    def safe(check, where, thunk):
        try:
            return thunk()
        except (CellError, KeyError, IndexError, TypeError) as e:
            rep.tick(check + ":defined", False, where, str(e))
            return None

    for x in obs:
        rep.tick("unit", F.arr(A.id1(x)) == B.id1(F.obj(x)), x)
    for (x, y), fs in hom.items():
        for f in fs:
            Ff = F.arr(f)
            rep.tick("arrow-type", Ff in B.arrows(F.obj(x), F.obj(y)), f)
            rep.tick("local-identity", F.cell(A.id2(f)) == B.id2(Ff), f)
            rep.tick("normal", F.gamma(A.id1(x), f) == B.id2(Ff), (A.id1(x), f))
            rep.tick("normal", F.gamma(f, A.id1(y)) == B.id2(Ff), (f, A.id1(y)))
            for g in fs:
                for a in A.cells(f, g):
                    Fa = F.cell(a)
                    rep.tick("cell-type", Fa in B.cells(Ff, F.arr(g)), a)
                    for h in fs:
                        for b in A.cells(g, h):
                            rep.tick("local-composition",
                                     safe("local-composition", (b, a),
                                          lambda: F.cell(A.vcomp(b, a)) == B.vcomp(F.cell(b), Fa))
                                     is True, (b, a))
    for x, y, z in itertools.product(obs, repeat=3):
        for f in hom[(x, y)]:
            for g in hom[(y, z)]:
                gfc = F.gamma(f, g)
                ok = safe("gamma-type", (f, g), lambda: gfc in B.cells(
                    B.comp(F.arr(g), F.arr(f)), F.arr(A.comp(g, f)))) is True
                rep.tick("gamma-type", ok, (f, g))
                if not ok:
                    continue
                for w in obs:
                    for h in hom[(z, w)]:
                        def assoc():
                            lhs = B.vcomp(F.gamma(A.comp(g, f), h), B.wpost(F.arr(h), gfc))
                            rhs = B.vcomp(F.gamma(f, A.comp(h, g)), B.wpre(F.gamma(g, h), F.arr(f)))
                            return lhs == rhs
                        rep.tick("associativity", safe("associativity", (f, g, h), assoc) is True,
                                 (f, g, h))
                for f2 in hom[(x, y)]:
                    for a in A.cells(f, f2):
                        for g2 in hom[(y, z)]:
                            for b in A.cells(g, g2):
                                def nat():
                                    lhs = B.vcomp(F.gamma(f2, g2), B.hcomp(F.cell(b), F.cell(a)))
                                    rhs = B.vcomp(F.cell(A.hcomp(b, a)), gfc)
                                    return lhs == rhs
                                rep.tick("naturality", safe("naturality", (b, a), nat) is True,
                                         (b, a))
    return rep


def n2_tilde(G: NormalLaxFunctor, NA: SimplicialSet, NB: SimplicialSet) -> SimplicialMap:
    """The simplicial map N2(A) -> N2(B) given by postcomposition with G."""
    asg = {}
    for t, m in NA.dims.items():
        img = G.on_simplex(t)
        if img not in NB.ez_of:
            raise ValueError(f"image of {t!r} is not a simplex of the target nerve")
        asg[t] = NB.ez_of[img]
    return SimplicialMap(NA, NB, asg)
