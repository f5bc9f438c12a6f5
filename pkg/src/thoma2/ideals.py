"""Ideals, characteristic maps, distortions and skew-immersion certificates.

A left ideal is closed under arrows landing in it, a right ideal under arrows
leaving it. A distortion ``eps : F ~> G`` between 2-functors A -> B consists of

* ``eps_f : F X -> G Y`` for every ``f : X -> Y``,
* ``eps_a : eps_f => eps_f'`` for every ``a : f => f'``,
* ``eps^L_{f,g} : eps_g o F f => eps_{g o f}`` and
  ``eps^R_{f,g} : G g o eps_f => eps_{g o f}``,

and is the same thing as a normal lax functor ``A x I -> B`` restricting to F on
the L end and to G on the R end.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .nlax import NerveSimplex, NormalLaxFunctor, N2Ops, SimplexView, _pairs, _triples
from .poset import (Poset, PosetMap, chain_poset, collar, collar_retraction, face_chain,
                    from_jsonable, full_chain, ordinal, to_jsonable)
from .report import Report
from .sset import SimplicialHomotopy
from .twocat import (T_ARROW, CellError, ChainTwoCategory, FullSub, Product, TwoCategory,
                     TwoFunctor, interval)


class NotAnIdeal(ValueError):
    pass


INTERVAL = interval()
SIDES = ("L", "R")


def _other(side):
    return "R" if side == "L" else "L"


def toggle(x):
    """The involution of the interval swapping its ends."""
    return {"L": "R", "R": "L"}[x]


# -- ideals ---------------------------------------------------------------------

def _is_object(B: TwoCategory, x) -> bool:
    try:
        return B.has_object(x)
    except TypeError:  # unhashable, so certainly not an object token
        return False


def _normalize_sub(B: TwoCategory, sub):
    """sub is an object set, or (objects, arrows, cells) for a non-full candidate."""
    if isinstance(sub, tuple) and len(sub) == 3 and not _is_object(B, sub):
        objs, arrs, cells = (set(s) for s in sub)
        return objs, arrs, cells
    return set(sub), None, None


def ideal_check(B: TwoCategory, sub, side: str, level: str = "2cat"):
    """(True, None) or (False, counterexample) for A = sub as a side-ideal of B.

    At level "cat" only objects and arrows are examined. At level "2cat" an
    explicitly listed sub-structure must also be full and locally full.
    """
    if side not in SIDES:
        raise ValueError("side must be 'L' or 'R'")
    objs, arrs, cells = _normalize_sub(B, sub)
    for x in objs:
        if not B.has_object(x):
            raise NotAnIdeal(f"{x!r} is not an object of B")
    for x in B.objects():
        for y in B.objects():
            inside = (y in objs) if side == "L" else (x in objs)
            for f in B.arrows(x, y):
                if inside and not (x in objs and y in objs):
                    return False, ("arrow", f)
                if arrs is not None and x in objs and y in objs and f not in arrs:
                    return False, ("not full", f)
    if level == "2cat" and cells is not None:
        for f in arrs:
            for g in arrs:
                for a in B.cells(f, g):
                    if a not in cells:
                        return False, ("not locally full", a)
    return True, None


def characteristic(B: TwoCategory, sub, side: str) -> TwoFunctor:
    """The 2-functor B -> I classifying the side-ideal A."""
    ok, bad = ideal_check(B, sub, side)
    if not ok:
        raise NotAnIdeal(f"not a {side}-ideal: {bad!r}")
    objs, _, _ = _normalize_sub(B, sub)
    inside, outside = side, _other(side)

    def obj(x):
        return inside if x in objs else outside

    def arr(f):
        return (obj(B.src(f)), obj(B.tgt(f)))

    def cell(a):
        h = arr(B.dom(a))
        return (h, h)

    return TwoFunctor(B, INTERVAL, obj, arr, cell, f"chi_{side}")


def pullback_of_end(chi: TwoFunctor, end: str) -> set:
    """Objects of the full sub-2-category chi^*(end)."""
    return {x for x in chi.source.objects() if chi.obj(x) == end}


def sieve_check(P: Poset, subsets: Iterable) -> Report:
    """For chain 2-categories: down-closed iff left ideal, up-closed iff right ideal.

    Each ideal found also gets its characteristic 2-functor validated, and the
    preimage of the inside end is compared with the subset.
    """
    from .poset import is_down_closed, is_up_closed

    B = ChainTwoCategory(P)
    rep = Report(f"sieve condition on {P!r}"[:80])
    for S in subsets:
        S = frozenset(S)
        for side, closed in (("L", is_down_closed(P, S)), ("R", is_up_closed(P, S))):
            ok, bad = ideal_check(B, S, side)
            rep.tick(f"{side}-ideal iff closed", ok == closed, (side, sorted(S, key=repr)),
                     f"ideal={ok} closed={closed} witness={bad!r}")
            if ok:
                chi = characteristic(B, S, side)
                rep.merge(chi.validate(), f"chi_{side}:")
                rep.tick("preimage of the end", pullback_of_end(chi, side) == set(S), side)
    return rep


# -- distortions -------------------------------------------------------------

class Distortion:
    """A distortion F ~> G given by four component maps."""

    def __init__(self, F: TwoFunctor, G: TwoFunctor, comp1: Callable, comp2: Callable,
                 left: Callable, right: Callable, name: str = "eps"):
        if F.source is not G.source and F.source.objects() != G.source.objects():
            raise ValueError("F and G must share a source")
        self.F, self.G = F, G
        self.source, self.target = F.source, F.target
        self.comp1, self.comp2, self.left, self.right = comp1, comp2, left, right
        self.name = name

    # derived accessors for identity arguments
    def at(self, X):
        return self.comp1(self.source.id1(X))

    def left_at(self, X, u):
        return self.left(self.source.id1(X), u)

    def left_to(self, u, Y):
        return self.left(u, self.source.id1(Y))

    def right_at(self, X, u):
        return self.right(self.source.id1(X), u)

    def right_to(self, u, Y):
        return self.right(u, self.source.id1(Y))

    @classmethod
    def thin(cls, F: TwoFunctor, G: TwoFunctor, comp1: Callable, name: str = "eps"):
        """In a locally thin target the 2-cell components are forced (or absent)."""
        A, B = F.source, F.target

        def comp2(a):
            return B.cell(comp1(A.dom(a)), comp1(A.cod(a)))

        def left(f, g):
            return B.cell(B.comp(comp1(g), F.arr(f)), comp1(A.comp(g, f)))

        def right(f, g):
            return B.cell(B.comp(G.arr(g), comp1(f)), comp1(A.comp(g, f)))

        return cls(F, G, comp1, comp2, left, right, name)

    @classmethod
    def identity(cls, F: TwoFunctor) -> "Distortion":
        B = F.target

        def unit(f, g):
            return B.id2(F.arr(F.source.comp(g, f)))

        return cls(F, F, F.arr, F.cell, unit, unit, f"id_{F.name}")

    def tabulate(self) -> "Distortion":
        """Freeze every component into dictionaries (used for perturbation tests)."""
        A = self.source
        arrows = A.all_arrows()
        c1 = {f: self.comp1(f) for f in arrows}
        c2 = {a: self.comp2(a) for a in A.all_cells()}
        L, R = {}, {}
        for f in arrows:
            for g in A.arrows_from(A.tgt(f)):
                L[(f, g)] = self.left(f, g)
                R[(f, g)] = self.right(f, g)
        return Distortion(self.F, self.G, c1.__getitem__, c2.__getitem__,
                          lambda f, g: L[(f, g)], lambda f, g: R[(f, g)], self.name)

    def to_json(self) -> dict:
        A = self.source
        j = to_jsonable
        arrows = A.all_arrows()
        return {
            "comp1": [[j(f), j(self.comp1(f))] for f in arrows],
            "comp2": [[j(a), j(self.comp2(a))] for a in A.all_cells()],
            "left": [[j(f), j(g), j(self.left(f, g))]
                     for f in arrows for g in A.arrows_from(A.tgt(f))],
            "right": [[j(f), j(g), j(self.right(f, g))]
                      for f in arrows for g in A.arrows_from(A.tgt(f))],
        }


def _composable(A: TwoCategory, k: int) -> list:
    """All composable k-tuples of 1-cells (f1 first)."""
    out = [(f,) for f in A.all_arrows()]
    for _ in range(k - 1):
        out = [t + (g,) for t in out for g in A.arrows_from(A.tgt(t[-1]))]
    return out


def validate_distortion(d: Distortion, sample: int | None = None, seed: int = 0) -> Report:
    """Types, normality, lf1, lf2, n1, n2, c1, c2, c3 and their identity-argument forms.

    With ``sample`` set, the pair and triple families are checked on that many
    seeded random instances instead of exhaustively.
    """
    A, B, F, G = d.source, d.target, d.F, d.G
    rep = Report(f"distortion {d.name}")
    rng = random.Random(seed)

    def pick(xs):
        if sample is None or len(xs) <= sample:
            return xs
        return rng.sample(xs, sample)

    def run(check, where, thunk):
        try:
            ok = bool(thunk())
        except (CellError, KeyError, IndexError, TypeError, AttributeError) as e:
            rep.tick(check, False, where, f"undefined: {e}")
            return False
        return rep.tick(check, ok, where)

    arrows = A.all_arrows()
    cells = A.all_cells()
    cells_from: dict = {}
    for a in cells:
        cells_from.setdefault(A.dom(a), []).append(a)

    for f in arrows:
        run("type-1cell", f, lambda: d.comp1(f) in
            B.arrows(F.obj(A.src(f)), G.obj(A.tgt(f))))
    for a in cells:
        run("type-2cell", a, lambda: d.comp2(a) in
            B.cells(d.comp1(A.dom(a)), d.comp1(A.cod(a))))
        run("lf2", a, lambda: d.comp2(A.id2(A.dom(a))) == B.id2(d.comp1(A.dom(a))))
        for b in cells_from.get(A.cod(a), []):
            run("lf1", (b, a), lambda: d.comp2(A.vcomp(b, a)) == B.vcomp(d.comp2(b), d.comp2(a)))

    pairs = pick(_composable(A, 2))
    for f, g in pairs:
        gf = A.comp(g, f)
        run("type-left", (f, g), lambda: d.left(f, g) in
            B.cells(B.comp(d.comp1(g), F.arr(f)), d.comp1(gf)))
        run("type-right", (f, g), lambda: d.right(f, g) in
            B.cells(B.comp(G.arr(g), d.comp1(f)), d.comp1(gf)))
    for f in arrows:
        x, y = A.src(f), A.tgt(f)
        run("normal", f, lambda: d.left(A.id1(x), f) == B.id2(d.comp1(f)))
        run("normal", f, lambda: d.right(f, A.id1(y)) == B.id2(d.comp1(f)))

    # n1, n2 over horizontally composable pairs phi : f => f', theta : g => g'
    hpairs = []
    for f, g in pairs:
        for phi in cells_from.get(f, []):
            for theta in cells_from.get(g, []):
                hpairs.append((phi, theta))
    for phi, theta in pick(hpairs):
        f, f2 = A.dom(phi), A.cod(phi)
        g, g2 = A.dom(theta), A.cod(theta)
        tp = A.hcomp(theta, phi)
        run("n1", (phi, theta), lambda: B.vcomp(d.right(f2, g2), B.hcomp(G.cell(theta), d.comp2(phi)))
            == B.vcomp(d.comp2(tp), d.right(f, g)))
        run("n2", (phi, theta), lambda: B.vcomp(d.left(f2, g2), B.hcomp(d.comp2(theta), F.cell(phi)))
            == B.vcomp(d.comp2(tp), d.left(f, g)))

    for f, g, h in pick(_composable(A, 3)):
        gf, hg = A.comp(g, f), A.comp(h, g)
        run("c1", (f, g, h), lambda: B.vcomp(d.right(gf, h), B.wpost(G.arr(h), d.right(f, g)))
            == d.right(f, hg))
        run("c2", (f, g, h), lambda: B.vcomp(d.left(f, hg), B.wpre(d.left(g, h), F.arr(f)))
            == d.left(gf, h))
        run("c3", (f, g, h), lambda: B.vcomp(d.right(gf, h), B.wpost(G.arr(h), d.left(f, g)))
            == B.vcomp(d.left(f, hg), B.wpre(d.right(g, h), F.arr(f))))

    # identity-argument forms
    for theta in pick(cells):
        u, v = A.dom(theta), A.cod(theta)
        X, Y = A.src(u), A.tgt(u)
        run("n1-id", theta, lambda: B.vcomp(d.right_at(X, v), B.wpre(G.cell(theta), d.at(X)))
            == B.vcomp(d.comp2(theta), d.right_at(X, u)))
        run("n2-id", theta, lambda: B.vcomp(d.left_at(X, v), d.comp2(theta))
            == B.vcomp(d.comp2(theta), d.left_at(X, u)))
    for u in pick(arrows):
        X, Y = A.src(u), A.tgt(u)
        run("c1-id", u, lambda: B.vcomp(d.right_to(u, Y), d.right_at(X, u)) == d.right_at(X, u))
        run("c2-id", u, lambda: B.vcomp(d.left_at(X, u), d.left_to(u, Y)) == d.left_to(u, Y))
        run("c3-id", u, lambda: B.vcomp(d.right_to(u, Y), d.left_at(X, u))
            == B.vcomp(d.left_at(X, u), d.right_to(u, Y)))
    return rep


def distortion_to_nlax(d: Distortion) -> NormalLaxFunctor:
    """The normal lax functor A x I -> B encoding d."""
    A, B, F, G = d.source, d.target, d.F, d.G
    AI = Product(A, INTERVAL, f"{A.name}xI")

    def obj(p):
        X, nu = p
        return F.obj(X) if nu == "L" else G.obj(X)

    def arr(p):
        f, u = p
        if u == T_ARROW:
            return d.comp1(f)
        return F.arr(f) if u[0] == "L" else G.arr(f)

    def cell(p):
        a, w = p
        u = w[0]
        if u == T_ARROW:
            return d.comp2(a)
        return F.cell(a) if u[0] == "L" else G.cell(a)

    def gamma(p, q):
        (f, u), (g, v) = p, q
        if u == ("L", "L") and v == T_ARROW:
            return d.left(f, g)
        if u == T_ARROW and v == ("R", "R"):
            return d.right(f, g)
        return B.id2(arr((A.comp(g, f), INTERVAL.comp(v, u))))

    return NormalLaxFunctor(AI, B, obj, arr, cell, gamma, f"{d.name}_lax")


def nlax_to_distortion(E: NormalLaxFunctor, A: TwoCategory) -> Distortion:
    """Inverse of distortion_to_nlax; the restrictions to both ends must be strict."""
    B = E.target
    for nu in SIDES:
        idn = (nu, nu)
        for f, g in _composable(A, 2):
            gam = E.gamma((f, idn), (g, idn))
            if gam != B.id2(E.arr((A.comp(g, f), idn))):
                raise ValueError(f"restriction to {nu} is not strict at {(f, g)!r}")

    def end(nu):
        idn = (nu, nu)
        return TwoFunctor(A, B, lambda X: E.obj((X, nu)), lambda f: E.arr((f, idn)),
                          lambda a: E.cell((a, (idn, idn))), nu)

    return Distortion(
        end("L"), end("R"),
        lambda f: E.arr((f, T_ARROW)),
        lambda a: E.cell((a, (T_ARROW, T_ARROW))),
        lambda f, g: E.gamma((f, ("L", "L")), (g, T_ARROW)),
        lambda f, g: E.gamma((f, T_ARROW), (g, ("R", "R"))),
        E.name,
    )


def whisker_distortion(d: Distortion, side: str, H: TwoFunctor) -> Distortion:
    """``side='post'``: H o d : HF ~> HG.  ``side='pre'``: d o H : FH ~> GH."""
    if side == "post":
        return Distortion(
            H.compose(d.F), H.compose(d.G),
            lambda f: H.arr(d.comp1(f)), lambda a: H.cell(d.comp2(a)),
            lambda f, g: H.cell(d.left(f, g)), lambda f, g: H.cell(d.right(f, g)),
            f"{H.name}{d.name}",
        )
    if side == "pre":
        return Distortion(
            d.F.compose(H), d.G.compose(H),
            lambda f: d.comp1(H.arr(f)), lambda a: d.comp2(H.cell(a)),
            lambda f, g: d.left(H.arr(f), H.arr(g)), lambda f, g: d.right(H.arr(f), H.arr(g)),
            f"{d.name}{H.name}",
        )
    raise ValueError("side must be 'pre' or 'post'")


# -- skew immersions ---------------------------------------------------------

@dataclass
class SkewImmersionCertificate:
    B: TwoCategory
    A_objs: frozenset
    W_objs: frozenset
    R: TwoFunctor  # W -> A
    eps: Distortion  # J R ~> id_W, as 2-functors W -> W
    A: TwoCategory = None
    W: TwoCategory = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.A is None:
            self.A = FullSub(self.B, self.A_objs, "A")
        if self.W is None:
            self.W = FullSub(self.B, self.W_objs, "W")

    def to_json(self) -> dict:
        j = to_jsonable
        W = self.W
        return {
            "B": self.B.to_json() if hasattr(self.B, "to_json") else self.B.name,
            "A": sorted((j(x) for x in self.A_objs), key=repr),
            "W": sorted((j(x) for x in self.W_objs), key=repr),
            "retraction": {
                "objects": [[j(x), j(self.R.obj(x))] for x in W.objects()],
                "arrows": [[j(f), j(self.R.arr(f))] for f in W.all_arrows()],
            },
            "distortion": self.eps.to_json(),
        }


def verify_skew_immersion(cert: SkewImmersionCertificate, sample: int | None = None,
                          seed: int = 0) -> Report:
    B, A, W, R, eps = cert.B, cert.A, cert.W, cert.R, cert.eps
    rep = Report("skew immersion")
    ok, bad = ideal_check(B, cert.A_objs, "L")
    rep.tick("left-ideal", ok, bad)
    ok, bad = ideal_check(B, cert.W_objs, "R")
    rep.tick("right-ideal", ok, bad)
    rep.tick("A-in-W", set(cert.A_objs) <= set(cert.W_objs),
             sorted(set(cert.A_objs) - set(cert.W_objs), key=repr)[:3])
    rep.merge(R.validate(), "retraction-functor:")
    for x in A.objects():
        rep.tick("retraction", R.obj(x) == x, x)
    for f in A.all_arrows():
        rep.tick("retraction", R.arr(f) == f, f)
    for a in A.all_cells():
        rep.tick("retraction", R.cell(a) == a, a)
    # eps J = id_J, on every component kind
    for f in A.all_arrows():
        rep.tick("epsJ-1cell", eps.comp1(f) == f, f)
    for a in A.all_cells():
        rep.tick("epsJ-2cell", eps.comp2(a) == a, a)
    for f, g in _composable(A, 2):
        idc = B.id2(B.comp(g, f))
        rep.tick("epsJ-left", eps.left(f, g) == idc, (f, g))
        rep.tick("epsJ-right", eps.right(f, g) == idc, (f, g))
    rep.merge(validate_distortion(eps, sample, seed), "distortion:")
    return rep


def _dedup(xs):
    return tuple(x for i, x in enumerate(xs) if i == 0 or xs[i - 1] != x)


def horn_skew_immersion(n: int, k: int) -> SkewImmersionCertificate:
    """The collar certificate for f(H_{k,n}) inside f^2([n])."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"horn index out of range: n={n}, k={k}")
    P = chain_poset(ordinal(n))
    H, C = collar(P, full_chain(n), face_chain(n, k))
    r = collar_retraction(P, full_chain(n), face_chain(n, k))
    B = ChainTwoCategory(chain_poset(P), f"C2N(f2[{n}])")
    A_objs, W_objs = frozenset(H.elements), frozenset(C.elements)
    A = FullSub(B, A_objs, "A")
    W = FullSub(B, W_objs, "W")

    def R_arr(f):
        return _dedup(tuple(r(x) for x in f))

    R = TwoFunctor(W, A, r, R_arr, lambda a: (R_arr(a[0]), R_arr(a[1])), "R")
    JR = TwoFunctor(W, W, r, R_arr, lambda a: (R_arr(a[0]), R_arr(a[1])), "JR")
    idW = TwoFunctor.identity(W)

    def comp1(f):
        # r(x_0), then the members of f lying in A (an initial segment), then the end of f
        head = tuple(x for x in f if x in A_objs)
        return _dedup((r(f[0]),) + head + (f[-1],))

    eps = Distortion.thin(JR, idW, comp1, "collar")
    return SkewImmersionCertificate(B, A_objs, W_objs, R, eps, A, W,
                                    {"n": n, "k": k, "retraction": r})


# -- from a distortion to a simplicial homotopy -------------------------------

def pair_simplex(S: NerveSimplex, ends: tuple, A: TwoCategory) -> NerveSimplex:
    """The nerve simplex of A x I with components S and the monotone word ``ends``."""
    v = SimplexView(A, S)
    m = S.n

    def iar(p, q):
        return (ends[p], ends[q])

    arrows = tuple((v.arr(p, q), iar(p, q)) for p, q in _pairs(m))
    gammas = tuple((v.gam(p, q, r), (iar(p, r), iar(p, r))) for p, q, r in _triples(m))
    return NerveSimplex(m, tuple(zip(S.objs, ends)), arrows, gammas)


def distortion_to_sdr(d: Distortion):
    """The simplicial homotopy from N2(F) to N2(G) induced by a distortion.

    Returns (h, f, g) as functions on nerve simplices of the source of d.
    """
    E = distortion_to_nlax(d)
    A = d.source
    ops = N2Ops(A)

    def H(S, ends):
        return E.on_simplex(pair_simplex(S, ends, A))

    def h(j, S):
        # tau_j is L on 0..j and R after; the L end is the F side
        ends = tuple("L" if p <= j else "R" for p in range(S.n + 2))
        return H(ops.degen(j, S), ends)

    Fl = NormalLaxFunctor.of_functor(d.F)
    Gl = NormalLaxFunctor.of_functor(d.G)
    return SimplicialHomotopy(h), Fl.on_simplex, Gl.on_simplex
