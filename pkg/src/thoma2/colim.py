"""Pushouts of 2-categories along left-ideal inclusions, and the nerve pushout check.

Only two shapes are supported: the quotient B/A of a locally thin B by a left
ideal A, and the pushout of a left-ideal inclusion A -> B (for instance a skew
immersion) along a 2-functor A -> A' into a locally thin A'. Both are computed
by normal forms:

* objects are ``("a", x')`` for x' in A' and ``("b", y)`` for y outside A;
* a 1-cell ``x' -> y`` is a class of words ``<a' ; b>`` with ``a' : x' -> F z``
  and ``b : z -> y`` leaving A, modulo ``<a' ; b o a> ~ <F a o a' ; b>``;
* 2-cells between such words form the preorder generated by pairs of 2-cells
  ``(a' => a'', b => b')``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .ideals import (Distortion, SkewImmersionCertificate, ideal_check, verify_skew_immersion)
from .nlax import NormalLaxFunctor, n2
from .report import BudgetExceeded, Report, cell_budget
from .sset import SimplicialMap, pushout_mediator, pushout_sset
from .twocat import (CellError, FullSub, TwoCategory, TwoFunctor, check_iso, terminal,
                     two_functors, walking_2cell)


class UnsupportedPushout(ValueError):
    """Raised for pushout shapes outside the two supported ones."""

    def __init__(self, why: str):
        super().__init__(
            f"{why}; supported shapes are (1) the quotient B/A of a locally thin B by a "
            "left ideal A and (2) the pushout of a left-ideal inclusion A -> B (e.g. a "
            "skew immersion) along a 2-functor A -> A' with A' locally thin"
        )


@dataclass(frozen=True)
class CellWord:
    """A normalized horizontal word <a' ; b>: an A'-segment followed by a bridge out of A."""

    kind: str
    entries: tuple  # (("A'", a'), ("B", b))
    src: object
    tgt: object

    @property
    def head(self):
        return self.entries[0][1]

    @property
    def tail(self):
        return self.entries[1][1]

    def __repr__(self):
        return f"<{self.head!r} ; {self.tail!r}>"


class LeftIdealPushout(TwoCategory):
    """A' +_A B for a left ideal A of B and F : A -> A'."""

    def __init__(self, B: TwoCategory, A_objs, Ap: TwoCategory, F: TwoFunctor,
                 name: str = "", budget: int | None = None):
        A_objs = frozenset(A_objs)
        ok, bad = ideal_check(B, A_objs, "L")
        if not ok:
            raise UnsupportedPushout(f"A is not a left ideal of B (witness {bad!r})")
        if not (B.locally_thin and Ap.locally_thin):
            raise UnsupportedPushout("B and A' must be locally thin")
        self.B, self.Ap, self.F = B, Ap, F
        self.A_objs = A_objs
        self.A = FullSub(B, A_objs, "A")
        self.outer = [y for y in B.objects() if y not in A_objs]
        self._outer_set = set(self.outer)
        self.name = name or f"{Ap.name}+{B.name}"
        self.locally_thin = True
        limit = cell_budget(budget)
        self._find: dict = {}
        self._mixed: dict = {}
        self._order: dict = {}
        A = self.A
        a_arrows = A.all_arrows()
        for xp in Ap.objects():
            for y in self.outer:
                elems = [(z, ap, b) for z in A.objects() for ap in Ap.arrows(xp, F.obj(z))
                         for b in B.arrows(z, y)]
                if len(self._find) + len(elems) > limit:
                    raise BudgetExceeded("mixed words exceed the cell budget")
                idx = {e: i for i, e in enumerate(elems)}
                parent = {e: e for e in elems}

                def find(e):
                    while parent[e] != e:
                        parent[e] = parent[parent[e]]
                        e = parent[e]
                    return e

                def union(e1, e2):
                    r1, r2 = find(e1), find(e2)
                    if r1 != r2:
                        if idx[r2] < idx[r1]:
                            r1, r2 = r2, r1
                        parent[r2] = r1

                for a in a_arrows:
                    z, z2 = A.src(a), A.tgt(a)
                    Fa = F.arr(a)
                    for ap in Ap.arrows(xp, F.obj(z)):
                        for b in B.arrows(z2, y):
                            union((z, ap, B.comp(b, a)), (z2, Ap.comp(Fa, ap), b))
                reps = []
                for e in elems:
                    r = find(e)
                    w = CellWord("horizontal1", (("A'", r[1]), ("B", r[2])), xp, y)
                    self._find[e] = w
                    if r == e:
                        reps.append(w)
                self._mixed[(xp, y)] = reps
        self._build_mixed_cells()

    # -- mixed words ----------------------------------------------------------
    def word(self, ap, b) -> CellWord:
        """Normal form of <ap ; b> (ap : x' -> F z in A', b : z -> y out of A)."""
        z = self.B.src(b)
        return self._find[(z, ap, b)]

    def _build_mixed_cells(self):
        Ap, B = self.Ap, self.B
        self._le: dict = {}
        by_hom: dict = {}
        for e, w in self._find.items():
            by_hom.setdefault((w.src, w.tgt), []).append((e, w))
        for (xp, y), reps in self._mixed.items():
            succ = {w: set() for w in reps}
            for (z, ap, b), w in by_hom.get((xp, y), []):
                for ap2 in Ap.arrows(xp, Ap.tgt(ap)):
                    if not Ap.cells(ap, ap2):
                        continue
                    for b2 in B.arrows(z, y):
                        if B.cells(b, b2):
                            succ[w].add(self._find[(z, ap2, b2)])
            # reflexive-transitive closure
            for w in reps:
                seen, stack = {w}, [w]
                while stack:
                    u = stack.pop()
                    for v in succ[u]:
                        if v not in seen:
                            seen.add(v)
                            stack.append(v)
                self._le[w] = seen

    # -- the interface -----------------------------------------------------------
    def objects(self):
        return [("a", x) for x in self.Ap.objects()] + [("b", y) for y in self.outer]

    def has_object(self, p):
        tag, x = p
        return self.Ap.has_object(x) if tag == "a" else x in self._outer_set

    def arrows(self, p, q):
        (s, x), (t, y) = p, q
        if s == "a" and t == "a":
            return [("a", f) for f in self.Ap.arrows(x, y)]
        if s == "b" and t == "b":
            return [("b", f) for f in self.B.arrows(x, y)]
        if s == "a" and t == "b":
            return [("m", w) for w in self._mixed.get((x, y), [])]
        return []

    def cells(self, f, g):
        (s, u), (t, v) = f, g
        if s != t:
            return []
        if s == "a":
            return [("a", c) for c in self.Ap.cells(u, v)]
        if s == "b":
            return [("b", c) for c in self.B.cells(u, v)]
        return [("m", (u, v))] if v in self._le.get(u, ()) else []

    def src(self, f):
        tag, u = f
        if tag == "a":
            return ("a", self.Ap.src(u))
        if tag == "b":
            return ("b", self.B.src(u))
        return ("a", u.src)

    def tgt(self, f):
        tag, u = f
        if tag == "a":
            return ("a", self.Ap.tgt(u))
        if tag == "b":
            return ("b", self.B.tgt(u))
        return ("b", u.tgt)

    def dom(self, c):
        tag, u = c
        if tag == "a":
            return ("a", self.Ap.dom(u))
        if tag == "b":
            return ("b", self.B.dom(u))
        return ("m", u[0])

    def cod(self, c):
        tag, u = c
        if tag == "a":
            return ("a", self.Ap.cod(u))
        if tag == "b":
            return ("b", self.B.cod(u))
        return ("m", u[1])

    def id1(self, p):
        tag, x = p
        return ("a", self.Ap.id1(x)) if tag == "a" else ("b", self.B.id1(x))

    def id2(self, f):
        tag, u = f
        if tag == "a":
            return ("a", self.Ap.id2(u))
        if tag == "b":
            return ("b", self.B.id2(u))
        return ("m", (u, u))

    def comp(self, g, f):
        (s, u), (t, v) = f, g
        if self.tgt(f) != self.src(g):
            raise CellError(f"cannot compose {g!r} after {f!r}")
        if s == "a" and t == "a":
            return ("a", self.Ap.comp(v, u))
        if s == "b" and t == "b":
            return ("b", self.B.comp(v, u))
        if s == "a" and t == "m":
            return ("m", self.word(self.Ap.comp(v.head, u), v.tail))
        if s == "m" and t == "b":
            return ("m", self.word(u.head, self.B.comp(v, u.tail)))
        raise CellError(f"cannot compose {g!r} after {f!r}")

    def vcomp(self, b, a):
        if self.cod(a) != self.dom(b):
            raise CellError(f"cannot stack {b!r} on {a!r}")
        tag = a[0]
        if tag == "a":
            return ("a", self.Ap.vcomp(b[1], a[1]))
        if tag == "b":
            return ("b", self.B.vcomp(b[1], a[1]))
        return ("m", (a[1][0], b[1][1]))

    def wpost(self, g, c):
        f0, f1 = self.dom(c), self.cod(c)
        if c[0] == "a" and g[0] == "a":
            return ("a", self.Ap.wpost(g[1], c[1]))
        if c[0] == "b" and g[0] == "b":
            return ("b", self.B.wpost(g[1], c[1]))
        return self._thin(self.comp(g, f0), self.comp(g, f1))

    def wpre(self, c, f):
        f0, f1 = self.dom(c), self.cod(c)
        if c[0] == "a" and f[0] == "a":
            return ("a", self.Ap.wpre(c[1], f[1]))
        if c[0] == "b" and f[0] == "b":
            return ("b", self.B.wpre(c[1], f[1]))
        return self._thin(self.comp(f0, f), self.comp(f1, f))

    def _thin(self, f, g):
        cs = self.cells(f, g)
        if not cs:
            raise CellError(f"no 2-cell {f!r} => {g!r}")
        return cs[0]

    def normalize(self, word: list):
        """Compose a list of 1-cells of A' and B (tagged "a"/"b"), left to right."""
        out = None
        for tag, f in word:
            if tag == "b" and self.B.src(f) in self.A_objs:
                if self.B.tgt(f) in self.A_objs:
                    h = ("a", self.F.arr(f))
                else:
                    z = self.B.src(f)
                    h = ("m", self.word(self.Ap.id1(self.F.obj(z)), f))
            else:
                h = (tag, f)
            out = h if out is None else self.comp(h, out)
        return out

    # -- coprojections and mediators ------------------------------------------
    def kappa(self) -> TwoFunctor:
        """A' -> B'."""
        return TwoFunctor(self.Ap, self, lambda x: ("a", x), lambda f: ("a", f),
                          lambda c: ("a", c), "kappa")

    def omega(self) -> TwoFunctor:
        """B -> B'."""
        B, A, F = self.B, self.A_objs, self.F

        def obj(x):
            return ("a", F.obj(x)) if x in A else ("b", x)

        def arr(f):
            x, y = B.src(f), B.tgt(f)
            if y in A:
                return ("a", F.arr(f))
            if x in A:
                return ("m", self.word(self.Ap.id1(F.obj(x)), f))
            return ("b", f)

        def cell(c):
            f, g = B.dom(c), B.cod(c)
            if B.tgt(f) in A:
                return ("a", F.cell(c))
            if B.src(f) in A:
                return ("m", (arr(f)[1], arr(g)[1]))
            return ("b", c)

        return TwoFunctor(B, self, obj, arr, cell, "omega")

    def mediator(self, P: TwoFunctor, Q: TwoFunctor, check: bool = True) -> TwoFunctor:
        """The 2-functor B' -> X induced by P : A' -> X and Q : B -> X.

        With ``check``, raises ValueError if the cocone does not commute or the
        mediator is not well defined on some class of words.
        """
        X = P.target
        if check:
            for z in self.A.objects():
                if P.obj(self.F.obj(z)) != Q.obj(z):
                    raise ValueError(f"cocone does not commute at {z!r}")
            for f in self.A.all_arrows():
                if P.arr(self.F.arr(f)) != Q.arr(f):
                    raise ValueError(f"cocone does not commute at {f!r}")
            for (z, ap, b), w in self._find.items():
                if X.comp(Q.arr(b), P.arr(ap)) != X.comp(Q.arr(w.tail), P.arr(w.head)):
                    raise ValueError(f"mediator not well defined on {w!r}")

        def obj(p):
            return P.obj(p[1]) if p[0] == "a" else Q.obj(p[1])

        def arr(f):
            tag, u = f
            if tag == "a":
                return P.arr(u)
            if tag == "b":
                return Q.arr(u)
            return X.comp(Q.arr(u.tail), P.arr(u.head))

        def cell(c):
            tag, u = c
            if tag == "a":
                return P.cell(u)
            if tag == "b":
                return Q.cell(u)
            cs = X.cells(arr(("m", u[0])), arr(("m", u[1])))
            if len(cs) != 1:
                raise CellError(f"no unique image for {c!r}")
            return cs[0]

        return TwoFunctor(self, X, obj, arr, cell, "mediator")


def quotient(B: TwoCategory, A_objs, budget: int | None = None):
    """B/A as the pushout along A -> 1; returns (B/A, the basepoint)."""
    T = terminal()
    A = FullSub(B, A_objs, "A")
    bang = TwoFunctor(A, T, lambda x: 0, lambda f: (0, 0), lambda c: ((0, 0), (0, 0)), "!")
    Q = LeftIdealPushout(B, A_objs, T, bang, f"{B.name}/A", budget)
    return Q, ("a", 0)


def setminus_2cat(B: TwoCategory, A_objs) -> FullSub:
    A_objs = set(A_objs)
    return FullSub(B, [x for x in B.objects() if x not in A_objs], f"{B.name}-A")


# -- pushouts of skew immersions ----------------------------------------------

def pushout_skew(cert: SkewImmersionCertificate, F: TwoFunctor, budget: int | None = None):
    """Push a skew immersion out along F : A -> A'.

    Returns (B', J', xi) with J' the pushed-out certificate and xi its distortion.
    """
    B, R, eps = cert.B, cert.R, cert.eps
    Ap = F.target
    PO = LeftIdealPushout(B, cert.A_objs, Ap, F, budget=budget)
    A_objs, W_objs = cert.A_objs, cert.W_objs
    Wp_objs = frozenset([("a", x) for x in Ap.objects()] +
                        [("b", y) for y in W_objs if y not in A_objs])
    Ap_objs = frozenset(("a", x) for x in Ap.objects())
    Wp = FullSub(PO, Wp_objs, "W'")
    App = FullSub(PO, Ap_objs, "A'")

    def R_obj(p):
        tag, x = p
        return p if tag == "a" else ("a", F.obj(R.obj(x)))

    def R_arr(f):
        tag, u = f
        if tag == "a":
            return f
        if tag == "b":
            return ("a", F.arr(R.arr(u)))
        return ("a", Ap.comp(F.arr(R.arr(u.tail)), u.head))

    def R_cell(c):
        tag, u = c
        if tag == "a":
            return c
        if tag == "b":
            return ("a", F.cell(R.cell(u)))
        return PO._thin(R_arr(("m", u[0])), R_arr(("m", u[1])))

    Rp = TwoFunctor(Wp, App, R_obj, R_arr, R_cell, "R'")
    JRp = TwoFunctor(Wp, Wp, R_obj, R_arr, R_cell, "J'R'")

    def xi1(f):
        tag, u = f
        if tag == "a":
            return f
        if tag == "b":
            z = R.obj(B.src(u))
            return ("m", PO.word(Ap.id1(F.obj(z)), eps.comp1(u)))
        return ("m", PO.word(u.head, eps.comp1(u.tail)))

    xi = Distortion.thin(JRp, TwoFunctor.identity(Wp), xi1, "xi")
    Jp = SkewImmersionCertificate(PO, Ap_objs, Wp_objs, Rp, xi, App, Wp,
                                  {"pushout": PO})
    return PO, Jp, xi


def xi_well_defined(PO: LeftIdealPushout, eps: Distortion) -> Report:
    """The mixed components of xi do not depend on the chosen word representative."""
    rep = Report("xi on word classes")
    for (z, ap, b), w in PO._find.items():
        mine = PO.word(ap, eps.comp1(b))
        ref = PO.word(w.head, eps.comp1(w.tail))
        rep.tick("xi-well-defined", mine == ref, w)
    return rep


def universal_property_check(PO: LeftIdealPushout, X: TwoCategory,
                             budget: int | None = None) -> Report:
    """Exhaustive: every cocone into X has exactly one mediating 2-functor."""
    from .twocat import functor_table, two_functors

    rep = Report(f"universal property into {X.name}")
    kappa, omega = PO.kappa(), PO.omega()
    cocones = []
    for P in two_functors(PO.Ap, X, budget):
        for Q in two_functors(PO.B, X, budget):
            if all(P.obj(PO.F.obj(z)) == Q.obj(z) for z in PO.A.objects()) and all(
                    P.arr(PO.F.arr(f)) == Q.arr(f) for f in PO.A.all_arrows()) and all(
                    P.cell(PO.F.cell(c)) == Q.cell(c) for c in PO.A.all_cells()):
                cocones.append((functor_table(P), functor_table(Q)))
    counts = {c: 0 for c in cocones}
    for M in two_functors(PO, X, budget):
        key = (functor_table(M.compose(kappa)), functor_table(M.compose(omega)))
        if rep.tick("factors-through-a-cocone", key in counts, key):
            counts[key] += 1
    for c, n in counts.items():
        rep.tick("unique-mediator", n == 1, c, f"{n} mediators")
    rep.notes.append(f"{len(cocones)} cocones")
    return rep


def quotient_iso_checks(cert: SkewImmersionCertificate, F: TwoFunctor,
                        pushout=None) -> Report:
    """B/A = B'/A' and (B - A) n W = (B' - A') n W', by explicit isomorphisms."""
    PO, Jp, xi = pushout if pushout is not None else pushout_skew(cert, F)
    rep = Report("quotient invariance")
    QA, star = quotient(cert.B, cert.A_objs)
    QAp, star2 = quotient(PO, Jp.A_objs)
    # B -> B' -> B'/A' sends A to the basepoint, hence factors through B/A
    om, om2 = PO.omega(), QAp.omega()
    comp = om2.compose(om)
    const = TwoFunctor(QA.Ap, QAp, lambda x: star2, lambda f: QAp.id1(star2),
                       lambda c: QAp.id2(QAp.id1(star2)), "const")
    try:
        Phi = QA.mediator(const, comp)
    except (ValueError, CellError) as e:
        rep.tick("quotient-comparison", False, None, str(e))
    else:
        Phi.name = "B/A -> B'/A'"
        rep.merge(check_iso(Phi), "B/A:")
    # the outer parts inside the collars agree on the nose
    outer = [y for y in cert.W_objs if y not in cert.A_objs]
    S1 = FullSub(cert.B, outer, "(B-A)nW")
    S2 = FullSub(PO, [("b", y) for y in outer], "(B'-A')nW'")
    Psi = TwoFunctor(S1, S2, lambda y: ("b", y), lambda f: ("b", f), lambda c: ("b", c),
                     "(B-A)nW -> (B'-A')nW'")
    rep.merge(check_iso(Psi), "collar-part:")
    outer_all = setminus_2cat(cert.B, cert.A_objs)
    S3 = setminus_2cat(PO, Jp.A_objs)
    Chi = TwoFunctor(outer_all, S3, lambda y: ("b", y), lambda f: ("b", f),
                     lambda c: ("b", c), "B-A -> B'-A'")
    rep.merge(check_iso(Chi), "complement:")
    return rep


# -- the nerve pushout -------------------------------------------------------------

def vwb_check(B: TwoCategory, A_objs, W_objs, cap: int, budget: int | None = None) -> Report:
    """N2 of the square (B - A) n W, B - A, W, B is a pushout up to cap."""
    A_objs, W_objs = frozenset(A_objs), frozenset(W_objs)
    rep = Report("nerve pushout")
    ok, bad = ideal_check(B, A_objs, "L")
    rep.tick("A-left-ideal", ok, bad)
    ok2, bad2 = ideal_check(B, W_objs, "R")
    rep.tick("W-right-ideal", ok2, bad2)
    if not (ok and ok2):
        return rep
    outer = [x for x in B.objects() if x not in A_objs]
    V = FullSub(B, outer, "B-A")
    VW = FullSub(B, [x for x in outer if x in W_objs], "(B-A)nW")
    W = FullSub(B, W_objs, "W")
    NB, NV, NW, NVW = (n2(C, cap, budget) for C in (B, V, W, VW))

    def incl(K, L):
        return SimplicialMap(K, L, {t: L.ez_of[t] for t in K.dims})

    f, g = incl(NVW, NV), incl(NVW, NW)
    P, iV, iW = pushout_sset(f, g, cap)
    c = pushout_mediator(P, iV, iW, incl(NV, NB), incl(NW, NB))
    if not rep.tick("comparison-defined", c is not None):
        return rep
    for m in range(cap + 1):
        imgs = [c(x) for x in P.simplices(m)]
        rep.tick("injective", len(set(imgs)) == len(imgs), m)
        rep.tick("surjective", len(set(imgs)) == NB.count(m), m,
                 f"{len(set(imgs))} of {NB.count(m)}")
    rep.notes.append("degree counts B: " + str([NB.count(m) for m in range(cap + 1)]))
    return rep


def nerve_map_of(G: TwoFunctor, NK, NL) -> SimplicialMap:
    """N2(G) between already computed 2-nerves, as a map of simplicial sets."""
    Gl = NormalLaxFunctor.of_functor(G)
    return SimplicialMap(NK, NL, {t: NL.ez_of[Gl.on_simplex(t)] for t in NK.dims})


def nerve_comparison(B: TwoCategory, A_objs, F: TwoFunctor, cap: int,
                     budget: int | None = None):
    """The comparison N2(B) +_{N2 A} N2(A') -> N2(B') for the pushout along F.

    Returns (comparison map, pushout 2-category).
    """
    PO = LeftIdealPushout(B, A_objs, F.target, F, budget=budget)
    NB, NA, NAp, NBp = (n2(C, cap, budget) for C in (B, PO.A, F.target, PO))
    incl = SimplicialMap(NA, NB, {t: NB.ez_of[t] for t in NA.dims})
    P, iB, iAp = pushout_sset(incl, nerve_map_of(F, NA, NAp), cap)
    c = pushout_mediator(P, iB, iAp, nerve_map_of(PO.omega(), NB, NBp),
                         nerve_map_of(PO.kappa(), NAp, NBp))
    if c is None:
        raise ValueError("the nerve square does not commute")
    return c, PO


def standard_target(A: TwoCategory, kind: str, budget: int | None = None) -> TwoFunctor:
    """A 2-functor out of A of one of three kinds: identity, collapse, walking.

    "walking" picks, in enumeration order, the first 2-functor into the walking
    2-cell that uses both of its non-identity arrows, else the one using most.
    """
    if kind == "identity":
        return TwoFunctor(A, A, lambda x: x, lambda f: f, lambda c: c, "id")
    if kind == "collapse":
        T = terminal()
        return TwoFunctor(A, T, lambda x: 0, lambda f: (0, 0), lambda c: ((0, 0), (0, 0)), "!")
    if kind == "walking":
        W = walking_2cell()
        best, best_hits = None, -1
        for F in two_functors(A, W, budget):
            hits = len({F.arr(f) for f in A.all_arrows()} & {"f", "g"})
            if hits > best_hits:
                best, best_hits = F, hits
                if hits == 2:
                    break
        best.name = "w"
        return best
    raise ValueError(f"unknown target kind {kind!r}")
