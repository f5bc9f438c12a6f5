"""The 2-category of cylinders, lax transformations and the path-object homotopy.

A lax square ``(u0, u1, a) : f -> g`` has ``u0 : dom f -> dom g``,
``u1 : cod f -> cod g`` and ``a : u1 o f => g o u0``; squares compose by pasting
``(v0 o u0, v1 o u1, (b o u0) . (v1 o a))``. A cylinder ``(t0, t1)`` between
parallel squares satisfies ``(g o t0) . a = b . (t1 o f)``.

Tokens: a square is ``(f, g, u0, u1, a)``, a cylinder ``(s, s', t0, t1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .nlax import (N2Ops, NerveSimplex, NormalLaxFunctor, SimplexView, _pairs, _triples,
                   enumerate_simplices, validate_simplex)
from .report import Report
from .sset import SimplicialHomotopy, homotopy_check
from .twocat import CellError, CoDual, Product, TwoCategory, TwoFunctor


@dataclass(frozen=True)
class LaxSquare:
    f: object
    g: object
    u0: object
    u1: object
    alpha: object


@dataclass(frozen=True)
class Cylinder:
    dom: LaxSquare
    cod: LaxSquare
    theta0: object
    theta1: object


class Cyl(TwoCategory):
    """Cyl(A): objects are 1-cells of A, arrows lax squares, 2-cells cylinders."""

    def __init__(self, A: TwoCategory, name: str = ""):
        self.A = A
        self.name = name or f"Cyl({A.name})"
        self.locally_thin = A.locally_thin
        self._objs = None
        self._arrows: dict = {}

    def objects(self):
        if self._objs is None:
            self._objs = self.A.all_arrows()
        return list(self._objs)

    def has_object(self, f):
        return f in set(self.objects())

    def arrows(self, f, g):
        key = (f, g)
        if key not in self._arrows:
            A = self.A
            out = []
            for u0 in A.arrows(A.src(f), A.src(g)):
                gu0 = A.comp(g, u0)
                for u1 in A.arrows(A.tgt(f), A.tgt(g)):
                    for a in A.cells(A.comp(u1, f), gu0):
                        out.append(LaxSquare(f, g, u0, u1, a))
            self._arrows[key] = out
        return self._arrows[key]

    def cells(self, s, t):
        A = self.A
        if (s.f, s.g) != (t.f, t.g):
            return []
        out = []
        for t0 in A.cells(s.u0, t.u0):
            lhs_left = A.vcomp(A.wpost(s.g, t0), s.alpha)
            for t1 in A.cells(s.u1, t.u1):
                if lhs_left == A.vcomp(t.alpha, A.wpre(t1, s.f)):
                    out.append(Cylinder(s, t, t0, t1))
        return out

    def src(self, s):
        return s.f

    def tgt(self, s):
        return s.g

    def dom(self, c):
        return c.dom

    def cod(self, c):
        return c.cod

    def id1(self, f):
        A = self.A
        return LaxSquare(f, f, A.id1(A.src(f)), A.id1(A.tgt(f)), A.id2(f))

    def id2(self, s):
        return Cylinder(s, s, self.A.id2(s.u0), self.A.id2(s.u1))

    def comp(self, t, s):
        if s.g != t.f:
            raise CellError("squares do not paste")
        A = self.A
        a = A.vcomp(A.wpre(t.alpha, s.u0), A.wpost(t.u1, s.alpha))
        return LaxSquare(s.f, t.g, A.comp(t.u0, s.u0), A.comp(t.u1, s.u1), a)

    def vcomp(self, d, c):
        if c.cod != d.dom:
            raise CellError("cylinders do not stack")
        A = self.A
        return Cylinder(c.dom, d.cod, A.vcomp(d.theta0, c.theta0), A.vcomp(d.theta1, c.theta1))

    def wpost(self, t, c):
        A = self.A
        return Cylinder(self.comp(t, c.dom), self.comp(t, c.cod),
                        A.wpost(t.u0, c.theta0), A.wpost(t.u1, c.theta1))

    def wpre(self, c, s):
        A = self.A
        return Cylinder(self.comp(c.dom, s), self.comp(c.cod, s),
                        A.wpre(c.theta0, s.u0), A.wpre(c.theta1, s.u1))


def cyl(A: TwoCategory) -> Cyl:
    return Cyl(A)


def cyl_structure(C: Cyl):
    """(dom_A, cod_A, I_A) as 2-functors."""
    A = C.A
    dom = TwoFunctor(C, A, A.src, lambda s: s.u0, lambda c: c.theta0, "dom")
    cod = TwoFunctor(C, A, A.tgt, lambda s: s.u1, lambda c: c.theta1, "cod")

    def I_arr(f):
        return LaxSquare(A.id1(A.src(f)), A.id1(A.tgt(f)), f, f, A.id2(f))

    I = TwoFunctor(A, C, A.id1, I_arr,
                   lambda a: Cylinder(I_arr(A.dom(a)), I_arr(A.cod(a)), a, a), "I")
    return dom, cod, I


def pairing(F: TwoFunctor, G: TwoFunctor, name: str = "") -> TwoFunctor:
    """<F, G> : S -> T x T."""
    P = Product(F.target, G.target)
    return TwoFunctor(F.source, P, lambda x: (F.obj(x), G.obj(x)),
                      lambda f: (F.arr(f), G.arr(f)), lambda a: (F.cell(a), G.cell(a)),
                      name or f"<{F.name},{G.name}>")


def _same_on_cells(rep: Report, check: str, F: TwoFunctor, G: TwoFunctor):
    S = F.source
    for x in S.objects():
        rep.tick(check, F.obj(x) == G.obj(x), x)
    for f in S.all_arrows():
        rep.tick(check, F.arr(f) == G.arr(f), f)
    for a in S.all_cells():
        rep.tick(check, F.cell(a) == G.cell(a), a)


# -- lax transformations ----------------------------------------------------------

class NotLax(ValueError):
    pass


def lax_transformation_report(F: TwoFunctor, G: TwoFunctor, comp0, comp1) -> Report:
    """Types and conditions (i), (ii) for components ``a_X = comp0(X)``, ``a_f = comp1(f)``."""
    A, B = F.source, F.target
    rep = Report("lax transformation")
    for X in A.objects():
        rep.tick("type-object", comp0(X) in B.arrows(F.obj(X), G.obj(X)), X)
        idX = A.id1(X)
        rep.tick("unit", comp1(idX) == B.id2(comp0(X)), X)
    for f in A.all_arrows():
        X, Y = A.src(f), A.tgt(f)
        rep.tick("type-arrow", comp1(f) in B.cells(B.comp(G.arr(f), comp0(X)),
                                                  B.comp(comp0(Y), F.arr(f))), f)
    if not rep.ok:
        return rep
    for f in A.all_arrows():
        X, Y = A.src(f), A.tgt(f)
        for f2 in A.arrows(X, Y):
            for th in A.cells(f, f2):
                lhs = B.vcomp(comp1(f2), B.wpre(G.cell(th), comp0(X)))
                rhs = B.vcomp(B.wpost(comp0(Y), F.cell(th)), comp1(f))
                rep.tick("naturality (i)", lhs == rhs, th)
        for g in A.arrows_from(Y):
            lhs = B.vcomp(B.wpre(comp1(g), F.arr(f)), B.wpost(G.arr(g), comp1(f)))
            rep.tick("composition (ii)", lhs == comp1(A.comp(g, f)), (f, g))
    return rep


def classify_lax_transformation(F: TwoFunctor, G: TwoFunctor, comp0, comp1,
                                C: Cyl | None = None) -> TwoFunctor:
    """The 2-functor A -> Cyl(B) classifying a lax transformation F => G."""
    rep = lax_transformation_report(F, G, comp0, comp1)
    if not rep.ok:
        bad = rep.failures[0]
        raise NotLax(f"{bad.check} fails at {bad.where!r}")
    A = F.source
    C = C if C is not None else Cyl(F.target)

    def arr(f):
        return LaxSquare(comp0(A.src(f)), comp0(A.tgt(f)), F.arr(f), G.arr(f), comp1(f))

    def cell(th):
        return Cylinder(arr(A.dom(th)), arr(A.cod(th)), F.cell(th), G.cell(th))

    return TwoFunctor(A, C, comp0, arr, cell, "classifier")


def extract_components(abar: TwoFunctor):
    """Inverse of the classifier: (comp0, comp1)."""
    return abar.obj, (lambda f: abar.arr(f).alpha)


# -- the path-object homotopy --------------------------------------------------------

def homotopy_Hni(C: Cyl):
    """The family H(i, F) : N2(Cyl A)_n -> N2(Cyl A)_{n+1} on nerve simplices."""
    A = C.A

    def H(i, S: NerveSimplex) -> NerveSimplex:
        n = S.n
        v = SimplexView(C, S)

        def Fo(p):
            return v.obj(p)

        def minus(p, q):
            return v.arr(p, q).u0

        def plus(p, q):
            return v.arr(p, q).u1

        def gminus(p, q, r):
            return v.gam(p, q, r).theta0

        def start(p):
            return A.src(Fo(p))

        def obj(p):
            return A.id1(start(p)) if p <= i else Fo(p - 1)

        def dom_sq(s, t):
            m = minus(s, t)
            return LaxSquare(A.id1(start(s)), A.id1(start(t)), m, m, A.id2(m))

        def cart_sq(s, t):
            m = minus(s, t)
            u1 = A.comp(Fo(t), m)
            return LaxSquare(A.id1(start(s)), Fo(t), m, u1, A.id2(u1))

        def arr(p, q):
            if q <= i:
                return dom_sq(p, q)
            if p <= i:
                return cart_sq(p, q - 1)
            return v.arr(p - 1, q - 1)

        def gam(p, q, r):
            dom_sq_ = C.comp(arr(q, r), arr(p, q))
            cod_sq = arr(p, r)
            if r <= i:
                g = gminus(p, q, r)
                return Cylinder(dom_sq_, cod_sq, g, g)
            if q <= i:
                g = gminus(p, q, r - 1)
                return Cylinder(dom_sq_, cod_sq, g, A.wpost(Fo(r - 1), g))
            if p <= i:
                g = gminus(p, q - 1, r - 1)
                sq = v.arr(q - 1, r - 1)
                second = A.vcomp(A.wpost(Fo(r - 1), g), A.wpre(sq.alpha, minus(p, q - 1)))
                return Cylinder(dom_sq_, cod_sq, g, second)
            return v.gam(p - 1, q - 1, r - 1)

        m = n + 1
        return NerveSimplex(
            m,
            tuple(obj(p) for p in range(m + 1)),
            tuple(arr(p, q) for p, q in _pairs(m)),
            tuple(gam(p, q, r) for p, q, r in _triples(m)),
        )

    return SimplicialHomotopy(H)


def path_object_check(A: TwoCategory, cap: int, budget: int | None = None,
                      C: Cyl | None = None) -> Report:
    """The triangle p o I = diagonal, and H witnessing N2(I o dom) ~ id up to cap."""
    C = C if C is not None else Cyl(A)
    dom, cod, I = cyl_structure(C)
    rep = Report(f"path object on {A.name}")
    p = pairing(dom, cod, "p")
    diag = pairing(TwoFunctor.identity(A), TwoFunctor.identity(A), "diagonal")
    _same_on_cells(rep, "p o I = diagonal", p.compose(I), diag)
    _same_on_cells(rep, "dom o I = id", dom.compose(I), TwoFunctor.identity(A))
    _same_on_cells(rep, "cod o I = id", cod.compose(I), TwoFunctor.identity(A))
    ID = I.compose(dom)
    simp = enumerate_simplices(C, cap, budget)
    H = homotopy_Hni(C)
    ops = N2Ops(C)
    for n, xs in simp.items():
        for S in xs:
            for i in range(n + 1):
                out = H(i, S)
                sub = validate_simplex(C, out)
                rep.tick("H output is a nerve simplex", sub.ok, (n, i, S),
                         "; ".join(str(f) for f in sub.failures[:2]))
    IDl = NormalLaxFunctor.of_functor(ID)
    hrep = homotopy_check(H, IDl.on_simplex, lambda S: S, simp, ops, ops)
    rep.merge(hrep, "homotopy:")
    rep.notes.append("simplices checked per degree: " +
                     str([len(simp[m]) for m in sorted(simp)]))
    return rep


def right_homotopy_witness(F: TwoFunctor, G: TwoFunctor, comp0, comp1, cap: int = 1,
                           oplax: bool = False, budget: int | None = None) -> Report:
    """<F, G> = p o abar for the classifier abar, plus the path-object check at cap.

    With ``oplax`` the components point the other way and the cylinder of the
    2-cell dual is used.
    """
    B = F.target
    rep = Report("right homotopy" + (" (oplax)" if oplax else ""))
    Bc = CoDual(B) if oplax else B
    Fc = TwoFunctor(F.source, Bc, F._obj, F._arr, F._cell, F.name)
    Gc = TwoFunctor(G.source, Bc, G._obj, G._arr, G._cell, G.name)
    C = Cyl(Bc)
    lrep = lax_transformation_report(Fc, Gc, comp0, comp1)
    rep.merge(lrep, "transformation:")
    if not lrep.ok:
        return rep
    abar = classify_lax_transformation(Fc, Gc, comp0, comp1, C)
    rep.merge(abar.validate(), "classifier:")
    dom, cod, I = cyl_structure(C)
    p = pairing(dom, cod, "p")
    _same_on_cells(rep, "p o abar = <F,G>", p.compose(abar), pairing(Fc, Gc))
    c0, c1 = extract_components(abar)
    for X in F.source.objects():
        rep.tick("round-trip", c0(X) == comp0(X), X)
    for f in F.source.all_arrows():
        rep.tick("round-trip", c1(f) == comp1(f), f)
    rep.merge(path_object_check(Bc, cap, budget, C), "path-object:")
    return rep


def example_lax_transformation():
    """F, G : [1] -> oriental(2) with F(01) = <02>, G(01) = <01;12>, and the
    component at 01 the 2-cell <01;12> => <02> read as G(01) o id => id o F(01).

    Returns (F, G, comp0, comp1).
    """
    from .twocat import oriental

    A, B = oriental(1), oriental(2)
    on_arrows = {"F": {(0,): (0,), (1,): (2,), (0, 1): (0, 2)},
                 "G": {(0,): (0,), (1,): (2,), (0, 1): (0, 1, 2)}}

    def make(name):
        arr = on_arrows[name]
        return TwoFunctor(A, B, {0: 0, 1: 2}, arr, lambda a: B.id2(arr[A.dom(a)]), name)

    F, G = make("F"), make("G")

    def comp0(X):
        return B.id1(F.obj(X))

    def comp1(f):
        if A.src(f) == A.tgt(f):
            return B.id2(F.arr(f))
        return ((0, 1, 2), (0, 2))

    return F, G, comp0, comp1
