"""Strict 2-categories: a common interface and its concrete representations.

Conventions used throughout the package:

* ``comp(g, f)`` is ``g o f`` (f first); ``vcomp(b, a)`` is ``b . a`` (a first).
* ``wpost(g, a)`` whiskers a 2-cell with a 1-cell on the target side (``g o a``),
  ``wpre(a, f)`` on the source side (``a o f``).
* In the chain model a 1-cell is a chain ``(x, ..., y)``, the identity on x is
  ``(x,)`` and the unique 2-cell ``c => d`` exists iff d is a subchain of c with
  the same endpoints, i.e. 2-cells go from finer to coarser chains.
"""

from __future__ import annotations

import itertools
import json
from typing import Callable, Hashable, Iterable

from .poset import Poset, from_jsonable, ordinal, to_jsonable
from .report import BudgetExceeded, Report, cell_budget


class CellError(ValueError):
    """A composite or whisker was requested on incompatible cells."""


class TwoCategory:
    """Abstract interface. Subclasses implement the primitive queries."""

    name = "?"
    locally_thin = False

    def objects(self) -> list:
        raise NotImplementedError

    def arrows(self, x, y) -> list:
        raise NotImplementedError

    def cells(self, f, g) -> list:
        raise NotImplementedError

    def src(self, f):
        raise NotImplementedError

    def tgt(self, f):
        raise NotImplementedError

    def dom(self, a):
        raise NotImplementedError

    def cod(self, a):
        raise NotImplementedError

    def id1(self, x):
        raise NotImplementedError

    def id2(self, f):
        raise NotImplementedError

    def comp(self, g, f):
        raise NotImplementedError

    def vcomp(self, b, a):
        raise NotImplementedError

    def wpost(self, g, a):
        raise NotImplementedError

    def wpre(self, a, f):
        raise NotImplementedError

    # -- derived ---------------------------------------------------------------
    def hcomp(self, b, a):
        """Horizontal composite b * a, for a : f => f' and b : g => g'."""
        return self.vcomp(self.wpre(b, self.cod(a)), self.wpost(self.dom(b), a))

    def cell(self, f, g):
        """The unique 2-cell f => g in a locally thin 2-category, or None."""
        cs = self.cells(f, g)
        if len(cs) > 1:
            raise CellError(f"{f!r} => {g!r} is not unique")
        return cs[0] if cs else None

    def has_object(self, x) -> bool:
        return x in set(self.objects())

    def all_arrows(self) -> list:
        obs = self.objects()
        return [f for x in obs for y in obs for f in self.arrows(x, y)]

    def hom_cells(self, x, y) -> list:
        fs = self.arrows(x, y)
        return [a for f in fs for g in fs for a in self.cells(f, g)]

    def all_cells(self) -> list:
        obs = self.objects()
        return [a for x in obs for y in obs for a in self.hom_cells(x, y)]

    def arrows_from(self, x) -> list:
        return [f for y in self.objects() for f in self.arrows(x, y)]

    def arrows_to(self, y) -> list:
        return [f for x in self.objects() for f in self.arrows(x, y)]

    def cell_counts(self) -> tuple:
        return (len(self.objects()), len(self.all_arrows()), len(self.all_cells()))

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


# -- the chain model ---------------------------------------------------------

class ChainTwoCategory(TwoCategory):
    """The locally ordered 2-category of chains in a poset."""

    locally_thin = True

    def __init__(self, base: Poset, name: str = ""):
        self.base = base
        self.name = name or f"chains({len(base)})"
        self._arrows: dict = {}

    def objects(self):
        return list(self.base.elements)

    def has_object(self, x):
        return x in self.base

    def arrows(self, x, y):
        key = (x, y)
        if key not in self._arrows:
            self._arrows[key] = self.base.chains_between(x, y)
        return self._arrows[key]

    def is_arrow(self, f) -> bool:
        return isinstance(f, tuple) and len(f) >= 1 and self.base.is_chain(f)

    def cells(self, f, g):
        if f[0] == g[0] and f[-1] == g[-1] and set(g) <= set(f):
            return [(f, g)]
        return []

    def src(self, f):
        return f[0]

    def tgt(self, f):
        return f[-1]

    def dom(self, a):
        return a[0]

    def cod(self, a):
        return a[1]

    def id1(self, x):
        return (x,)

    def id2(self, f):
        return (f, f)

    def comp(self, g, f):
        if f[-1] != g[0]:
            raise CellError(f"cannot compose {g!r} after {f!r}")
        return f + g[1:]

    def vcomp(self, b, a):
        if a[1] != b[0]:
            raise CellError(f"cannot stack {b!r} on {a!r}")
        return (a[0], b[1])

    def wpost(self, g, a):
        if a[0][-1] != g[0]:
            raise CellError(f"cannot whisker {a!r} by {g!r}")
        return (a[0] + g[1:], a[1] + g[1:])

    def wpre(self, a, f):
        if f[-1] != a[0][0]:
            raise CellError(f"cannot whisker {a!r} by {f!r}")
        return (f + a[0][1:], f + a[1][1:])

    def hom_order(self, x, y) -> Poset:
        fs = self.arrows(x, y)
        return Poset(fs, [(g, f) for f in fs for g in fs if self.cells(f, g)])

    def to_json(self):
        return {"kind": "chain", "base": self.base.to_json()}


def chain_two_category(P: Poset) -> ChainTwoCategory:
    return ChainTwoCategory(P)


def oriental(n: int) -> ChainTwoCategory:
    if n < 0:
        raise ValueError("n must be non-negative")
    return ChainTwoCategory(ordinal(n), f"oriental({n})")


class PosetCategory(TwoCategory):
    """A poset as a locally discrete 2-category; the arrow x -> y is the pair (x, y)."""

    locally_thin = True

    def __init__(self, base: Poset, name: str = ""):
        self.base = base
        self.name = name or f"poset({len(base)})"

    def objects(self):
        return list(self.base.elements)

    def has_object(self, x):
        return x in self.base

    def arrows(self, x, y):
        return [(x, y)] if self.base.le(x, y) else []

    def cells(self, f, g):
        return [(f, f)] if f == g else []

    def src(self, f):
        return f[0]

    def tgt(self, f):
        return f[1]

    def dom(self, a):
        return a[0]

    def cod(self, a):
        return a[1]

    def id1(self, x):
        return (x, x)

    def id2(self, f):
        return (f, f)

    def comp(self, g, f):
        if f[1] != g[0]:
            raise CellError(f"cannot compose {g!r} after {f!r}")
        return (f[0], g[1])

    def vcomp(self, b, a):
        if a != b:
            raise CellError("only identity 2-cells")
        return a

    def wpost(self, g, a):
        h = self.comp(g, a[0])
        return (h, h)

    def wpre(self, a, f):
        h = self.comp(a[0], f)
        return (h, h)


def terminal() -> PosetCategory:
    return PosetCategory(ordinal(0), "terminal")


# -- explicit tables ---------------------------------------------------------

class ExplicitTwoCategory(TwoCategory):
    """All cells listed, all operations given by lookup tables."""

    def __init__(self, objects, arrows: dict, cells: dict, comp: dict, vcomp: dict,
                 wpost: dict, wpre: dict, id1: dict, id2: dict, name: str = "",
                 locally_thin: bool | None = None):
        self._objects = list(objects)
        self._src = {f: st[0] for f, st in arrows.items()}
        self._tgt = {f: st[1] for f, st in arrows.items()}
        self._dom = {a: dc[0] for a, dc in cells.items()}
        self._cod = {a: dc[1] for a, dc in cells.items()}
        self.comp_table = dict(comp)
        self.vcomp_table = dict(vcomp)
        self.wpost_table = dict(wpost)
        self.wpre_table = dict(wpre)
        self.id1_table = dict(id1)
        self.id2_table = dict(id2)
        self.name = name or "explicit"
        self._hom: dict = {}
        for f in arrows:
            self._hom.setdefault((self._src[f], self._tgt[f]), []).append(f)
        self._cells: dict = {}
        for a in cells:
            self._cells.setdefault((self._dom[a], self._cod[a]), []).append(a)
        if locally_thin is None:
            locally_thin = all(len(v) == 1 for v in self._cells.values())
        self.locally_thin = locally_thin

    def objects(self):
        return list(self._objects)

    def arrows(self, x, y):
        return list(self._hom.get((x, y), []))

    def cells(self, f, g):
        return list(self._cells.get((f, g), []))

    def src(self, f):
        return self._src[f]

    def tgt(self, f):
        return self._tgt[f]

    def dom(self, a):
        return self._dom[a]

    def cod(self, a):
        return self._cod[a]

    def id1(self, x):
        return self.id1_table[x]

    def id2(self, f):
        return self.id2_table[f]

    def comp(self, g, f):
        return _lookup(self.comp_table, (g, f), "comp")

    def vcomp(self, b, a):
        return _lookup(self.vcomp_table, (b, a), "vcomp")

    def wpost(self, g, a):
        return _lookup(self.wpost_table, (g, a), "wpost")

    def wpre(self, a, f):
        return _lookup(self.wpre_table, (a, f), "wpre")

    def all_arrows(self):
        return list(self._src)

    def all_cells(self):
        return list(self._dom)

    def copy(self) -> "ExplicitTwoCategory":
        return ExplicitTwoCategory(
            self._objects,
            {f: (self._src[f], self._tgt[f]) for f in self._src},
            {a: (self._dom[a], self._cod[a]) for a in self._dom},
            self.comp_table, self.vcomp_table, self.wpost_table, self.wpre_table,
            self.id1_table, self.id2_table, self.name, self.locally_thin,
        )

    def to_json(self) -> dict:
        j = to_jsonable
        return {
            "kind": "explicit",
            "objects": [j(x) for x in self._objects],
            "arrows": [[j(f), j(self._src[f]), j(self._tgt[f])] for f in self._src],
            "cells": [[j(a), j(self._dom[a]), j(self._cod[a])] for a in self._dom],
            "hcomp": [[j(g), j(f), j(h)] for (g, f), h in self.comp_table.items()],
            "vcomp": [[j(b), j(a), j(c)] for (b, a), c in self.vcomp_table.items()],
            "wpost": [[j(g), j(a), j(c)] for (g, a), c in self.wpost_table.items()],
            "wpre": [[j(a), j(f), j(c)] for (a, f), c in self.wpre_table.items()],
            "id1": [[j(x), j(f)] for x, f in self.id1_table.items()],
            "id2": [[j(f), j(a)] for f, a in self.id2_table.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExplicitTwoCategory":
        u = from_jsonable

        def tab(key):
            return {(u(r[0]), u(r[1])): u(r[2]) for r in data[key]}

        return cls(
            [u(x) for x in data["objects"]],
            {u(f): (u(s), u(t)) for f, s, t in data["arrows"]},
            {u(a): (u(d), u(c)) for a, d, c in data["cells"]},
            tab("hcomp"), tab("vcomp"), tab("wpost"), tab("wpre"),
            {u(x): u(f) for x, f in data["id1"]},
            {u(f): u(a) for f, a in data["id2"]},
        )


def _lookup(table, key, what):
    try:
        return table[key]
    except KeyError:
        raise CellError(f"{what} undefined on {key!r}") from None


def materialize(C: TwoCategory, budget: int | None = None, name: str = "") -> ExplicitTwoCategory:
    """Tabulate every cell and operation of C."""
    limit = cell_budget(budget)
    obs = C.objects()
    arrows = {}
    for x in obs:
        for y in obs:
            for f in C.arrows(x, y):
                arrows[f] = (x, y)
    cells = {}
    by_hom: dict = {}
    for f, (x, y) in arrows.items():
        by_hom.setdefault((x, y), []).append(f)
    for (x, y), fs in by_hom.items():
        for f in fs:
            for g in fs:
                for a in C.cells(f, g):
                    cells[a] = (f, g)
    if len(arrows) + len(cells) > limit:
        raise BudgetExceeded(f"{len(arrows) + len(cells)} cells exceed budget {limit}")
    comp, vcomp, wpost, wpre = {}, {}, {}, {}
    out_of: dict = {}
    for f, (x, y) in arrows.items():
        out_of.setdefault(x, []).append(f)
    cells_by_dom: dict = {}
    for a, (f, g) in cells.items():
        cells_by_dom.setdefault(f, []).append(a)
    for f, (x, y) in arrows.items():
        for g in out_of.get(y, []):
            comp[(g, f)] = C.comp(g, f)
    for a, (f, g) in cells.items():
        for b in cells_by_dom.get(g, []):
            vcomp[(b, a)] = C.vcomp(b, a)
        x, y = arrows[f]
        for h in out_of.get(y, []):
            wpost[(h, a)] = C.wpost(h, a)
        for h in (k for k, (s, t) in arrows.items() if t == x):
            wpre[(a, h)] = C.wpre(a, h)
    return ExplicitTwoCategory(
        obs, arrows, cells, comp, vcomp, wpost, wpre,
        {x: C.id1(x) for x in obs}, {f: C.id2(f) for f in arrows},
        name or f"explicit({C.name})", C.locally_thin,
    )


def explicit_of_chain(C: ChainTwoCategory, budget: int | None = None) -> ExplicitTwoCategory:
    return materialize(C, budget)


def thin_two_category(objects, arrows: dict, comp: dict, order: Iterable[tuple],
                      identities: dict, name: str = "") -> ExplicitTwoCategory:
    """A locally thin 2-category from a 1-category and a preorder on each hom.

    ``order`` lists pairs (f, g) meaning a 2-cell f => g; reflexive pairs are added.
    2-cells are the pairs themselves and all operations are forced.
    """
    rel = set(order) | {(f, f) for f in arrows}
    changed = True
    while changed:
        changed = False
        for (f, g) in list(rel):
            for (g2, h) in list(rel):
                if g == g2 and (f, h) not in rel:
                    rel.add((f, h))
                    changed = True
    cells = {p: p for p in rel}
    vcomp, wpost, wpre = {}, {}, {}
    for (f, g) in rel:
        for (g2, h) in rel:
            if g2 == g:
                vcomp[((g, h), (f, g))] = (f, h)
        y = arrows[f][1]
        x = arrows[f][0]
        for k, (s, t) in arrows.items():
            if s == y:
                wpost[(k, (f, g))] = (comp[(k, f)], comp[(k, g)])
            if t == x:
                wpre[((f, g), k)] = (comp[(f, k)], comp[(g, k)])
    return ExplicitTwoCategory(
        objects, arrows, cells, comp, vcomp, wpost, wpre, identities,
        {f: (f, f) for f in arrows}, name, True,
    )


def walking_2cell() -> ExplicitTwoCategory:
    """Objects x, y; parallel arrows f, g : x -> y; one 2-cell f => g."""
    arrows = {"id_x": ("x", "x"), "id_y": ("y", "y"), "f": ("x", "y"), "g": ("x", "y")}
    comp = {}
    for a, (s, t) in arrows.items():
        for b, (s2, t2) in arrows.items():
            if s2 == t:
                comp[(b, a)] = a if b.startswith("id") else b
    return thin_two_category(["x", "y"], arrows, comp, [("f", "g")],
                             {"x": "id_x", "y": "id_y"}, "walking_2cell")


def explicit_from_json(data: dict) -> TwoCategory:
    if data.get("kind") == "chain":
        return ChainTwoCategory(Poset.from_json(data["base"]))
    return ExplicitTwoCategory.from_json(data)


# -- constructions -------------------------------------------------------

class FullSub(TwoCategory):
    """The full and locally full sub-2-category on a set of objects."""

    def __init__(self, C: TwoCategory, objs: Iterable, name: str = ""):
        self.ambient = C
        keep = set(objs)
        self._objs = [x for x in C.objects() if x in keep]
        self._set = keep
        self.locally_thin = C.locally_thin
        self.name = name or f"sub({C.name})"

    def objects(self):
        return list(self._objs)

    def has_object(self, x):
        return x in self._set

    def arrows(self, x, y):
        if x in self._set and y in self._set:
            return self.ambient.arrows(x, y)
        return []

    def cells(self, f, g):
        return self.ambient.cells(f, g)

    def src(self, f):
        return self.ambient.src(f)

    def tgt(self, f):
        return self.ambient.tgt(f)

    def dom(self, a):
        return self.ambient.dom(a)

    def cod(self, a):
        return self.ambient.cod(a)

    def id1(self, x):
        return self.ambient.id1(x)

    def id2(self, f):
        return self.ambient.id2(f)

    def comp(self, g, f):
        return self.ambient.comp(g, f)

    def vcomp(self, b, a):
        return self.ambient.vcomp(b, a)

    def wpost(self, g, a):
        return self.ambient.wpost(g, a)

    def wpre(self, a, f):
        return self.ambient.wpre(a, f)


def full_sub(C: TwoCategory, objs: Iterable, name: str = "") -> FullSub:
    return FullSub(C, objs, name)


class Product(TwoCategory):
    """Cartesian product; every cell is a pair of cells."""

    def __init__(self, A: TwoCategory, B: TwoCategory, name: str = ""):
        self.A, self.B = A, B
        self.locally_thin = A.locally_thin and B.locally_thin
        self.name = name or f"{A.name}x{B.name}"

    def objects(self):
        return [(x, y) for x in self.A.objects() for y in self.B.objects()]

    def has_object(self, p):
        return self.A.has_object(p[0]) and self.B.has_object(p[1])

    def arrows(self, p, q):
        return [(f, g) for f in self.A.arrows(p[0], q[0]) for g in self.B.arrows(p[1], q[1])]

    def cells(self, f, g):
        return [(a, b) for a in self.A.cells(f[0], g[0]) for b in self.B.cells(f[1], g[1])]

    def src(self, f):
        return (self.A.src(f[0]), self.B.src(f[1]))

    def tgt(self, f):
        return (self.A.tgt(f[0]), self.B.tgt(f[1]))

    def dom(self, a):
        return (self.A.dom(a[0]), self.B.dom(a[1]))

    def cod(self, a):
        return (self.A.cod(a[0]), self.B.cod(a[1]))

    def id1(self, p):
        return (self.A.id1(p[0]), self.B.id1(p[1]))

    def id2(self, f):
        return (self.A.id2(f[0]), self.B.id2(f[1]))

    def comp(self, g, f):
        return (self.A.comp(g[0], f[0]), self.B.comp(g[1], f[1]))

    def vcomp(self, b, a):
        return (self.A.vcomp(b[0], a[0]), self.B.vcomp(b[1], a[1]))

    def wpost(self, g, a):
        return (self.A.wpost(g[0], a[0]), self.B.wpost(g[1], a[1]))

    def wpre(self, a, f):
        return (self.A.wpre(a[0], f[0]), self.B.wpre(a[1], f[1]))


def interval() -> PosetCategory:
    """Objects "L" and "R", one non-identity arrow t = ("L", "R"), trivial 2-cells."""
    return PosetCategory(Poset(["L", "R"], [("L", "R")]), "I")


T_ARROW = ("L", "R")


def product_with_interval(C: TwoCategory, budget: int | None = None,
                          explicit: bool = True) -> TwoCategory:
    P = Product(C, interval(), f"{C.name}xI")
    return materialize(P, budget, P.name) if explicit else P


class CoDual(TwoCategory):
    """The same 1-skeleton with every 2-cell reversed."""

    def __init__(self, C: TwoCategory):
        self.C = C
        self.locally_thin = C.locally_thin
        self.name = f"{C.name}^co"

    def objects(self):
        return self.C.objects()

    def has_object(self, x):
        return self.C.has_object(x)

    def arrows(self, x, y):
        return self.C.arrows(x, y)

    def cells(self, f, g):
        return self.C.cells(g, f)

    def src(self, f):
        return self.C.src(f)

    def tgt(self, f):
        return self.C.tgt(f)

    def dom(self, a):
        return self.C.cod(a)

    def cod(self, a):
        return self.C.dom(a)

    def id1(self, x):
        return self.C.id1(x)

    def id2(self, f):
        return self.C.id2(f)

    def comp(self, g, f):
        return self.C.comp(g, f)

    def vcomp(self, b, a):
        return self.C.vcomp(a, b)

    def wpost(self, g, a):
        return self.C.wpost(g, a)

    def wpre(self, a, f):
        return self.C.wpre(a, f)


# -- validation ------------------------------------------------------------

def _safe(rep, check, where, thunk):
    try:
        return thunk()
    except (CellError, KeyError, IndexError) as e:
        rep.tick(check + ":defined", False, where, str(e))
        return _UNDEF


_UNDEF = object()


def validate_two_category(C: TwoCategory, budget: int | None = None) -> Report:
    """Exhaustive check of category, local category, whiskering and interchange laws."""
    rep = Report(f"2-category laws of {C.name}")
    limit = cell_budget(budget)
    obs = C.objects()
    hom = {(x, y): C.arrows(x, y) for x in obs for y in obs}
    arrows = [(f, x, y) for (x, y), fs in hom.items() for f in fs]
    cells = []
    for (x, y), fs in hom.items():
        for f in fs:
            for g in fs:
                for a in C.cells(f, g):
                    cells.append((a, f, g, x, y))
    if len(arrows) + len(cells) > limit:
        raise BudgetExceeded(f"{len(arrows) + len(cells)} cells exceed budget {limit}")
    out_of: dict = {}
    into: dict = {}
    for f, x, y in arrows:
        out_of.setdefault(x, []).append((f, y))
        into.setdefault(y, []).append((f, x))
    cells_from: dict = {}
    for a, f, g, x, y in cells:
        cells_from.setdefault(f, []).append((a, g))
    cells_on: dict = {}
    for a, f, g, x, y in cells:
        cells_on.setdefault((x, y), []).append((a, f, g))

    # globularity and identities
    for a, f, g, x, y in cells:
        rep.tick("globular", C.src(f) == C.src(g) and C.tgt(f) == C.tgt(g), a)
        rep.tick("cell-dom-cod", C.dom(a) == f and C.cod(a) == g, a)
    for x in obs:
        i = _safe(rep, "id1", x, lambda: C.id1(x))
        if i is not _UNDEF:
            rep.tick("id1-type", i in hom[(x, x)], x)
    for f, x, y in arrows:
        i = _safe(rep, "id2", f, lambda: C.id2(f))
        if i is not _UNDEF:
            rep.tick("id2-type", i in C.cells(f, f), f)

    # the underlying category
    for f, x, y in arrows:
        rep.tick("comp-unit-left", _safe(rep, "comp", f, lambda: C.comp(C.id1(y), f)) == f, f)
        rep.tick("comp-unit-right", _safe(rep, "comp", f, lambda: C.comp(f, C.id1(x))) == f, f)
        for g, z in out_of.get(y, []):
            gf = _safe(rep, "comp", (g, f), lambda: C.comp(g, f))
            if gf is _UNDEF:
                continue
            rep.tick("comp-type", gf in hom[(x, z)], (g, f))
            for h, w in out_of.get(z, []):
                lhs = _safe(rep, "comp", (h, g, f), lambda: C.comp(h, gf))
                rhs = _safe(rep, "comp", (h, g, f), lambda: C.comp(C.comp(h, g), f))
                rep.tick("comp-assoc", lhs == rhs, (h, g, f))

    # local categories
    for a, f, g, x, y in cells:
        rep.tick("vcomp-unit-left", _safe(rep, "vcomp", a, lambda: C.vcomp(C.id2(g), a)) == a, a)
        rep.tick("vcomp-unit-right", _safe(rep, "vcomp", a, lambda: C.vcomp(a, C.id2(f))) == a, a)
        for b, h in cells_from.get(g, []):
            ba = _safe(rep, "vcomp", (b, a), lambda: C.vcomp(b, a))
            if ba is _UNDEF:
                continue
            rep.tick("vcomp-type", ba in C.cells(f, h), (b, a))
            for c, k in cells_from.get(h, []):
                lhs = _safe(rep, "vcomp", (c, b, a), lambda: C.vcomp(c, ba))
                rhs = _safe(rep, "vcomp", (c, b, a), lambda: C.vcomp(C.vcomp(c, b), a))
                rep.tick("vcomp-assoc", lhs == rhs, (c, b, a))

    # whiskering
    for a, f, g, x, y in cells:
        rep.tick("whisker-unit", _safe(rep, "wpre", a, lambda: C.wpre(a, C.id1(x))) == a, a)
        rep.tick("whisker-unit", _safe(rep, "wpost", a, lambda: C.wpost(C.id1(y), a)) == a, a)
        for k, w in into.get(x, []):
            ak = _safe(rep, "wpre", (a, k), lambda: C.wpre(a, k))
            if ak is _UNDEF:
                continue
            rep.tick("whisker-type", ak in C.cells(C.comp(f, k), C.comp(g, k)), (a, k))
            for k2, w2 in into.get(w, []):
                lhs = _safe(rep, "wpre", (a, k, k2), lambda: C.wpre(a, C.comp(k, k2)))
                rhs = _safe(rep, "wpre", (a, k, k2), lambda: C.wpre(ak, k2))
                rep.tick("whisker-assoc", lhs == rhs, (a, k, k2))
            for h, z in out_of.get(y, []):
                lhs = _safe(rep, "wpost", (h, a, k), lambda: C.wpost(h, ak))
                rhs = _safe(rep, "wpost", (h, a, k), lambda: C.wpre(C.wpost(h, a), k))
                rep.tick("whisker-mixed-assoc", lhs == rhs, (h, a, k))
        for h, z in out_of.get(y, []):
            ha = _safe(rep, "wpost", (h, a), lambda: C.wpost(h, a))
            if ha is _UNDEF:
                continue
            rep.tick("whisker-type", ha in C.cells(C.comp(h, f), C.comp(h, g)), (h, a))
            for h2, z2 in out_of.get(z, []):
                lhs = _safe(rep, "wpost", (h2, h, a), lambda: C.wpost(C.comp(h2, h), a))
                rhs = _safe(rep, "wpost", (h2, h, a), lambda: C.wpost(h2, ha))
                rep.tick("whisker-assoc", lhs == rhs, (h2, h, a))
        for b, h in cells_from.get(g, []):
            ba = _safe(rep, "vcomp", (b, a), lambda: C.vcomp(b, a))
            if ba is _UNDEF:
                continue
            for k, w in into.get(x, []):
                lhs = _safe(rep, "wpre", (b, a, k), lambda: C.wpre(ba, k))
                rhs = _safe(rep, "wpre", (b, a, k),
                            lambda: C.vcomp(C.wpre(b, k), C.wpre(a, k)))
                rep.tick("whisker-distributes", lhs == rhs, (b, a, k))
            for k, z in out_of.get(y, []):
                lhs = _safe(rep, "wpost", (k, b, a), lambda: C.wpost(k, ba))
                rhs = _safe(rep, "wpost", (k, b, a),
                            lambda: C.vcomp(C.wpost(k, b), C.wpost(k, a)))
                rep.tick("whisker-distributes", lhs == rhs, (k, b, a))
    for f, x, y in arrows:
        for k, w in into.get(x, []):
            rep.tick("whisker-identity",
                     _safe(rep, "wpre", (f, k), lambda: C.wpre(C.id2(f), k))
                     == _safe(rep, "id2", (f, k), lambda: C.id2(C.comp(f, k))), (f, k))
        for k, z in out_of.get(y, []):
            rep.tick("whisker-identity",
                     _safe(rep, "wpost", (k, f), lambda: C.wpost(k, C.id2(f)))
                     == _safe(rep, "id2", (k, f), lambda: C.id2(C.comp(k, f))), (k, f))

    # interchange: a : f => f' on x -> y, b : g => g' on y -> z
    for (x, y), acells in cells_on.items():
        for z in obs:
            for b, g, g2 in cells_on.get((y, z), []):
                for a, f, f2 in acells:
                    lhs = _safe(rep, "interchange", (b, a),
                                lambda: C.vcomp(C.wpost(g2, a), C.wpre(b, f)))
                    rhs = _safe(rep, "interchange", (b, a),
                                lambda: C.vcomp(C.wpre(b, f2), C.wpost(g, a)))
                    rep.tick("interchange", lhs == rhs and lhs is not _UNDEF, (b, a))
    return rep


def check_local_orders(C: ChainTwoCategory) -> Report:
    """Each hom of the chain model is a partial order under the 2-cell relation."""
    rep = Report(f"local orders of {C.name}")
    for x in C.objects():
        for y in C.objects():
            fs = C.arrows(x, y)
            for f in fs:
                rep.tick("reflexive", bool(C.cells(f, f)), f)
                for g in fs:
                    if f != g and C.cells(f, g):
                        rep.tick("antisymmetric", not C.cells(g, f), (f, g))
                        for h in fs:
                            if C.cells(g, h):
                                rep.tick("transitive", bool(C.cells(f, h)), (f, g, h))
    return rep


# -- 2-functors ---------------------------------------------------------------

class TwoFunctor:
    """A strict 2-functor given by three cell maps (dicts or callables)."""

    def __init__(self, source: TwoCategory, target: TwoCategory, obj, arr, cell, name=""):
        self.source, self.target = source, target
        self._obj, self._arr, self._cell = obj, arr, cell
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

    def compose(self, inner: "TwoFunctor") -> "TwoFunctor":
        return TwoFunctor(inner.source, self.target,
                          lambda x: self.obj(inner.obj(x)),
                          lambda f: self.arr(inner.arr(f)),
                          lambda a: self.cell(inner.cell(a)),
                          f"{self.name}{inner.name}")

    @classmethod
    def identity(cls, C: TwoCategory) -> "TwoFunctor":
        return cls(C, C, lambda x: x, lambda f: f, lambda a: a, "id")

    @classmethod
    def inclusion(cls, sub: TwoCategory, C: TwoCategory) -> "TwoFunctor":
        return cls(sub, C, lambda x: x, lambda f: f, lambda a: a, "incl")

    def validate(self, budget: int | None = None) -> Report:
        S, T = self.source, self.target
        rep = Report(f"2-functor {self.name}")
        obs = S.objects()
        for x in obs:
            rep.tick("id1", self.arr(S.id1(x)) == T.id1(self.obj(x)), x)
        for x in obs:
            for y in obs:
                for f in S.arrows(x, y):
                    Ff = self.arr(f)
                    rep.tick("src-tgt", Ff in T.arrows(self.obj(x), self.obj(y)), f)
                    rep.tick("id2", self.cell(S.id2(f)) == T.id2(Ff), f)
                    for z in obs:
                        for g in S.arrows(y, z):
                            rep.tick("comp", self.arr(S.comp(g, f)) == T.comp(self.arr(g), Ff),
                                     (g, f))
                    for g in S.arrows(x, y):
                        for a in S.cells(f, g):
                            Fa = self.cell(a)
                            rep.tick("dom-cod", Fa in T.cells(Ff, self.arr(g)), a)
                            for h in S.arrows(x, y):
                                for b in S.cells(g, h):
                                    rep.tick("vcomp", self.cell(S.vcomp(b, a)) ==
                                             T.vcomp(self.cell(b), Fa), (b, a))
                            for z in obs:
                                for k in S.arrows(y, z):
                                    rep.tick("wpost", self.cell(S.wpost(k, a)) ==
                                             T.wpost(self.arr(k), Fa), (k, a))
                                for k in S.arrows(z, x):
                                    rep.tick("wpre", self.cell(S.wpre(a, k)) ==
                                             T.wpre(Fa, self.arr(k)), (a, k))
        return rep


def functor_table(F: TwoFunctor) -> tuple:
    """A hashable snapshot of F on every cell of its source."""
    S = F.source
    return (
        tuple((x, F.obj(x)) for x in S.objects()),
        tuple((f, F.arr(f)) for f in S.all_arrows()),
        tuple((a, F.cell(a)) for a in S.all_cells()),
    )


def two_functors(S: TwoCategory, T: TwoCategory, budget: int | None = None) -> list:
    """Every strict 2-functor S -> T, by backtracking (a reference oracle for small S, T)."""
    limit = cell_budget(budget)
    obs, tobs = S.objects(), T.objects()
    arrows = S.all_arrows()
    cells = S.all_cells()
    out = []
    om: dict = {}
    am: dict = {}
    cm: dict = {}
    # composites whose factors are both placed are checked as soon as possible
    pos = {f: i for i, f in enumerate(arrows)}
    triples_at: dict = {}
    for f in arrows:
        for g in S.arrows_from(S.tgt(f)):
            gf = S.comp(g, f)
            last = max(pos[f], pos[g], pos[gf])
            triples_at.setdefault(last, []).append((f, g, gf))
    cpos = {a: i for i, a in enumerate(cells)}
    cell_checks: dict = {}
    for a in cells:
        g = S.cod(a)
        for h in S.arrows(S.src(g), S.tgt(g)):
            for b in S.cells(g, h):
                ba = S.vcomp(b, a)
                cell_checks.setdefault(max(cpos[a], cpos[b], cpos[ba]), []).append((b, a, ba))

    def arrows_step(i):
        if i == len(arrows):
            cells_step(0)
            return
        f = arrows[i]
        x, y = S.src(f), S.tgt(f)
        cands = [T.id1(om[x])] if f == S.id1(x) else T.arrows(om[x], om[y])
        for c in cands:
            am[f] = c
            if all(T.comp(am[g], am[h]) == am[gh] for h, g, gh in triples_at.get(i, [])):
                arrows_step(i + 1)
        am.pop(f, None)

    def cells_step(i):
        if i == len(cells):
            for a in cells:
                x, y = S.src(S.dom(a)), S.tgt(S.dom(a))
                for k in S.arrows_from(y):
                    if cm[S.wpost(k, a)] != T.wpost(am[k], cm[a]):
                        return
                for k in S.arrows_to(x):
                    if cm[S.wpre(a, k)] != T.wpre(cm[a], am[k]):
                        return
            out.append(TwoFunctor(S, T, dict(om), dict(am), dict(cm)))
            if len(out) > limit:
                raise BudgetExceeded(f"more than {limit} 2-functors")
            return
        a = cells[i]
        f, g = S.dom(a), S.cod(a)
        cands = [T.id2(am[f])] if a == S.id2(f) else T.cells(am[f], am[g])
        for c in cands:
            cm[a] = c
            if all(T.vcomp(cm[b], cm[a2]) == cm[ba] for b, a2, ba in cell_checks.get(i, [])):
                cells_step(i + 1)
        cm.pop(a, None)

    def objects_step(i):
        if i == len(obs):
            arrows_step(0)
            return
        for y in tobs:
            om[obs[i]] = y
            objects_step(i + 1)
        om.pop(obs[i], None)

    objects_step(0)
    return out


def check_iso(F: TwoFunctor) -> Report:
    """F is a 2-functor that is bijective on objects, on each hom and on each 2-cell set."""
    S, T = F.source, F.target
    rep = Report(f"isomorphism {F.name}")
    rep.merge(F.validate(), "functor:")
    sob, tob = S.objects(), T.objects()
    imgs = [F.obj(x) for x in sob]
    rep.tick("objects-bijective", len(set(imgs)) == len(imgs) == len(tob)
             and set(imgs) == set(tob), None, f"{len(sob)} -> {len(tob)}")
    for x in sob:
        for y in sob:
            fs = S.arrows(x, y)
            gs = T.arrows(F.obj(x), F.obj(y))
            im = [F.arr(f) for f in fs]
            rep.tick("homs-bijective", sorted(map(repr, im)) == sorted(map(repr, gs)), (x, y))
            for f in fs:
                for g in fs:
                    cs = S.cells(f, g)
                    ds = T.cells(F.arr(f), F.arr(g))
                    rep.tick("cells-bijective",
                             sorted(repr(F.cell(a)) for a in cs) == sorted(map(repr, ds)),
                             (f, g))
    return rep
