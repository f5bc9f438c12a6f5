"""Finite, dimension-capped simplicial sets.

Only non-degenerate simplices are stored. A general simplex is an :class:`EZ`
pair ``(base, surj)``: the non-degenerate simplex ``base`` pulled back along the
monotone surjection ``surj : [m] -> [dim base]``. This is the Eilenberg-Zilber
normal form, so equality of simplices is equality of pairs.

Face and degeneracy operators are only defined up to ``dim_cap``.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

from .poset import (Poset, PosetMap, chain_poset, from_jsonable, horn_poset, ordinal,
                    to_jsonable)
from .report import BudgetExceeded, Report, cell_budget


class NotAComplex(ValueError):
    """The simplicial set is not an ordered simplicial complex."""


class CapExceeded(ValueError):
    """An operator was applied above the dimension cap."""


# -- monotone surjections ---------------------------------------------------

def ident(k: int) -> tuple:
    return tuple(range(k + 1))


def compose(outer: tuple, inner: tuple) -> tuple:
    """outer after inner, both as tuples of values."""
    return tuple(outer[v] for v in inner)


def codegeneracy(j: int, m: int) -> tuple:
    """sigma^j : [m+1] -> [m], hitting j twice."""
    return tuple(p if p <= j else p - 1 for p in range(m + 2))


def surjections(m: int, k: int):
    """All monotone surjections [m] -> [k]."""
    for jumps in itertools.combinations(range(1, m + 1), k):
        out, v, js = [], 0, set(jumps)
        for p in range(m + 1):
            if p in js:
                v += 1
            out.append(v)
        yield tuple(out)


def word_of(surj: tuple) -> tuple:
    """Degeneracy indices j (decreasing) with x.surj = s_{j_r} ... s_{j_1} x."""
    return tuple(sorted((p for p in range(len(surj) - 1) if surj[p] == surj[p + 1]), reverse=True))


def surj_of_word(word: Iterable[int], k: int) -> tuple:
    s = ident(k)
    for j in sorted(word):
        s = compose(s, codegeneracy(j, len(s) - 1))
    return s


@dataclass(frozen=True)
class EZ:
    """A simplex in Eilenberg-Zilber normal form."""

    base: Hashable
    surj: tuple

    @property
    def dim(self) -> int:
        return len(self.surj) - 1

    @property
    def base_dim(self) -> int:
        return self.surj[-1]

    @property
    def word(self) -> tuple:
        return word_of(self.surj)

    @property
    def degenerate(self) -> bool:
        return self.dim != self.base_dim

    def pull(self, surj: tuple) -> "EZ":
        return EZ(self.base, compose(self.surj, surj))

    def __repr__(self):
        if not self.degenerate:
            return f"<{self.base!r}>"
        return f"<{self.base!r} s{list(self.word)}>"


EZPair = EZ


def nd(tok, dim) -> EZ:
    return EZ(tok, ident(dim))


class SimplicialSet:
    """Non-degenerate simplices per dimension plus their faces as EZ pairs."""

    def __init__(self, dim_cap: int, nondeg: dict, faces: dict, name: str = ""):
        self.dim_cap = dim_cap
        self.name = name
        self.nondeg = {m: list(nondeg.get(m, [])) for m in range(dim_cap + 1)}
        self.dims = {}
        for m, toks in self.nondeg.items():
            for t in toks:
                if t in self.dims:
                    raise ValueError(f"duplicate simplex token {t!r}")
                self.dims[t] = m
        self.faces = {t: tuple(faces[t]) for t in self.dims if self.dims[t] > 0}
        self._all = {}
        self._index = {}
        self.ez_of = None  # concrete -> EZ, when built from concrete data
        self.concrete_of = None

    def __repr__(self):
        counts = [len(self.nondeg[m]) for m in range(self.dim_cap + 1)]
        return f"SimplicialSet({self.name or '?'}, nondeg={counts})"

    # -- operators -----------------------------------------------------------
    def simplex(self, tok) -> EZ:
        return nd(tok, self.dims[tok])

    def face(self, i: int, x: EZ) -> EZ:
        m = x.dim
        if m < 1 or not 0 <= i <= m:
            raise ValueError(f"face d{i} undefined in degree {m}")
        s = x.surj
        tau = s[:i] + s[i + 1:]
        v = s[i]
        if (i > 0 and s[i - 1] == v) or (i < m and s[i + 1] == v):
            return EZ(x.base, tau)
        tau = tuple(w if w < v else w - 1 for w in tau)
        y = self.faces[x.base][v]
        return EZ(y.base, compose(y.surj, tau))

    def degen(self, i: int, x: EZ) -> EZ:
        m = x.dim
        if m + 1 > self.dim_cap:
            raise CapExceeded(f"degeneracy into degree {m + 1} above cap {self.dim_cap}")
        if not 0 <= i <= m:
            raise ValueError(f"degeneracy s{i} undefined in degree {m}")
        return EZ(x.base, compose(x.surj, codegeneracy(i, m)))

    def boundary(self, x: EZ) -> tuple:
        return tuple(self.face(i, x) for i in range(x.dim + 1))

    def vertex(self, x: EZ, p: int) -> EZ:
        while x.dim > 0:
            i = x.dim if p < x.dim else 0
            if p >= x.dim:
                p -= 1
            x = self.face(i, x)
        return x

    def vertices(self, x: EZ) -> tuple:
        return tuple(self.vertex(x, p).base for p in range(x.dim + 1))

    def simplices(self, m: int) -> list:
        """All m-simplices, degenerate ones included."""
        if m > self.dim_cap:
            raise CapExceeded(f"degree {m} above cap {self.dim_cap}")
        if m not in self._all:
            out = []
            for k in range(m + 1):
                for tok in self.nondeg[k]:
                    for s in surjections(m, k):
                        out.append(EZ(tok, s))
            self._all[m] = out
        return self._all[m]

    def count(self, m: int) -> int:
        return sum(len(self.nondeg[k]) * _binom(m, k) for k in range(m + 1))

    def counts(self) -> list:
        return [len(self.nondeg[m]) for m in range(self.dim_cap + 1)]

    def dimension(self) -> int:
        return max((m for m in self.nondeg if self.nondeg[m]), default=-1)

    def boundary_index(self, m: int) -> dict:
        """boundary tuple -> list of m-simplices (all, for m >= 1)."""
        key = ("all", m)
        if key not in self._index:
            idx = defaultdict(list)
            for x in self.simplices(m):
                idx[self.boundary(x) if m else ()].append(x)
            self._index[key] = idx
        return self._index[key]

    def nondeg_boundary_index(self, m: int) -> dict:
        key = ("nd", m)
        if key not in self._index:
            idx = defaultdict(list)
            for t in self.nondeg[m]:
                x = nd(t, m)
                idx[self.boundary(x) if m else ()].append(x)
            self._index[key] = idx
        return self._index[key]

    def restrict_cap(self, cap: int) -> "SimplicialSet":
        cap = min(cap, self.dim_cap)
        return SimplicialSet(
            cap,
            {m: self.nondeg[m] for m in range(cap + 1)},
            {t: f for t, f in self.faces.items() if self.dims[t] <= cap},
            self.name,
        )

    def sub(self, keep: Iterable, name: str = "") -> "SimplicialSet":
        """The simplicial subset on the given non-degenerate tokens."""
        keep = set(keep)
        for t in keep:
            if self.dims[t] > 0:
                for y in self.faces[t]:
                    if y.base not in keep:
                        raise ValueError(f"{t!r} has face {y!r} outside the subset")
        return SimplicialSet(
            self.dim_cap,
            {m: [t for t in self.nondeg[m] if t in keep] for m in self.nondeg},
            {t: f for t, f in self.faces.items() if t in keep},
            name,
        )

    # -- validation ----------------------------------------------------------
    def validate(self, max_degree: int | None = None) -> Report:
        """Exhaustive check of the simplicial identities up to ``max_degree``."""
        rep = Report(f"simplicial identities of {self.name or 'K'}")
        top = self.dim_cap if max_degree is None else min(max_degree, self.dim_cap)
        for t, fs in self.faces.items():
            m = self.dims[t]
            ok = len(fs) == m + 1 and all(
                y.dim == m - 1 and y.base in self.dims and self.dims[y.base] == y.base_dim
                for y in fs
            )
            rep.tick("face-table", ok, t)
        if not rep.ok:
            return rep
        for m in range(top + 1):
            for x in self.simplices(m):
                if m >= 2:
                    for j in range(m + 1):
                        for i in range(j):
                            lhs = self.face(i, self.face(j, x))
                            rhs = self.face(j - 1, self.face(i, x))
                            rep.tick("dd", lhs == rhs, (x, i, j))
                if m + 2 <= self.dim_cap:
                    for j in range(m + 1):
                        for i in range(j + 1):
                            lhs = self.degen(i, self.degen(j, x))
                            rhs = self.degen(j + 1, self.degen(i, x))
                            rep.tick("ss", lhs == rhs, (x, i, j))
                if m + 1 <= self.dim_cap:
                    for j in range(m + 1):
                        y = self.degen(j, x)
                        for i in range(m + 2):
                            lhs = self.face(i, y)
                            if i < j:
                                rhs = self.degen(j - 1, self.face(i, x)) if m >= 1 else None
                            elif i in (j, j + 1):
                                rhs = x
                            else:
                                rhs = self.degen(j, self.face(i - 1, x)) if m >= 1 else None
                            if rhs is not None:
                                rep.tick("ds", lhs == rhs, (x, i, j))
        return rep

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dimCap": self.dim_cap,
            "simplices": [[to_jsonable(t) for t in self.nondeg[m]] for m in range(self.dim_cap + 1)],
            "faces": {
                json.dumps(to_jsonable(t)):
                    [{"base": to_jsonable(y.base), "word": list(y.word)} for y in fs]
                for t, fs in self.faces.items()
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialSet":
        cap = data["dimCap"]
        nondeg = {m: [from_jsonable(t) for t in toks] for m, toks in enumerate(data["simplices"])}
        dims = {t: m for m, toks in nondeg.items() for t in toks}
        raw = data["faces"]
        items = ((json.loads(k), v) for k, v in raw.items()) if isinstance(raw, dict) else raw
        faces = {}
        for t, fs in items:
            t = from_jsonable(t)
            faces[t] = tuple(
                EZ(from_jsonable(y["base"]),
                   surj_of_word(y["word"], dims[from_jsonable(y["base"])]))
                for y in fs
            )
        return cls(cap, nondeg, faces)


def _binom(n, k):
    from math import comb

    return comb(n, k)


def from_concrete(
    cap: int,
    simplices: Callable[[int], Iterable],
    face: Callable,
    degen: Callable,
    name: str = "",
) -> SimplicialSet:
    """Build a simplicial set from concrete simplices and operators on them.

    ``simplices(m)`` must list every m-simplex (degenerate ones included);
    ``face(x, i)`` and ``degen(x, i)`` act on concrete values. Non-degenerate
    simplices keep their concrete value as token.
    """
    ez_of: dict = {}
    nondeg: dict = {}
    faces: dict = {}
    for m in range(cap + 1):
        nondeg[m] = []
        for c in simplices(m):
            if c in ez_of:
                continue
            found = None
            for j in range(m):
                y = face(c, j)
                if degen(y, j) == c:
                    found = (y, j)
                    break
            if found is None:
                nondeg[m].append(c)
                ez_of[c] = nd(c, m)
            else:
                y, j = found
                if y not in ez_of:
                    raise ValueError(f"face {y!r} of {c!r} was not enumerated")
                e = ez_of[y]
                ez_of[c] = EZ(e.base, compose(e.surj, codegeneracy(j, m - 1)))
        for c in nondeg[m]:
            if m > 0:
                fs = []
                for i in range(m + 1):
                    y = face(c, i)
                    if y not in ez_of:
                        raise ValueError(f"face {y!r} of {c!r} was not enumerated")
                    fs.append(ez_of[y])
                faces[c] = tuple(fs)
    K = SimplicialSet(cap, nondeg, faces, name)
    K.ez_of = ez_of
    K.concrete_of = {e: c for c, e in ez_of.items()}
    return K


# -- standard complexes -----------------------------------------------------

def nerve(P: Poset, cap: int, name: str = "") -> SimplicialSet:
    """N_1(P): non-degenerate m-simplices are strict chains with m+1 members."""
    nondeg = {m: [] for m in range(cap + 1)}
    faces = {}
    for c in P.chains():
        m = len(c) - 1
        if m <= cap:
            nondeg[m].append(c)
            if m:
                faces[c] = tuple(nd(c[:i] + c[i + 1:], m - 1) for i in range(m + 1))
    return SimplicialSet(cap, nondeg, faces, name or "nerve")


def nerve_map(g: PosetMap, K: SimplicialSet, L: SimplicialSet) -> "SimplicialMap":
    """N_1 of a monotone map between nerves K = N(source), L = N(target)."""
    asg = {}
    for t, m in K.dims.items():
        img = [g(x) for x in t]
        base = tuple(v for i, v in enumerate(img) if i == 0 or img[i - 1] != v)
        surj, k = [], -1
        for i, v in enumerate(img):
            if i == 0 or img[i - 1] != v:
                k += 1
            surj.append(k)
        asg[t] = EZ(base, tuple(surj))
    return SimplicialMap(K, L, asg)


def basic_complex(kind: str, n: int, k: int | None = None, cap: int | None = None) -> SimplicialSet:
    """Delta[n], its boundary, or its k-th horn."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cap = n if cap is None else cap
    if cap < n:
        raise ValueError("cap must be at least n")
    D = nerve(ordinal(n), cap, f"Delta[{n}]")
    top = tuple(range(n + 1))
    if kind == "standard":
        if k is not None:
            raise ValueError("k only applies to horns")
        return D
    if kind == "boundary":
        if k is not None:
            raise ValueError("k only applies to horns")
        return D.sub([t for t in D.dims if t != top], f"dDelta[{n}]")
    if kind == "horn":
        if k is None or n < 1 or not 0 <= k <= n:
            raise ValueError(f"invalid horn index k={k} for n={n}")
        face = tuple(i for i in range(n + 1) if i != k)
        return D.sub([t for t in D.dims if t not in (top, face)], f"Lambda^{k}[{n}]")
    raise ValueError(f"unknown complex kind {kind!r}")


def face_poset(K: SimplicialSet) -> Poset:
    """Non-degenerate simplices ordered by being a face; K must be an ordered complex."""
    verts = {}
    for t, m in K.dims.items():
        x = nd(t, m)
        if m > 0 and any(y.degenerate for y in K.boundary(x)):
            raise NotAComplex(f"{t!r} has a degenerate face")
        vs = K.vertices(x)
        if len(set(vs)) != len(vs):
            raise NotAComplex(f"{t!r} has repeated vertices")
        verts[t] = vs
    seen = {}
    for t, vs in verts.items():
        key = frozenset(vs)
        if key in seen:
            raise NotAComplex(f"{t!r} and {seen[key]!r} share a vertex set")
        seen[key] = t
    elems = [t for m in sorted(K.nondeg) for t in K.nondeg[m]]
    up = {}
    for t in elems:
        s = frozenset(verts[t])
        up[t] = frozenset(u for u in elems if s <= frozenset(verts[u]))
    return Poset._from_up(tuple(elems), up)


def sd(K: SimplicialSet, cap: int | None = None) -> SimplicialSet:
    """Barycentric subdivision: the nerve of the poset of non-degenerate faces."""
    return nerve(face_poset(K), K.dim_cap if cap is None else cap, f"Sd({K.name})")


def sd_map(f: "SimplicialMap", sK: SimplicialSet, sL: SimplicialSet) -> "SimplicialMap":
    """Sd on maps: a non-degenerate simplex goes to the base of its image."""
    PK, PL = face_poset(f.source), face_poset(f.target)
    g = PosetMap(PK, PL, {t: f.assignment[t].base for t in PK})
    return nerve_map(g, sK, sL)


# -- maps ---------------------------------------------------------------

class SimplicialMap:
    def __init__(self, source: SimplicialSet, target: SimplicialSet, assignment: dict):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)

    def __call__(self, x: EZ) -> EZ:
        return self.assignment[x.base].pull(x.surj)

    def __eq__(self, other):
        return isinstance(other, SimplicialMap) and self.assignment == other.assignment

    def __hash__(self):
        return hash(frozenset(self.assignment.items()))

    def __repr__(self):
        return f"SimplicialMap({self.source.name} -> {self.target.name})"

    def validate(self) -> Report:
        rep = Report("simplicial map")
        for t, m in self.source.dims.items():
            y = self.assignment.get(t)
            if not rep.tick("defined", y is not None and y.dim == m, t):
                continue
            if m:
                for i, fx in enumerate(self.source.faces[t]):
                    rep.tick("faces", self.target.face(i, y) == self(fx), (t, i))
        return rep

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        """self after inner."""
        return SimplicialMap(
            inner.source, self.target, {t: self(y) for t, y in inner.assignment.items()}
        )

    @classmethod
    def identity(cls, K: SimplicialSet) -> "SimplicialMap":
        return cls(K, K, {t: nd(t, m) for t, m in K.dims.items()})

    @classmethod
    def inclusion(cls, sub: SimplicialSet, K: SimplicialSet) -> "SimplicialMap":
        return cls(sub, K, {t: nd(t, m) for t, m in sub.dims.items()})

    def is_bijective(self, m: int) -> bool:
        imgs = [self(x) for x in self.source.simplices(m)]
        return len(set(imgs)) == len(imgs) == self.target.count(m)

    def bijectivity(self, upto: int) -> dict:
        return {m: self.is_bijective(m) for m in range(upto + 1)}


def hom_enumerate(K: SimplicialSet, L: SimplicialSet, cap: int | None = None,
                  budget: int | None = None) -> list:
    """All simplicial maps K -> L, by backtracking on non-degenerate simplices."""
    cap = min(K.dim_cap, L.dim_cap) if cap is None else cap
    if K.dimension() > cap:
        raise ValueError("K has non-degenerate simplices above the cap")
    limit = cell_budget(budget)
    order = [(t, m) for m in range(cap + 1) for t in K.nondeg[m]]
    out = []
    asg: dict = {}

    def image(y: EZ) -> EZ:
        return asg[y.base].pull(y.surj)

    def go(i):
        if i == len(order):
            out.append(SimplicialMap(K, L, asg))
            if len(out) > limit:
                raise BudgetExceeded(f"more than {limit} maps")
            return
        t, m = order[i]
        if m == 0:
            cands = L.simplices(0)
        else:
            cands = L.boundary_index(m).get(tuple(image(y) for y in K.faces[t]), ())
        for c in cands:
            asg[t] = c
            go(i + 1)
        asg.pop(t, None)

    go(0)
    return out


def _vertex_profiles(K: SimplicialSet) -> dict:
    prof = {v: Counter() for v in K.nondeg[0]}
    for t, m in K.dims.items():
        if m:
            for p, v in enumerate(K.vertices(nd(t, m))):
                prof[v][(m, p)] += 1
    return {v: tuple(sorted(c.items())) for v, c in prof.items()}


def _edge_counts(K: SimplicialSet) -> Counter:
    c = Counter()
    for t in K.nondeg.get(1, []):
        c[(K.faces[t][1].base, K.faces[t][0].base)] += 1
    return c


def _refine(colors, edges_out, edges_in):
    """Colour refinement on the 1-skeleton until the partition is stable."""
    colors = _canon(colors)
    while True:
        n_before = len(set(colors.values()))
        colors = {
            v: (colors[v],
                tuple(sorted(colors[w] for w in edges_out[v])),
                tuple(sorted(colors[w] for w in edges_in[v])))
            for v in colors
        }
        colors = _canon(colors)
        if len(set(colors.values())) == n_before:
            return colors


def _canon(colors):
    canon = {c: i for i, c in enumerate(sorted(set(colors.values()), key=repr))}
    return {v: canon[c] for v, c in colors.items()}


def iso_check(K: SimplicialSet, L: SimplicialSet, cap: int | None = None):
    """An isomorphism K -> L (up to cap) or None."""
    cap = min(K.dim_cap, L.dim_cap) if cap is None else cap
    if [len(K.nondeg[m]) for m in range(cap + 1)] != [len(L.nondeg[m]) for m in range(cap + 1)]:
        return None
    pk, pl = _vertex_profiles(K), _vertex_profiles(L)
    if sorted(pk.values()) != sorted(pl.values()):
        return None
    ek, el = _edge_counts(K), _edge_counts(L)

    def adj(E, verts):
        o, i = defaultdict(list), defaultdict(list)
        for (a, b), n in E.items():
            o[a] += [b] * n
            i[b] += [a] * n
        return o, i

    ko, ki = adj(ek, K.nondeg[0])
    lo, li = adj(el, L.nondeg[0])
    # joint refinement so that colors are comparable across K and L
    joint = {("K", v): repr(c) for v, c in pk.items()}
    joint.update({("L", v): repr(c) for v, c in pl.items()})
    jo = {("K", v): [("K", w) for w in ko[v]] for v in pk}
    jo.update({("L", v): [("L", w) for w in lo[v]] for v in pl})
    ji = {("K", v): [("K", w) for w in ki[v]] for v in pk}
    ji.update({("L", v): [("L", w) for w in li[v]] for v in pl})
    colors = _refine(joint, jo, ji)
    if Counter(c for (s, _), c in colors.items() if s == "K") != Counter(
        c for (s, _), c in colors.items() if s == "L"
    ):
        return None
    by_color = defaultdict(list)
    for v in L.nondeg[0]:
        by_color[colors[("L", v)]].append(v)
    # vertex order: BFS over the undirected 1-skeleton, rarest color first
    nbrs = defaultdict(set)
    for (a, b) in ek:
        nbrs[a].add(b)
        nbrs[b].add(a)
    ccount = Counter(colors[("K", v)] for v in K.nondeg[0])
    remaining = set(K.nondeg[0])
    vorder = []
    while remaining:
        start = min(remaining, key=lambda v: (ccount[colors[("K", v)]], K.nondeg[0].index(v)))
        queue = [start]
        remaining.discard(start)
        while queue:
            v = queue.pop(0)
            vorder.append(v)
            for w in sorted(nbrs[v] & remaining, key=lambda w: ccount[colors[("K", w)]]):
                remaining.discard(w)
                queue.append(w)
    higher = [(t, m) for m in range(1, cap + 1) for t in K.nondeg[m]]
    vmap: dict = {}
    used = set()
    asg: dict = {}

    lnbrs = defaultdict(set)
    for (a, b) in el:
        lnbrs[a].add(b)
        lnbrs[b].add(a)
    inv: dict = {}

    def vertex_ok(v, w):
        if ek.get((v, v), 0) != el.get((w, w), 0):
            return False
        for u in nbrs[v]:
            uw = vmap.get(u)
            if uw is not None and (ek.get((u, v), 0) != el.get((uw, w), 0)
                                   or ek.get((v, u), 0) != el.get((w, uw), 0)):
                return False
        return all(inv[x] in nbrs[v] for x in lnbrs[w] if x in inv)

    steps = [(v, 0) for v in vorder] + higher

    def candidates(i):
        t, m = steps[i]
        if m == 0:
            pool = by_color[colors[("K", t)]]
            anchor = next((vmap[u] for u in nbrs[t] if u in vmap), None)
            if anchor is not None:
                pool = [w for w in lnbrs[anchor] if colors[("L", w)] == colors[("K", t)]]
            return [nd(w, 0) for w in pool if w not in used and vertex_ok(t, w)]
        key = tuple(asg[y.base].pull(y.surj) for y in K.faces[t])
        return [c for c in L.nondeg_boundary_index(m).get(key, ()) if c.base not in used]

    def assign(i, c):
        t, m = steps[i]
        asg[t] = c
        used.add(c.base)
        if m == 0:
            vmap[t] = c.base
            inv[c.base] = t

    def unassign(i, c):
        t, m = steps[i]
        del asg[t]
        used.discard(c.base)
        if vmap.pop(t, None) is not None:
            del inv[c.base]

    if backtrack(len(steps), candidates, assign, unassign):
        return SimplicialMap(K.restrict_cap(cap), L.restrict_cap(cap), dict(asg))
    return None


def backtrack(n_steps: int, candidates, assign, unassign) -> bool:
    """Iterative depth-first search; stops at the first complete assignment."""
    if n_steps == 0:
        return True
    stack = [iter(candidates(0))]
    chosen = []
    while stack:
        i = len(stack) - 1
        if len(chosen) > i:
            unassign(i, chosen.pop())
        c = next(stack[-1], _END)
        if c is _END:
            stack.pop()
            continue
        assign(i, c)
        chosen.append(c)
        if i + 1 == n_steps:
            return True
        stack.append(iter(candidates(i + 1)))
    return False


_END = object()


# -- colimits and products ------------------------------------------------

def pushout_sset(f: SimplicialMap, g: SimplicialMap, cap: int | None = None):
    """Degree-wise pushout of B <- A -> C; returns (P, into_P_from_B, into_P_from_C)."""
    A, B, C = f.source, f.target, g.target
    if g.source is not A:
        raise ValueError("maps must share their source")
    cap = min(A.dim_cap, B.dim_cap, C.dim_cap) if cap is None else cap
    parent: dict = {}
    order: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if order[rb] < order[ra]:
                ra, rb = rb, ra
            parent[rb] = ra

    classes_by_deg = {}
    for m in range(cap + 1):
        for tag, K in (("B", B), ("C", C)):
            for x in K.simplices(m):
                key = (tag, x)
                parent[key] = key
                order[key] = len(order)
        for a in A.simplices(m):
            union(("B", f(a)), ("C", g(a)))
        classes_by_deg[m] = sorted({find(("B", x)) for x in B.simplices(m)}
                                   | {find(("C", x)) for x in C.simplices(m)}, key=order.get)

    ops = {"B": B, "C": C}

    def face(c, i):
        tag, x = c
        return find((tag, ops[tag].face(i, x)))

    def degen(c, i):
        tag, x = c
        return find((tag, ops[tag].degen(i, x)))

    P = from_concrete(cap, lambda m: classes_by_deg[m], face, degen,
                      f"{B.name}+{C.name}")
    iB = SimplicialMap(B.restrict_cap(cap), P, {t: P.ez_of[find(("B", nd(t, m)))]
                                                for t, m in B.dims.items() if m <= cap})
    iC = SimplicialMap(C.restrict_cap(cap), P, {t: P.ez_of[find(("C", nd(t, m)))]
                                                for t, m in C.dims.items() if m <= cap})
    P.pushout_find = find
    return P, iB, iC


def pushout_mediator(P: SimplicialSet, iB: SimplicialMap, iC: SimplicialMap,
                     h: SimplicialMap, k: SimplicialMap):
    """The unique map P -> X through which (h, k) factors, or None if not well defined."""
    asg = {}
    for inj, m_ in ((iB, h), (iC, k)):
        for m in range(P.dim_cap + 1):
            for x in inj.source.simplices(m):
                px = inj(x)
                if px.degenerate:
                    continue
                val = m_(x)
                if asg.setdefault(px.base, val) != val:
                    return None
    if set(asg) != set(P.dims):
        return None
    return SimplicialMap(P, h.target, asg)


def product(K: SimplicialSet, L: SimplicialSet, cap: int | None = None) -> SimplicialSet:
    cap = min(K.dim_cap, L.dim_cap) if cap is None else cap
    return from_concrete(
        cap,
        lambda m: [(x, y) for x in K.simplices(m) for y in L.simplices(m)],
        lambda c, i: (K.face(i, c[0]), L.face(i, c[1])),
        lambda c, i: (K.degen(i, c[0]), L.degen(i, c[1])),
        f"{K.name}x{L.name}",
    )


# -- homotopies -----------------------------------------------------------

def interval_simplex(m: int, i: int) -> EZ:
    """The m-simplex of Delta[1] sending p <= i to 0 and p > i to 1 (i in -1..m)."""
    if i < 0:
        return EZ((1,), (0,) * (m + 1))
    if i >= m:
        return EZ((0,), (0,) * (m + 1))
    return EZ((0, 1), tuple(0 if p <= i else 1 for p in range(m + 1)))


class SimplicialHomotopy:
    """A family h(j, x) raising degree by one, in the pinned convention.

    ``d0 h0 = g`` and ``d_{n+1} h_n = f``. Built either directly or from a
    map ``H : K x Delta[1] -> L`` given as a function on pairs of simplices.
    """

    def __init__(self, h: Callable):
        self.h = h

    def __call__(self, j, x):
        return self.h(j, x)

    @classmethod
    def from_product(cls, K_ops, H: Callable) -> "SimplicialHomotopy":
        # h_j(x) = H(s_j x, tau_j); tau_j is 0 on p <= j: its 0-end is the f side
        def h(j, x):
            m = _dim(x)
            return H(K_ops.degen(j, x), interval_simplex(m + 1, j))

        return cls(h)


def _dim(x):
    return x.dim if isinstance(x, EZ) else x.n


def homotopy_check(h, f: Callable, g: Callable, simplices: dict, src_ops, tgt_ops,
                   check_degeneracies: bool = True) -> Report:
    """Verify endpoint and face/degeneracy identities of ``h`` on the given simplices.

    ``simplices`` maps degree n to the n-simplices to test; ``*_ops`` provide
    ``face(i, x)`` and ``degen(i, x)``.
    """
    rep = Report("simplicial homotopy")
    for n, xs in sorted(simplices.items()):
        for x in xs:
            hs = [h(j, x) for j in range(n + 1)]
            rep.tick("endpoint-g", tgt_ops.face(0, hs[0]) == g(x), (n, x))
            rep.tick("endpoint-f", tgt_ops.face(n + 1, hs[n]) == f(x), (n, x))
            for j in range(n + 1):
                for i in range(n + 2):
                    if i < j:
                        rep.tick("d_i h_j = h_{j-1} d_i", tgt_ops.face(i, hs[j]) ==
                                 h(j - 1, src_ops.face(i, x)), (n, x, i, j))
                    elif i > j + 1:
                        rep.tick("d_i h_j = h_j d_{i-1}", tgt_ops.face(i, hs[j]) ==
                                 h(j, src_ops.face(i - 1, x)), (n, x, i, j))
                if j + 1 <= n:
                    rep.tick("d_{j+1} h_{j+1} = d_{j+1} h_j",
                             tgt_ops.face(j + 1, hs[j + 1]) == tgt_ops.face(j + 1, hs[j]),
                             (n, x, j))
            if not check_degeneracies:
                continue
            try:
                for j in range(n + 1):
                    for i in range(n + 2):
                        lhs = tgt_ops.degen(i, hs[j])
                        if i <= j:
                            rhs = h(j + 1, src_ops.degen(i, x))
                            rep.tick("s_i h_j = h_{j+1} s_i", lhs == rhs, (n, x, i, j))
                        else:
                            rhs = h(j, src_ops.degen(i - 1, x))
                            rep.tick("s_i h_j = h_j s_{i-1}", lhs == rhs, (n, x, i, j))
            except CapExceeded:
                pass
    return rep


def sd_horn_check(n: int, k: int | None = None) -> Report:
    """Sd^2 of the k-th horn (or of Delta[n] when k is None) against the nerve of chains.

    The expected poset is f(H_{k,n}) for a horn and f(f([n])) for the simplex.
    """
    if k is None:
        K = basic_complex("standard", n)
        P = chain_poset(chain_poset(ordinal(n)))
    else:
        K = basic_complex("horn", n, k)
        P = chain_poset(horn_poset(n, k))
    S2 = sd(sd(K))
    N = nerve(P, n)
    rep = Report(f"Sd^2 of {K.name}")
    rep.tick("counts", S2.counts() == N.counts(), None, f"{S2.counts()} vs {N.counts()}")
    iso = iso_check(S2, N)
    rep.tick("isomorphic", iso is not None, None)
    if iso is not None:
        rep.tick("iso is a valid map", iso.validate().ok)
        rep.tick("iso is bijective", all(iso.bijectivity(n).values()))
    rep.notes.append(f"non-degenerate counts {[len(N.nondeg[m]) for m in range(n + 1)]}")
    return rep
