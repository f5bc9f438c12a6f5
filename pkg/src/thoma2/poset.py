"""Finite posets, the chain functor f, closures, horns and collars.

Elements are arbitrary hashable tokens. A chain of ``P`` is stored as the tuple
of its members in increasing order, which is also its token in ``f(P)``; so
``f(f(P))`` has tuples of tuples as tokens.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping

from .report import Report

Token = Hashable


class GreatestElementMissing(ValueError):
    """A set that should have a greatest element does not."""


class Poset:
    """A finite partial order.

    ``leq`` may be any generating relation; the reflexive-transitive closure is
    taken on construction and antisymmetry is checked.
    """

    def __init__(self, elements: Iterable[Token], leq: Iterable[tuple] = ()):
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("duplicate element tokens")
        up: dict[Token, set] = {e: {e} for e in elements}
        for a, b in leq:
            if a not in index or b not in index:
                raise ValueError(f"relation ({a!r}, {b!r}) mentions unknown element")
            up[a].add(b)
        # closure in reverse topological-free way: iterate to fixpoint via DFS
        closed: dict[Token, frozenset] = {}

        def visit(x, stack):
            if x in closed:
                return closed[x]
            if x in stack:
                raise ValueError(f"relation is not antisymmetric near {x!r}")
            stack.add(x)
            acc = {x}
            for y in up[x]:
                if y != x:
                    acc |= visit(y, stack)
            stack.discard(x)
            closed[x] = frozenset(acc)
            return closed[x]

        for e in elements:
            visit(e, set())
        self._init(elements, closed)

    @classmethod
    def _from_up(cls, elements: tuple, up: Mapping[Token, frozenset]) -> "Poset":
        # trusted constructor: up[x] is the full up-set of x
        p = cls.__new__(cls)
        p._init(elements, dict(up))
        return p

    def _init(self, elements, up):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self._up = up
        down: dict[Token, set] = {e: set() for e in self.elements}
        for a, ups in up.items():
            for b in ups:
                down[b].add(a)
        self._down = {e: frozenset(s) for e, s in down.items()}
        self._chains = None

    # -- basic queries -------------------------------------------------------
    def le(self, a, b) -> bool:
        return b in self._up[a]

    def lt(self, a, b) -> bool:
        return a != b and b in self._up[a]

    def comparable(self, a, b) -> bool:
        return self.le(a, b) or self.le(b, a)

    def up(self, x) -> frozenset:
        return self._up[x]

    def down(self, x) -> frozenset:
        return self._down[x]

    @property
    def leq(self) -> frozenset:
        return frozenset((a, b) for a in self.elements for b in self._up[a])

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and set(self.elements) == set(other.elements)
            and all(self._up[e] == other._up[e] for e in self.elements)
        )

    def __hash__(self):
        return hash(frozenset(self.elements))

    def __repr__(self):
        return f"Poset({len(self)} elements)"

    def sort_key(self, x):
        return self.index[x]

    def chain_key(self, c: tuple):
        return (len(c), tuple(self.index[x] for x in c))

    def sorted_chain(self, members: Iterable[Token]) -> tuple:
        """Members of a chain in increasing order (duplicates removed)."""
        ms = sorted(set(members), key=self.index.__getitem__)
        for a, b in zip(ms, ms[1:]):
            if not self.le(a, b):
                raise ValueError(f"{a!r} and {b!r} are not comparable")
        return tuple(ms)

    def is_chain(self, c: tuple) -> bool:
        return len(c) > 0 and all(self.lt(a, b) for a, b in zip(c, c[1:]))

    def maximal(self) -> list:
        return [e for e in self.elements if len(self._up[e]) == 1]

    def minimal(self) -> list:
        return [e for e in self.elements if len(self._down[e]) == 1]

    def greatest(self):
        tops = [e for e in self.elements if len(self._down[e]) == len(self)]
        return tops[0] if tops else None

    def greatest_of(self, subset: Iterable[Token]):
        """The greatest element of ``subset`` or raise GreatestElementMissing."""
        s = set(subset)
        tops = [x for x in s if s <= self._down[x]]
        if len(tops) != 1:
            raise GreatestElementMissing(f"{len(s)}-element set has no greatest element")
        return tops[0]

    def subposet(self, subset: Iterable[Token]) -> "Poset":
        keep = set(subset)
        for x in keep:
            if x not in self.index:
                raise ValueError(f"{x!r} is not an element")
        elems = tuple(e for e in self.elements if e in keep)
        return Poset._from_up(elems, {e: self._up[e] & keep for e in elems})

    def without(self, removed: Iterable[Token]) -> "Poset":
        gone = set(removed)
        return self.subposet(e for e in self.elements if e not in gone)

    def is_connected(self) -> bool:
        if not self.elements:
            return True
        seen, todo = set(), [self.elements[0]]
        while todo:
            x = todo.pop()
            if x in seen:
                continue
            seen.add(x)
            todo.extend(self._up[x] | self._down[x])
        return len(seen) == len(self)

    def chains(self) -> list[tuple]:
        """All non-empty chains, sorted by length then by element index."""
        if self._chains is None:
            out = []

            def extend(c):
                out.append(c)
                for y in self._up[c[-1]]:
                    if y != c[-1]:
                        extend(c + (y,))

            for e in self.elements:
                extend((e,))
            out.sort(key=self.chain_key)
            self._chains = out
        return self._chains

    def chains_between(self, x, y) -> list[tuple]:
        """Chains with least member ``x`` and greatest member ``y``."""
        if not self.le(x, y):
            return []
        if x == y:
            return [(x,)]
        mids = [z for z in self._up[x] if z != x and z != y and self.le(z, y)]
        sub = sorted(mids, key=self.index.__getitem__)
        out = []
        for r in range(len(sub) + 1):
            for combo in itertools.combinations(sub, r):
                if all(self.lt(a, b) for a, b in zip(combo, combo[1:])):
                    out.append((x,) + combo + (y,))
        out.sort(key=self.chain_key)
        return out

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "elements": [to_jsonable(e) for e in self.elements],
            "leq": [
                [to_jsonable(a), to_jsonable(b)]
                for a in self.elements
                for b in sorted(self._up[a], key=self.index.__getitem__)
                if a != b
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Poset":
        return cls(
            (from_jsonable(e) for e in data["elements"]),
            ((from_jsonable(a), from_jsonable(b)) for a, b in data["leq"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def to_jsonable(tok):
    if isinstance(tok, tuple):
        return [to_jsonable(t) for t in tok]
    return tok


def from_jsonable(obj):
    if isinstance(obj, list):
        return tuple(from_jsonable(t) for t in obj)
    return obj


def ordinal(n: int) -> Poset:
    """The total order [n] = {0 < 1 < ... < n}."""
    if n < 0:
        raise ValueError("n must be non-negative")
    elems = tuple(range(n + 1))
    return Poset._from_up(elems, {i: frozenset(range(i, n + 1)) for i in elems})


def discrete(tokens: Iterable[Token]) -> Poset:
    return Poset(tokens)


@dataclass(frozen=True)
class PosetMap:
    source: Poset
    target: Poset
    assignment: Mapping

    def __post_init__(self):
        for x in self.source:
            if x not in self.assignment:
                raise ValueError(f"map undefined on {x!r}")
            if self.assignment[x] not in self.target:
                raise ValueError(f"{x!r} maps outside the target")

    def __call__(self, x):
        return self.assignment[x]

    def is_monotone(self) -> bool:
        return all(
            self.target.le(self.assignment[a], self.assignment[b])
            for a in self.source
            for b in self.source.up(a)
        )

    def non_monotone_pair(self):
        for a in self.source:
            for b in self.source.up(a):
                if not self.target.le(self.assignment[a], self.assignment[b]):
                    return (a, b)
        return None

    def compose(self, inner: "PosetMap") -> "PosetMap":
        """``self`` after ``inner``."""
        return PosetMap(inner.source, self.target, {x: self(inner(x)) for x in inner.source})

    @classmethod
    def identity(cls, P: Poset) -> "PosetMap":
        return cls(P, P, {x: x for x in P})

    @classmethod
    def inclusion(cls, sub: Poset, P: Poset) -> "PosetMap":
        return cls(sub, P, {x: x for x in sub})

    def chain_image(self, c: tuple) -> tuple:
        return self.target.sorted_chain(self(x) for x in c)


def chain_poset(P: Poset) -> Poset:
    """f(P): non-empty chains of P ordered by inclusion."""
    chains = P.chains()
    present = set(chains)
    down: dict[tuple, set] = {}
    for c in chains:
        subs = set()
        for r in range(1, len(c) + 1):
            subs.update(itertools.combinations(c, r))
        down[c] = subs
    up: dict[tuple, set] = {c: set() for c in chains}
    for c, subs in down.items():
        for s in subs:
            assert s in present
            up[s].add(c)
    return Poset._from_up(tuple(chains), {c: frozenset(u) for c, u in up.items()})


def chain_map(g: PosetMap) -> PosetMap:
    """f(g): a monotone map acts on chains by direct image."""
    fs, ft = chain_poset(g.source), chain_poset(g.target)
    return PosetMap(fs, ft, {c: g.chain_image(c) for c in fs})


def iterate_chain_poset(P: Poset, times: int) -> Poset:
    for _ in range(times):
        P = chain_poset(P)
    return P


def full_chain(n: int) -> tuple:
    return tuple(range(n + 1))


def face_chain(n: int, k: int) -> tuple:
    return tuple(i for i in range(n + 1) if i != k)


def horn_poset(n: int, k: int) -> Poset:
    """H_{k,n}: the non-degenerate simplices of the k-th horn of Delta[n]."""
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"horn index out of range: n={n}, k={k}")
    return chain_poset(ordinal(n)).without([full_chain(n), face_chain(n, k)])


def boundary_poset(n: int) -> Poset:
    """Non-degenerate simplices of the boundary of Delta[n]."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return chain_poset(ordinal(n)).without([full_chain(n)])


def _check_collar_input(P: Poset, top, k):
    if top not in P or P.greatest() != top:
        raise ValueError(f"{top!r} is not the greatest element")
    if not P.is_connected():
        raise ValueError("poset is not connected")
    rest = P.without([top])
    if k not in rest or k not in rest.maximal():
        raise ValueError(f"{k!r} is not maximal below the top")
    core = P.without([top, k])
    if len(core) == 0:
        raise ValueError("collar core is empty")
    return core


def collar(P: Poset, top, k) -> tuple[Poset, Poset]:
    """The k-horn H = f(P minus {k, top}) and the k-collar C, both inside f(P)."""
    core = _check_collar_input(P, top, k)
    fP = chain_poset(P)
    H = fP.subposet(chain_poset(core).elements)
    C = fP.without([(top,), (k,), (k, top)])
    return H, C


def collar_retraction(P: Poset, top, k) -> PosetMap:
    """r(x) = greatest element of (down x) intersected with H, on the collar C."""
    H, C = collar(P, top, k)
    fP = chain_poset(P)
    hset = set(H.elements)
    assignment = {}
    for x in C:
        below = fP.down(x) & hset
        if not below:
            raise GreatestElementMissing(f"no horn chain below {x!r}")
        assignment[x] = fP.greatest_of(below)
    return PosetMap(C, H, assignment)


def collar_check(P: Poset, top, k) -> Report:
    """Up-closure of the horn is the collar; r is a monotone retraction below the identity."""
    rep = Report(f"collar of {k!r} under {top!r}")
    H, C = collar(P, top, k)
    fP = chain_poset(P)
    hset, cset = set(H.elements), set(C.elements)
    rep.tick("up(H) = C", closure(fP, hset, "up") == cset, None,
             f"{len(closure(fP, hset, 'up'))} vs {len(cset)}")
    try:
        r = collar_retraction(P, top, k)
    except GreatestElementMissing as e:
        rep.tick("greatest element below", False, None, str(e))
        return rep
    for x in C:
        for y in C.up(x):
            rep.tick("monotone", fP.le(r(x), r(y)), (x, y))
        rep.tick("r(x) <= x", set(r(x)) <= set(x), x)
        rep.tick("r(r(x)) = r(x)", r(r(x)) == r(x), x)
    tail = {(top,), (k,), (k, top)}
    for x in H:
        rep.tick("fixes H", r(x) == x, x)
    for x in C:
        for cut in range(1, len(x)):
            head, rest = x[:cut], x[cut:]
            if rest in tail and head in hset:
                rep.tick("drops the tail", r(x) == head, x)
    return rep


def closure(P: Poset, S: Iterable[Token], side: str) -> frozenset:
    """Smallest up-closed (``side='up'``) or down-closed superset of S."""
    if side not in ("up", "down"):
        raise ValueError("side must be 'up' or 'down'")
    get = P.up if side == "up" else P.down
    out = set()
    for s in S:
        out |= get(s)
    return frozenset(out)


def is_down_closed(P: Poset, S) -> bool:
    S = set(S)
    return all(P.down(x) <= S for x in S)


def is_up_closed(P: Poset, S) -> bool:
    S = set(S)
    return all(P.up(x) <= S for x in S)


def monotone_maps(P: Poset, Q: Poset) -> list[dict]:
    """All monotone maps P -> Q by backtracking (a reference oracle)."""
    order = list(P.elements)
    out = []

    def go(i, asg):
        if i == len(order):
            out.append(dict(asg))
            return
        x = order[i]
        for y in Q:
            if all(
                Q.le(asg[a], y) for a in P.down(x) if a in asg
            ) and all(Q.le(y, asg[b]) for b in P.up(x) if b in asg):
                asg[x] = y
                go(i + 1, asg)
                del asg[x]

    go(0, {})
    return out
