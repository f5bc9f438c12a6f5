"""Seeded single-point perturbations used as negative controls for the validators.

Each control corrupts one entry of otherwise valid data and records whether the
matching validator reports a failure and where.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .cyl import Cyl, homotopy_Hni
from .ideals import Distortion, distortion_to_nlax, horn_skew_immersion, validate_distortion
from .nlax import N2Ops, NormalLaxFunctor, enumerate_simplices, validate_nlax
from .report import Report
from .sset import homotopy_check
from .twocat import (ExplicitTwoCategory, materialize, oriental, validate_two_category,
                     walking_2cell)

FAMILIES = ("tables", "distortion", "nlax", "homotopy")


@dataclass
class ControlResult:
    family: str
    seed: int
    description: str
    detected: bool
    where: str

    def line(self) -> str:
        status = "detected" if self.detected else "MISSED"
        return f"[{self.family} #{self.seed}] {status}: {self.description} @ {self.where}"


def _pick_other(rng: random.Random, pool, current):
    choices = [v for v in pool if v != current]
    return rng.choice(sorted(choices, key=repr)) if choices else None


def _first_failure(rep: Report) -> str:
    return str(rep.failures[0]) if rep.failures else "-"


# -- 2-category tables ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _base_tables() -> ExplicitTwoCategory:
    return materialize(oriental(2))


def perturb_tables(seed: int) -> ControlResult:
    rng = random.Random(seed)
    C = _base_tables().copy()
    name = rng.choice(["comp_table", "vcomp_table", "wpost_table", "wpre_table",
                       "id1_table", "id2_table"])
    table = getattr(C, name)
    key = rng.choice(sorted(table, key=repr))
    pool = C.all_arrows() if name in ("comp_table", "id1_table") else C.all_cells()
    new = _pick_other(rng, pool, table[key])
    table[key] = new
    rep = validate_two_category(C)
    return ControlResult("tables", seed, f"{name}[{key!r}] -> {new!r}", not rep.ok,
                         _first_failure(rep))


# -- distortions ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _base_distortion(n: int, k: int) -> Distortion:
    return horn_skew_immersion(n, k).eps.tabulate()


def _tables_of(d: Distortion):
    A = d.source
    arrows = A.all_arrows()
    c1 = {f: d.comp1(f) for f in arrows}
    c2 = {a: d.comp2(a) for a in A.all_cells()}
    L, R = {}, {}
    for f in arrows:
        for g in A.arrows_from(A.tgt(f)):
            L[(f, g)] = d.left(f, g)
            R[(f, g)] = d.right(f, g)
    return c1, c2, L, R


def perturb_distortion(seed: int) -> ControlResult:
    rng = random.Random(seed)
    n, k = rng.choice([(1, 0), (1, 1), (2, 1), (2, 0)])
    d = _base_distortion(n, k)
    B = d.target
    c1, c2, L, R = (dict(t) for t in _tables_of(d))
    which = rng.choice(["comp1", "comp2", "left", "right"])
    table = {"comp1": c1, "comp2": c2, "left": L, "right": R}[which]
    key = rng.choice(sorted(table, key=repr))
    old = table[key]
    if which == "comp1":
        # prefer a parallel 1-cell, so that only the axioms can notice
        pool = B.arrows(B.src(old), B.tgt(old))
        if len(pool) < 2:
            pool = B.all_arrows()
    else:
        pool = B.all_cells()
    table[key] = _pick_other(rng, pool, old)
    e = Distortion(d.F, d.G, c1.__getitem__, c2.__getitem__,
                   lambda f, g: L[(f, g)], lambda f, g: R[(f, g)], "eps*")
    rep = validate_distortion(e)
    return ControlResult("distortion", seed, f"({n},{k}) {which}[{key!r}] -> {table[key]!r}",
                         not rep.ok, _first_failure(rep))


# -- normal lax functors --------------------------------------------------------------

def perturb_nlax(seed: int) -> ControlResult:
    rng = random.Random(seed)
    n, k = rng.choice([(1, 0), (1, 1), (2, 1)])
    E = distortion_to_nlax(_base_distortion(n, k))
    A, B = E.source, E.target
    arr = {f: E.arr(f) for f in A.all_arrows()}
    cell = {a: E.cell(a) for a in A.all_cells()}
    gam = {(f, g): E.gamma(f, g) for f in A.all_arrows() for g in A.arrows_from(A.tgt(f))}
    which = rng.choice(["arr", "cell", "gamma"])
    if which == "arr":
        # only non-identity arrows: identities are pinned by normality anyway
        keys = [f for f in arr if f != A.id1(A.src(f))]
        table = arr
    elif which == "cell":
        keys, table = list(cell), cell
    else:
        keys, table = list(gam), gam
    key = rng.choice(sorted(keys, key=repr))
    old = table[key]
    pool = B.all_arrows() if which == "arr" else B.all_cells()
    table[key] = _pick_other(rng, pool, old)
    P = NormalLaxFunctor(A, B, E.obj, arr.__getitem__, cell.__getitem__,
                         lambda f, g: gam[(f, g)], "E*")
    rep = validate_nlax(P)
    detected, where = not rep.ok, _first_failure(rep)
    return ControlResult("nlax", seed, f"({n},{k}) {which}[{key!r}] -> {table[key]!r}",
                         detected, where)


# -- simplicial homotopies ------------------------------------------------------------

@lru_cache(maxsize=None)
def _homotopy_setup(kind: str):
    if kind == "path-walking":
        C = Cyl(walking_2cell())
        from .cyl import cyl_structure

        dom, _, I = cyl_structure(C)
        IDl = NormalLaxFunctor.of_functor(I.compose(dom))
        simp = enumerate_simplices(C, 2)
        ops = N2Ops(C)
        return homotopy_Hni(C), IDl.on_simplex, (lambda S: S), simp, ops
    from .ideals import distortion_to_sdr

    n, k = (1, 0) if kind == "sdr-10" else (2, 1)
    cert = horn_skew_immersion(n, k)
    h, f, g = distortion_to_sdr(cert.eps)
    simp = enumerate_simplices(cert.W, 2)
    return h, f, g, simp, N2Ops(cert.W)


def perturb_homotopy(seed: int) -> ControlResult:
    rng = random.Random(seed)
    kind = rng.choice(["path-walking", "sdr-10", "sdr-21"])
    h, f, g, simp, ops = _homotopy_setup(kind)
    degrees = [m for m in sorted(simp) if m + 1 in simp and simp[m]]
    m = rng.choice(degrees)
    S = rng.choice(simp[m])
    j = rng.randrange(m + 1)
    old = h(j, S)
    new = _pick_other(rng, simp[m + 1], old)

    def h2(jj, x):
        return new if (jj, x) == (j, S) else h(jj, x)

    rep = homotopy_check(h2, f, g, simp, ops, ops)
    return ControlResult("homotopy", seed, f"{kind} h({j}, degree-{m} simplex) replaced",
                         not rep.ok, _first_failure(rep))


RUNNERS = {"tables": perturb_tables, "distortion": perturb_distortion,
           "nlax": perturb_nlax, "homotopy": perturb_homotopy}


def control_suite(count: int = 50, seed: int = 0) -> list[ControlResult]:
    """``count`` perturbations cycling through the four validator families."""
    out = []
    for i in range(count):
        fam = FAMILIES[i % len(FAMILIES)]
        out.append(RUNNERS[fam](seed * 1000 + i))
    return out
