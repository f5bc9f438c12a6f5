"""Acceptance criteria 1-11, one PASS/FAIL line each.

Counts marked as oracles are recomputed here by brute force over subsets,
independently of the library's poset and simplicial code.
"""

from __future__ import annotations

import itertools
import time

import pytest

from thoma2 import colim, cyl, exfun, homology, ideals, nlax, poset, sset, twocat
from thoma2.controls import FAMILIES, control_suite


# -- brute-force oracles --------------------------------------------------------------

def _nonempty_subsets(ground):
    ground = sorted(ground)
    return [frozenset(c) for r in range(1, len(ground) + 1)
            for c in itertools.combinations(ground, r)]


def _chains_by_length(elements, le):
    """Number of chains with 1, 2, ... elements in a finite poset given by le."""
    counts = []
    for r in range(1, len(elements) + 1):
        c = sum(1 for combo in itertools.combinations(elements, r)
                if all(le(a, b) or le(b, a) for a, b in itertools.combinations(combo, 2)))
        if c == 0:
            break
        counts.append(c)
    return counts


def _subset_le(a, b):
    return a <= b


def oracle_f2_counts(n):
    """Chains in the poset of chains of non-empty subsets of [n]."""
    f1 = _nonempty_subsets(range(n + 1))
    f2 = [frozenset(c) for r in range(1, len(f1) + 1) for c in itertools.combinations(f1, r)
          if all(a <= b or b <= a for a, b in itertools.combinations(c, 2))]
    return _chains_by_length(f2, _subset_le)


def oracle_f_horn_size(n, k):
    faces = [s for s in _nonempty_subsets(range(n + 1))
             if s != frozenset(range(n + 1)) and s != frozenset(range(n + 1)) - {k}]
    return sum(_chains_by_length(faces, _subset_le))


def test_oracles_agree_with_stated_counts():
    assert oracle_f2_counts(1)[0] == 5
    assert oracle_f2_counts(2) == [25, 60, 36]
    assert oracle_f_horn_size(2, 1) == 9


# -- criterion 1 ---------------------------------------------------------------------

def test_criterion_1_sd_horn(record):
    start = time.perf_counter()
    failures = []
    for n in range(4):
        r = sset.sd_horn_check(n)
        if not r.ok:
            failures.append(f"simplex {n}")
        for k in range(n + 1) if n >= 1 else ():
            r = sset.sd_horn_check(n, k)
            if not r.ok:
                failures.append(f"horn ({n},{k})")
    f2_1 = poset.iterate_chain_poset(poset.ordinal(1), 2)
    f2_2 = poset.iterate_chain_poset(poset.ordinal(2), 2)
    fh = poset.chain_poset(poset.horn_poset(2, 1))
    sd2 = sset.sd(sset.sd(sset.basic_complex("standard", 2)))
    nd = [len(sd2.nondeg[m]) for m in range(3)]
    counts_ok = (len(f2_1) == oracle_f2_counts(1)[0] == 5
                 and len(f2_2) == 25 and nd == oracle_f2_counts(2) == [25, 60, 36]
                 and nd[0] - nd[1] + nd[2] == 1
                 and len(fh) == oracle_f_horn_size(2, 1) == 9)
    elapsed = time.perf_counter() - start
    ok = not failures and counts_ok and elapsed < 60
    record(1, "Sd^2 of horns and simplices matches the chain-poset nerves", ok,
           f"counts {nd}, {elapsed:.1f}s, failures {failures}")
    assert ok, failures


# -- criterion 2 ---------------------------------------------------------------------

def test_criterion_2_collar(record):
    start = time.perf_counter()
    bad = []
    checked = 0
    for n in range(1, 4):
        P = poset.chain_poset(poset.ordinal(n))
        top = poset.full_chain(n)
        for k in range(n + 1):
            r = poset.collar_check(P, top, poset.face_chain(n, k))
            checked += sum(v for c, v in r.counts.items() if not c.endswith(":failed"))
            if not r.ok:
                bad.append((n, k, r.failures[:2]))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    record(2, "collar retraction exhaustive for n <= 3", ok,
           f"{checked} checks, {len(bad)} violations, {elapsed:.2f}s")
    assert ok, bad


# -- criterion 3 ---------------------------------------------------------------------

FAMILIES_7 = ("lf1", "lf2", "n1", "n2", "c1", "c2", "c3")


def test_criterion_3_skew_immersion(record):
    start = time.perf_counter()
    bad = []
    triples_n3 = []
    for n in range(1, 4):
        for k in range(n + 1):
            cert = ideals.horn_skew_immersion(n, k)
            r = ideals.verify_skew_immersion(cert, None if n <= 2 else 600, seed=k)
            fams = {c.split(":", 1)[1] for c in r.counts if c.startswith("distortion:")}
            if not r.ok or not set(FAMILIES_7) <= fams:
                bad.append((n, k, r.failures[:2]))
            if n == 3:
                triples_n3.append(r.counts.get("distortion:c1", 0))
    elapsed = time.perf_counter() - start
    ok = not bad and min(triples_n3) >= 500 and elapsed < 600
    record(3, "horn skew immersions pass all seven distortion families", ok,
           f"n=3 sampled triples {triples_n3}, {elapsed:.1f}s")
    assert ok, bad


# -- criterion 4 ---------------------------------------------------------------------

ETA_POSETS = {
    "[1]": lambda: poset.ordinal(1),
    "[2]": lambda: poset.ordinal(2),
    "f([1])": lambda: poset.chain_poset(poset.ordinal(1)),
    "f(H_{1,2})": lambda: poset.chain_poset(poset.horn_poset(2, 1)),
}


@pytest.mark.parametrize("label", list(ETA_POSETS))
def test_criterion_4_eta_iso(record, label):
    start = time.perf_counter()
    rep = nlax.eta_check(ETA_POSETS[label](), cap=3)
    elapsed = time.perf_counter() - start
    ok = rep.ok and elapsed < 120
    detail = f"{elapsed:.1f}s"
    if not rep.ok:
        detail += "; " + "; ".join(str(f) for f in rep.failures[:3])
    record(4, f"unit N1(P) -> N2(C2 N1 P) bijective up to degree 3 for P = {label}", ok, detail)
    assert ok, rep.summary()


# -- criterion 5 ---------------------------------------------------------------------

@pytest.mark.parametrize("n,k", [(1, 0), (1, 1), (2, 1)])
def test_criterion_5_vwb(record, n, k):
    start = time.perf_counter()
    cert = ideals.horn_skew_immersion(n, k)
    rep = colim.vwb_check(cert.B, cert.A_objs, cert.W_objs, cap=2)
    elapsed = time.perf_counter() - start
    ok = rep.ok and elapsed < 300
    record(5, f"nerve square is a pushout degree-wise for ({n},{k}) at cap 2", ok,
           f"{elapsed:.1f}s")
    assert ok, rep.summary()


# -- criterion 6 ---------------------------------------------------------------------

@pytest.mark.parametrize("kind", ["identity", "collapse", "walking"])
def test_criterion_6_pushout_stability(record, kind):
    start = time.perf_counter()
    cert = ideals.horn_skew_immersion(2, 1)
    F = colim.standard_target(cert.A, kind)
    PO, Jp, xi = colim.pushout_skew(cert, F)
    rep = ideals.verify_skew_immersion(Jp)
    rep.merge(colim.xi_well_defined(PO, cert.eps), "xi:")
    rep.merge(colim.quotient_iso_checks(cert, F, (PO, Jp, xi)), "quotients:")
    elapsed = time.perf_counter() - start
    ok = rep.ok and elapsed < 300
    record(6, f"pushout of the (2,1) skew immersion along the {kind} map", ok,
           f"{len(PO.objects())} objects, {elapsed:.1f}s")
    assert ok, rep.summary()


# -- criterion 7 ---------------------------------------------------------------------

@pytest.mark.parametrize("n,k,cap", [(1, 0, 3), (2, 1, 2)])
def test_criterion_7_sdr(record, n, k, cap):
    start = time.perf_counter()
    rep = exfun.sdr_witness_check(ideals.horn_skew_immersion(n, k), cap)
    elapsed = time.perf_counter() - start
    ok = rep.ok and elapsed < 600
    record(7, f"deformation retraction witness for ({n},{k}) at cap {cap}", ok,
           f"{elapsed:.1f}s")
    assert ok, rep.summary()


# -- criterion 8 ---------------------------------------------------------------------

PATH_TARGETS = {
    "terminal": twocat.terminal,
    "walking_2cell": twocat.walking_2cell,
    "materialized oriental(2)": lambda: twocat.materialize(twocat.oriental(2)),
}


@pytest.mark.parametrize("label", list(PATH_TARGETS))
def test_criterion_8_path_object(record, label):
    start = time.perf_counter()
    rep = cyl.path_object_check(PATH_TARGETS[label](), cap=2)
    elapsed = time.perf_counter() - start
    has_all = {"p o I = diagonal", "dom o I = id", "cod o I = id",
               "H output is a nerve simplex"} <= set(rep.counts)
    ok = rep.ok and has_all and elapsed < 600
    record(8, f"path object on {label} at cap 2", ok, f"{elapsed:.1f}s")
    assert ok, rep.summary()


# -- criterion 9 ---------------------------------------------------------------------

def test_criterion_9_right_homotopy(record):
    start = time.perf_counter()
    F, G, c0, c1 = cyl.example_lax_transformation()
    rep = cyl.right_homotopy_witness(F, G, c0, c1, cap=2)
    elapsed = time.perf_counter() - start
    ok = rep.ok and "p o abar = <F,G>" in rep.counts and elapsed < 60
    record(9, "a lax transformation into oriental(2) factors through the path object", ok,
           f"{elapsed:.1f}s")
    assert ok, rep.summary()


# -- criterion 10 --------------------------------------------------------------------

def test_criterion_10_homology(record):
    start = time.perf_counter()
    circle = homology.betti(sset.basic_complex("boundary", 2), 1)
    f2 = sset.nerve(poset.iterate_chain_poset(poset.ordinal(2), 2), 3)
    sd2 = homology.betti(f2, 2)
    cert = ideals.horn_skew_immersion(2, 1)
    F = colim.standard_target(cert.A, "collapse")
    comparison, _ = colim.nerve_comparison(cert.B, cert.A_objs, F, cap=3)
    probe = homology.homology_iso_probe(comparison, 2)
    elapsed = time.perf_counter() - start
    necessary_only = any("necessary" in n for n in probe.notes)
    ok = (circle == (1, 1) and sd2 == (1, 0, 0) and probe.ok and necessary_only
          and elapsed < 120)
    record(10, "homology probes (necessary condition only)", ok,
           f"circle {circle}, Sd^2 simplex {sd2}, comparison probe "
           f"{'iso' if probe.ok else 'not iso'} in degrees <= 2, {elapsed:.1f}s")
    assert ok, probe.summary()


# -- criterion 11 --------------------------------------------------------------------

def test_criterion_11_negative_controls(record):
    start = time.perf_counter()
    results = control_suite(50, seed=0)
    elapsed = time.perf_counter() - start
    detected = [r for r in results if r.detected and r.where not in ("", "-")]
    families = {r.family for r in results}
    ok = len(results) == 50 and len(detected) == 50 and families == set(FAMILIES) \
        and elapsed < 60
    record(11, "single-entry perturbations are caught with a location", ok,
           f"{len(detected)}/50 detected, {elapsed:.1f}s")
    assert ok, [r.line() for r in results if not r.detected]
