"""Command-line entry point: constructions and named verifications.

Exit codes: 0 all checks pass, 1 some check fails, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from .report import BudgetExceeded, Report

SCHEMA = "thoma2.report/1"

LEMMAS = ("sd-horn", "collar", "sieve", "skew-immersion", "vwb", "pushout-stability",
          "quotient-iso", "eta-iso", "path-object", "sdr", "right-homotopy")


class UsageError(ValueError):
    pass


# -- argument parsing helpers ---------------------------------------------------------

def load_poset(spec: str):
    """A poset from a JSON file or a shorthand: ordinal:N, f:N, f2:N, horn:N,K, fhorn:N,K."""
    from .poset import Poset, chain_poset, horn_poset, iterate_chain_poset, ordinal

    if os.path.exists(spec):
        with open(spec) as fh:
            return Poset.from_json(json.load(fh))
    kind, _, arg = spec.partition(":")
    try:
        nums = [int(a) for a in arg.split(",")] if arg else []
    except ValueError as e:
        raise UsageError(f"bad poset shorthand {spec!r}") from e
    if kind == "ordinal" and len(nums) == 1:
        return ordinal(nums[0])
    if kind == "f" and len(nums) == 1:
        return chain_poset(ordinal(nums[0]))
    if kind == "f2" and len(nums) == 1:
        return iterate_chain_poset(ordinal(nums[0]), 2)
    if kind == "horn" and len(nums) == 2:
        return horn_poset(*nums)
    if kind == "fhorn" and len(nums) == 2:
        return chain_poset(horn_poset(*nums))
    raise UsageError(f"unknown poset {spec!r}")


def load_twocat(spec: str):
    """oriental:N, walking, terminal, or chain:<poset spec>."""
    from .twocat import ChainTwoCategory, oriental, terminal, walking_2cell

    if spec == "walking":
        return walking_2cell()
    if spec == "terminal":
        return terminal()
    if spec.startswith("oriental:"):
        return oriental(int(spec.split(":", 1)[1]))
    if spec.startswith("chain:"):
        return ChainTwoCategory(load_poset(spec.split(":", 1)[1]))
    raise UsageError(f"unknown 2-category {spec!r}")


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n} is required here")


def _horn_pairs(args):
    if args.n < 1 or (args.k is not None and not 0 <= args.k <= args.n):
        raise UsageError(f"need n >= 1 and 0 <= k <= n, got n={args.n}, k={args.k}")
    if args.k is not None:
        return [(args.n, args.k)]
    return [(args.n, k) for k in range(args.n + 1)]


# -- verifications ---------------------------------------------------------------------

def verify(lemma: str, args) -> Report:
    from . import colim, cyl, exfun, ideals, nlax, poset, sset, twocat

    rep = Report(lemma)
    if lemma == "sd-horn":
        _need(args, "n")
        if args.k is None:
            rep.merge(sset.sd_horn_check(args.n), "simplex:")
        if args.n >= 1:
            for n, k in _horn_pairs(args):
                rep.merge(sset.sd_horn_check(n, k), f"horn {k}:")
    elif lemma == "collar":
        _need(args, "n")
        P = poset.chain_poset(poset.ordinal(args.n))
        top = poset.full_chain(args.n)
        ks = [poset.face_chain(n, k) for n, k in _horn_pairs(args)]
        for k in ks:
            rep.merge(poset.collar_check(P, top, k), f"{k}:")
    elif lemma == "sieve":
        _need(args, "n")
        P = poset.chain_poset(poset.ordinal(args.n))
        Q = poset.chain_poset(P)
        subsets = []
        for n, k in _horn_pairs(args):
            H, C = poset.collar(P, poset.full_chain(n), poset.face_chain(n, k))
            subsets += [H.elements, C.elements]
        rng = random.Random(args.seed)
        elems = list(Q.elements)
        for _ in range(10):
            subsets.append(rng.sample(elems, rng.randint(0, len(elems))))
        for x in rng.sample(elems, min(5, len(elems))):
            subsets += [Q.down(x), Q.up(x)]
        rep.merge(ideals.sieve_check(Q, subsets))
    elif lemma == "skew-immersion":
        _need(args, "n")
        for n, k in _horn_pairs(args):
            cert = ideals.horn_skew_immersion(n, k)
            sample = None if n <= 2 else args.sample
            rep.merge(ideals.verify_skew_immersion(cert, sample, args.seed), f"({n},{k}):")
    elif lemma == "vwb":
        _need(args, "n")
        for n, k in _horn_pairs(args):
            cert = ideals.horn_skew_immersion(n, k)
            rep.merge(colim.vwb_check(cert.B, cert.A_objs, cert.W_objs, args.cap, args.budget),
                      f"({n},{k}):")
    elif lemma in ("pushout-stability", "quotient-iso"):
        _need(args, "n")
        for n, k in _horn_pairs(args):
            cert = ideals.horn_skew_immersion(n, k)
            for kind in args.targets:
                F = colim.standard_target(cert.A, kind, args.budget)
                po = colim.pushout_skew(cert, F, args.budget)
                tag = f"({n},{k}) {kind}:"
                if lemma == "pushout-stability":
                    rep.merge(ideals.verify_skew_immersion(po[1]), tag + "J':")
                    rep.merge(colim.xi_well_defined(po[0], cert.eps), tag)
                rep.merge(colim.quotient_iso_checks(cert, F, po), tag)
    elif lemma == "eta-iso":
        P = load_poset(args.poset) if args.poset else poset.ordinal(args.n if args.n is not None else 1)
        rep.merge(nlax.eta_check(P, args.cap, args.budget))
    elif lemma == "path-object":
        A = load_twocat(args.twocat)
        if args.materialize:
            A = twocat.materialize(A, args.budget)
        rep.merge(cyl.path_object_check(A, args.cap, args.budget))
    elif lemma == "sdr":
        _need(args, "n")
        for n, k in _horn_pairs(args):
            cert = ideals.horn_skew_immersion(n, k)
            rep.merge(exfun.sdr_witness_check(cert, args.cap, args.budget), f"({n},{k}):")
    elif lemma == "right-homotopy":
        F, G, c0, c1 = cyl.example_lax_transformation()
        rep.merge(cyl.right_homotopy_witness(F, G, c0, c1, cap=args.cap, budget=args.budget))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown lemma {lemma!r}")
    return rep


# -- constructions ------------------------------------------------------------------------

def _complex(args):
    from .sset import basic_complex

    _need(args, "n")
    return basic_complex(args.kind, args.n, args.k if args.kind == "horn" else None,
                         max(args.n, args.cap if args.cap is not None else 0))


def construct(cmd: str, args) -> dict:
    from . import colim, exfun, homology, ideals, nlax, sset

    if cmd == "sd":
        K = sset.sd(_complex(args))
        if args.times > 1:
            for _ in range(args.times - 1):
                K = sset.sd(K)
        return {"name": K.name, "nondegenerate": [len(K.nondeg[m]) for m in sorted(K.nondeg)]}
    if cmd == "nerve":
        P = load_poset(args.poset or f"f:{args.n if args.n is not None else 1}")
        K = sset.nerve(P, args.cap)
        return {"poset": P.to_json(), "nondegenerate": [len(K.nondeg[m]) for m in sorted(K.nondeg)]}
    if cmd == "n2":
        A = load_twocat(args.twocat)
        K = nlax.n2(A, args.cap, args.budget)
        return {"twocat": A.name, "nondegenerate": [len(K.nondeg[m]) for m in sorted(K.nondeg)],
                "all": [K.count(m) for m in range(args.cap + 1)]}
    if cmd == "c2":
        C = nlax.c2_poset(load_poset(args.poset or f"f:{args.n if args.n is not None else 1}"))
        return {"twocat": C.to_json(), "counts": list(C.cell_counts())}
    if cmd == "ex":
        K = _complex(args)
        E = exfun.ex(K, args.cap, args.budget)
        if args.times > 1:
            for _ in range(args.times - 1):
                E = exfun.ex(E, args.cap, args.budget)
        return {"name": E.name, "all": [E.count(m) for m in range(args.cap + 1)]}
    if cmd == "homology":
        if args.poset:
            K = sset.nerve(load_poset(args.poset), args.cap + 1)
        else:
            K = _complex(args)
        H = homology.homology(K, args.cap, assume_complete=True)
        return {"name": K.name, "betti": [b for b, _ in H], "torsion": [t for _, t in H]}
    if cmd in ("pushout", "quotient"):
        _need(args, "n", "k")
        cert = ideals.horn_skew_immersion(args.n, args.k)
        if cmd == "quotient":
            Q, star = colim.quotient(cert.B, cert.A_objs, args.budget)
            return {"objects": len(Q.objects()), "cell_counts": list(Q.cell_counts()),
                    "basepoint": list(star)}
        F = colim.standard_target(cert.A, args.targets[0], args.budget)
        PO, Jp, _ = colim.pushout_skew(cert, F, args.budget)
        return {"target": args.targets[0], "objects": len(PO.objects()),
                "cell_counts": list(PO.cell_counts()), "A'": len(Jp.A_objs), "W'": len(Jp.W_objs)}
    raise UsageError(f"unknown command {cmd!r}")


# -- entry point -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thoma2", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--cap", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None,
                        help="cell budget (default from THOMA2_BUDGET or 50000)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--poset", help="JSON file or shorthand such as f:2, f2:1, fhorn:2,1")
    common.add_argument("--twocat", default="oriental:2",
                        help="oriental:N, walking, terminal or chain:<poset>")
    common.add_argument("--kind", default="standard", choices=["standard", "boundary", "horn"])
    common.add_argument("--times", type=int, default=1, help="iterate sd/ex this many times")
    common.add_argument("--target", dest="targets", action="append",
                        choices=["identity", "collapse", "walking"])
    common.add_argument("--sample", type=int, default=600,
                        help="sampled composable triples for n >= 3 certificates")
    common.add_argument("--materialize", action="store_true",
                        help="tabulate the 2-category before checking")
    sub = p.add_subparsers(dest="cmd", required=True)
    for name in ("sd", "nerve", "n2", "c2", "ex", "homology", "pushout", "quotient"):
        sub.add_parser(name, parents=[common])
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("lemma", choices=LEMMAS)
    return p


_DEFAULT_CAP = {"ex": 2, "sdr": 3, "vwb": 2, "path-object": 2, "right-homotopy": 2,
                "eta-iso": 3, "homology": 2}


def _emit(payload: dict, as_json: bool, text: str):
    if as_json:
        print(json.dumps(payload, indent=2, default=repr))
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 2
    key = args.lemma if args.cmd == "verify" else args.cmd
    if args.cap is None:
        args.cap = _DEFAULT_CAP.get(key, 3)
    if args.targets is None:
        args.targets = ["identity", "collapse", "walking"]
    params = {k: v for k, v in vars(args).items() if k not in ("cmd", "lemma", "json")}
    start = time.perf_counter()
    try:
        if args.cmd == "verify":
            rep = verify(args.lemma, args)
            status = "PASS" if rep.ok else "FAIL"
            payload = {"schema": SCHEMA, "lemma": args.lemma, "parameters": params,
                       "status": status, "report": rep.to_json(),
                       "seconds": round(time.perf_counter() - start, 3)}
            _emit(payload, args.json, f"{rep.summary()}\n{status} {args.lemma}")
            return 0 if rep.ok else 1
        result = construct(args.cmd, args)
        payload = {"schema": SCHEMA, "command": args.cmd, "parameters": params,
                   "result": result, "seconds": round(time.perf_counter() - start, 3)}
        _emit(payload, args.json, json.dumps(result, default=repr))
        return 0
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
