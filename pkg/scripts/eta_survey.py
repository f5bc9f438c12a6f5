"""Survey the unit N(P) -> N2(C2 N P) over small posets.

For each poset, record the length of its longest chain and whether the unit is
bijective in every degree up to the cap. The expected pattern is that the unit
is an isomorphism exactly when no chain has three or more elements.
"""
import json
import random
import sys
from dataclasses import asdict, dataclass

from _config import parse_config
from thoma2.nlax import eta_check
from thoma2.poset import Poset, ordinal


@dataclass
class Config:
    """Unit survey over ordinals and random posets."""
    max_ordinal: int = 3
    random_posets: int = 12
    max_size: int = 4
    cap: int = 3
    seed: int = 0
    json: bool = False


def random_poset(rng: random.Random, n: int) -> Poset:
    rel = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.4]
    return Poset(range(n), rel)


def longest_chain(P: Poset) -> int:
    return max((len(c) for c in P.chains()), default=0)


def main(argv=None) -> int:
    cfg = parse_config(Config, argv)
    rng = random.Random(cfg.seed)
    cases = [(f"[{n}]", ordinal(n)) for n in range(cfg.max_ordinal + 1)]
    cases += [(f"random#{i}", random_poset(rng, rng.randint(1, cfg.max_size)))
              for i in range(cfg.random_posets)]
    rows, agree = [], True
    for name, P in cases:
        rep = eta_check(P, cfg.cap)
        height = longest_chain(P)
        predicted = height < 3
        agree &= predicted == rep.ok
        rows.append({"poset": name, "size": len(P), "longest_chain": height,
                     "iso": rep.ok, "predicted": predicted,
                     "first_failure": None if rep.ok else str(rep.failures[0].detail)})
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
    else:
        for r in rows:
            print(f"{r['poset']:10s} |P|={r['size']} chain={r['longest_chain']} "
                  f"iso={r['iso']!s:5s} predicted={r['predicted']!s:5s}"
                  + (f"  ({r['first_failure']})" if r["first_failure"] else ""))
        print("pattern holds" if agree else "pattern BROKEN")
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())
