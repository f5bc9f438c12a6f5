"""Integral homology of iterated subdivisions and chain-poset nerves.

Subdivision and the chain-poset construction preserve homotopy type, so the
Betti numbers printed here should not change with the iteration count.
"""
import json
import sys
from dataclasses import asdict, dataclass

from _config import parse_config
from thoma2.homology import homology
from thoma2.poset import boundary_poset, iterate_chain_poset, ordinal
from thoma2.sset import basic_complex, nerve, sd


@dataclass
class Config:
    """Homology probe settings."""
    n: int = 2
    times: int = 2
    json: bool = False


def main(argv=None) -> int:
    cfg = parse_config(Config, argv)
    rows = []
    K = basic_complex("boundary", cfg.n)
    for t in range(cfg.times + 1):
        rows.append({"space": f"sd^{t} boundary[{cfg.n}]",
                     "homology": homology(K, cfg.n - 1, assume_complete=True)})
        K = sd(K)
    for t in range(cfg.times + 1):
        for label, P in ((f"[{cfg.n}]", ordinal(cfg.n)), (f"boundary[{cfg.n}]", boundary_poset(cfg.n))):
            Q = iterate_chain_poset(P, t)
            rows.append({"space": f"N f^{t} {label}",
                         "homology": homology(nerve(Q, len(Q)), cfg.n - 1, assume_complete=True)})
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
    else:
        for r in rows:
            groups = ["+".join(([f"Z^{b}"] if b else []) + [f"Z/{d}" for d in tors]) or "0"
                      for b, tors in r["homology"]]
            print(f"{r['space']:28s} {'  '.join(groups)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
