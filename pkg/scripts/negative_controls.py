"""Perturb valid tables, distortions, lax functors and homotopies; confirm every one is caught."""
import json
import sys
from collections import Counter
from dataclasses import asdict, dataclass

from _config import parse_config
from thoma2.controls import control_suite


@dataclass
class Config:
    """Negative-control sweep."""
    count: int = 50
    seed: int = 0
    json: bool = False


def main(argv=None) -> int:
    cfg = parse_config(Config, argv)
    results = control_suite(cfg.count, cfg.seed)
    caught = Counter(r.family for r in results if r.detected)
    total = Counter(r.family for r in results)
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "results": [asdict(r) for r in results]},
                         indent=2, default=repr))
    else:
        for r in results:
            print(r.line())
        for fam in sorted(total):
            print(f"{fam:12s} {caught[fam]}/{total[fam]}")
    missed = sum(total.values()) - sum(caught.values())
    print(f"detected {len(results) - missed}/{len(results)}", file=sys.stderr)
    return 0 if missed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
