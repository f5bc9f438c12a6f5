"""Run the acceptance suite and print one PASS/FAIL line per criterion."""
import sys
from dataclasses import dataclass
from pathlib import Path

import pytest

from _config import parse_config

ROOT = Path(__file__).resolve().parents[1]


@dataclass
class Config:
    """Acceptance run options."""
    select: str = ""  # pytest -k expression, e.g. "criterion_4"
    quiet: bool = False


def main(argv=None) -> int:
    cfg = parse_config(Config, argv)
    args = [str(ROOT / "tests" / "test_acceptance.py"), "-s", "-p", "no:cacheprovider"]
    args.append("-q" if cfg.quiet else "-v")
    if cfg.select:
        args += ["-k", cfg.select]
    return int(pytest.main(args))


if __name__ == "__main__":
    sys.exit(main())
