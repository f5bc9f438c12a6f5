"""Build an argparse CLI from a dataclass so every script shares one config style."""
import argparse
import dataclasses


def parse_config(cls, argv=None):
    p = argparse.ArgumentParser(description=(cls.__doc__ or "").strip())
    for f in dataclasses.fields(cls):
        flag = "--" + f.name.replace("_", "-")
        if f.type in (bool, "bool"):
            p.add_argument(flag, action="store_true", default=f.default)
        else:
            typ = {"int": int, "str": str, "float": float}.get(f.type, f.type)
            p.add_argument(flag, type=typ, default=f.default)
    return cls(**vars(p.parse_args(argv)))
