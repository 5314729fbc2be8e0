"""Turn a dataclass config into command-line flags."""
import argparse
import dataclasses


def parse(cls, argv=None):
    ap = argparse.ArgumentParser(description=cls.__doc__)
    for f in dataclasses.fields(cls):
        ap.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    return cls(**vars(ap.parse_args(argv)))
