"""Print the classification of every catalog fixture, with and without a random
projective coordinate change, for a few seeds."""

import argparse

from focalkit.classify import classify
from focalkit.errors import FocalKitError
from focalkit.exactalg import RationalSampler
from focalkit.families import CATALOG, fixture


def label_of(spec, trials, sampler):
    try:
        return classify(spec, trials, sampler)[0]
    except FocalKitError as err:
        return f"({type(err).__name__})"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--trials", type=int, default=3)
    args = ap.parse_args()

    header = ["fixture"] + [f"seed {s}" for s in args.seeds] + ["moved"]
    print("  ".join(f"{h:<38}" for h in header))
    for name in CATALOG:
        spec = fixture(name)
        row = [label_of(spec, args.trials, RationalSampler(s)) for s in args.seeds]
        s = RationalSampler(args.seeds[0])
        row.append(label_of(spec.transformed(s.invertible_matrix(spec.N + 1)), args.trials, s))
        print("  ".join(f"{c:<38}" for c in [name] + row))


if __name__ == "__main__":
    main()
