"""Run every verification suite on its default target at the given seeds."""

import argparse
import json

from focalkit.exactalg import RationalSampler
from focalkit.families import fixture
from focalkit.secondform import PATCHES
from focalkit.suites import DEFAULT_TARGETS, SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="emit one JSON object per run")
    args = ap.parse_args()

    failures = 0
    for seed in args.seeds:
        for name in SUITES:
            target = DEFAULT_TARGETS[name]
            obj = PATCHES[target]() if name == "phi" else fixture(target)
            res = run_suite(name, obj, args.trials, RationalSampler(seed))
            failures += not res.passed
            if args.json:
                print(json.dumps({"seed": seed, **res.as_dict()}, sort_keys=True))
            else:
                status = "ok" if res.passed else ("n/a" if not res.applicable else "FAIL")
                print(f"seed {seed}  {name:<14} {DEFAULT_TARGETS[name]:<9} {status}")
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
