"""focal-kit command line: analyze, classify, verify, fixtures.

Exit codes: 0 success, 1 input error, 2 hypothesis not applicable,
3 a verification check failed.
"""

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .classify import check_focal_surface_theorem, classify
from .errors import FocalFiberError, FocalKitError, InapplicableError, InputError, NonGenericError
from .exactalg import RationalSampler, render_rat
from .families import CATALOG, fixture, random_base_point, union_dimension
from .focal import characteristic_matrix, fixed_tangent_space, focal_divisor, tangent_envelope
from .parser import parse_family_file
from .secondform import PATCHES
from .suites import DEFAULT_TARGETS, SUITES, run_suite

EXIT_OK, EXIT_INPUT, EXIT_INAPPLICABLE, EXIT_FAILED = 0, 1, 2, 3
SEED_LIMIT = 2 ** 64


@dataclass(frozen=True)
class AnalysisRequest:
    command: str
    fixture: str = None
    input: str = None
    suite: str = None
    seed: int = 0
    trials: int = 3
    base: tuple = ()

    def __post_init__(self):
        if not 0 <= self.seed < SEED_LIMIT:
            raise InputError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.trials < 1:
            raise InputError("trials must be at least 1")
        if self.fixture and self.input:
            raise InputError("give either --fixture or --input, not both")

    def echo(self):
        d = asdict(self)
        d["base"] = [render_rat(x) for x in self.base]
        return d


def _load_family(req):
    if req.input:
        try:
            with open(req.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {req.input}: {exc.strerror}") from None
        except UnicodeDecodeError:
            raise InputError(f"{req.input} is not UTF-8 text") from None
        return parse_family_file(text, req.input)
    name = req.fixture
    if name is None:
        raise InputError("a family is required: --fixture ID or --input PATH")
    return fixture(name)


def _bases(req, spec):
    if not req.base:
        return None
    if len(req.base) != spec.n:
        raise InputError(f"--base needs {spec.n} values, got {len(req.base)}")
    return [tuple(req.base)]


def _analyze(req, sampler):
    spec = _load_family(req)
    bases = _bases(req, spec) or [random_base_point(spec, sampler) for _ in range(req.trials)]
    results = []
    for t in bases:
        cm = characteristic_matrix(spec, t)
        div = focal_divisor(cm)
        env = tangent_envelope(spec, t, sampler=sampler)
        entry = {
            "base": [render_rat(x) for x in t],
            "focal_divisor": str(div),
            "degree": div.degree,
            "whole_fiber_focal": div.whole_fiber_focal,
            "envelope": {
                "projective_dim": env.projective_dim,
                "basis": [[render_rat(x) for x in b] for b in env.subspace.basis],
            },
        }
        if spec.k == 1 and not div.whole_fiber_focal:
            entry["foci"] = [{"point": [render_rat(x) for x in p], "multiplicity": m} for p, m in div.roots]
            entry["fixed_tangent_dim"] = fixed_tangent_space(cm).projective_dim
        results.append(entry)
    return {
        "family": _family_doc(spec),
        "union_dimension": union_dimension(spec, sampler=sampler).dim,
        "results": results,
    }, EXIT_OK


def _family_doc(spec):
    return {"N": spec.N, "k": spec.k, "n": spec.n, "params": list(spec.params), "label": spec.label}


def _classify(req, sampler):
    spec = _load_family(req)
    label, fv = classify(spec, req.trials, sampler)
    doc = {"family": _family_doc(spec), "classification": label}
    if fv is not None:
        doc["features"] = fv.as_dict()
    try:
        rep = check_focal_surface_theorem(spec, sampler)
        doc["focal_surface"] = asdict(rep) | {"passed": rep.passed}
    except FocalKitError as exc:
        doc["focal_surface"] = {"applicable": False, "passed": False, "reason": str(exc)}
    return doc, EXIT_OK


def _verify(req, sampler):
    suite = req.suite
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    if suite == "phi":
        name = req.fixture or DEFAULT_TARGETS["phi"]
        if req.input or name not in PATCHES:
            raise InputError(f"the phi suite takes a surface patch: {', '.join(PATCHES)}")
        target = PATCHES[name]()
        bases = None
    else:
        if not req.fixture and not req.input:
            req = AnalysisRequest(**{**asdict(req), "fixture": DEFAULT_TARGETS[suite]})
        target = _load_family(req)
        bases = _bases(req, target)
    res = run_suite(suite, target, req.trials, sampler, bases)
    if not res.applicable:
        code = EXIT_INAPPLICABLE
    else:
        code = EXIT_OK if res.passed else EXIT_FAILED
    return {"verification": res.as_dict()}, code


def _fixtures(req, sampler):
    fams = []
    for name in CATALOG:
        spec = fixture(name)
        fams.append({"id": name} | _family_doc(spec))
    patches = [{"id": name, "N": PATCHES[name]().N} for name in PATCHES]
    return {"fixtures": fams, "patches": patches}, EXIT_OK


COMMANDS = {"analyze": _analyze, "classify": _classify, "verify": _verify, "fixtures": _fixtures}


def run(req):
    """Execute a request; returns (report dict, exit code).  Never raises on bad input."""
    sampler = RationalSampler(req.seed)
    report = {"tool": "focalkit", "version": __version__, "request": req.echo()}
    try:
        body, code = COMMANDS[req.command](req, sampler)
        report.update(body)
    except InputError as exc:
        report["error"] = {"kind": "input", "message": str(exc)}
        code = EXIT_INPUT
    except (InapplicableError, FocalFiberError) as exc:
        report["error"] = {"kind": "inapplicable", "message": str(exc)}
        code = EXIT_INAPPLICABLE
    except NonGenericError as exc:
        report["error"] = {"kind": "nongeneric", "message": str(exc)}
        code = EXIT_INAPPLICABLE
    report["exit_code"] = code
    return report, code


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _parse_base(text):
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid base point {text!r}") from None


def _seed(text):
    try:
        return int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None


def build_parser():
    p = argparse.ArgumentParser(prog="focal-kit", description="Focal loci of families of linear spaces.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--fixture", help="catalog family id (or surface patch for the phi suite)")
        sp.add_argument("--input", help="JSON family file")
        sp.add_argument("--seed", type=_seed, default=None, help="unsigned 64-bit seed (default: $FOCALKIT_SEED or 0)")
        sp.add_argument("--trials", type=int, default=3)
        sp.add_argument("--base", type=_parse_base, default=(), help="explicit base point t1,...,tn")
        sp.add_argument("--out", help="write the report here instead of stdout")

    common(sub.add_parser("analyze", help="focal divisor and tangent envelope at base points"))
    common(sub.add_parser("classify", help="label a 3-fold union of lines or planes"))
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    common(v)
    common(sub.add_parser("fixtures", help="list catalog families and surface patches"))
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    seed = args.seed
    try:
        if seed is None:
            seed = _seed(os.environ.get("FOCALKIT_SEED", "0"))
        req = AnalysisRequest(args.command, args.fixture, args.input, getattr(args, "suite", None),
                              seed, args.trials, tuple(args.base))
    except (InputError, argparse.ArgumentTypeError) as exc:
        print(f"focal-kit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report, code = run(req)
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if "error" in report:
        print(f"focal-kit: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
