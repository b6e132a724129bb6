"""Named verification suites run by ``focal-kit verify``.

Each suite returns a SuiteResult whose checks are plain (name, passed,
detail) records, so reports serialize without further conversion.
"""

from dataclasses import dataclass, field

from .errors import FocalFiberError, InapplicableError, NonGenericError
from .exactalg import render_rat
from .exactalg.sampling import RETRIES
from .families import random_base_point
from .focal import (
    characteristic_matrix,
    df_rank_oracle,
    fixed_tangent_space,
    focal_divisor,
    multiplicity_witness,
    rank_one_homs,
    tangent_envelope,
    theoremB_matrix,
    verify_focal_tangency,
)
from .secondform import conjugate_pair, phi_test, second_form


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    applicable: bool
    checks: tuple = ()
    reason: str = ""

    @property
    def passed(self):
        return self.applicable and bool(self.checks) and all(c.passed for c in self.checks)

    def as_dict(self):
        return {
            "suite": self.suite,
            "applicable": self.applicable,
            "passed": self.passed,
            "reason": self.reason,
            "checks": [c.as_dict() for c in self.checks],
        }


def _rats(v):
    return [render_rat(x) for x in v]


def _base_points(spec, trials, sampler, bases=None):
    if bases:
        return [tuple(b) for b in bases]
    return [random_base_point(spec, sampler) for _ in range(trials)]


def _nonfocal_cm(spec, t, sampler):
    """Characteristic matrix and divisor at t, resampling away from focal fibers."""
    for _ in range(RETRIES):
        cm = characteristic_matrix(spec, t)
        div = focal_divisor(cm)
        if not div.whole_fiber_focal:
            return t, cm, div
        t = random_base_point(spec, sampler)
    raise NonGenericError("every sampled fiber is entirely focal")


def _require_lines(spec, suite):
    if spec.k != 1:
        raise InapplicableError(f"{suite} is stated for families of lines")


def theorem_c(spec, trials, sampler, bases=None, fiber_samples=5):
    """deg(focal divisor) + 1 = dim fixed tangent space = dim tangent envelope, plus the df-rank oracle."""
    _require_lines(spec, "theoremC")
    checks = []
    for t in _base_points(spec, trials, sampler, bases):
        t, cm, div = _nonfocal_cm(spec, t, sampler)
        fixed = fixed_tangent_space(cm).projective_dim
        env = tangent_envelope(spec, t, sampler=sampler).projective_dim
        checks.append(Check("degree_vs_envelope", div.degree + 1 == fixed == env, {
            "base": _rats(t), "divisor": str(div), "degree": div.degree,
            "fixed_tangent_dim": fixed, "envelope_dim": env,
        }))
        checks.append(_kernel_check(spec, t, div, sampler, fiber_samples))
    return SuiteResult("theoremC", True, tuple(checks))


def _kernel_check(spec, t, div, sampler, fiber_samples):
    full = spec.n + spec.k + 1
    points = [r for r, _ in div.roots] + [sampler.projective_point(2) for _ in range(fiber_samples)]
    ok = True
    for x in points:
        drop = df_rank_oracle(spec, t, x) < full
        ok = ok and drop == div.vanishes_at(x)
    return Check("roots_vs_df_rank", ok, {"base": _rats(t), "points": len(points)})


def theorem_a(spec, trials, sampler, bases=None):
    rep = verify_focal_tangency(spec, trials, sampler)
    if not rep.applicable:
        return SuiteResult("theoremA", False, reason=rep.reason)
    checks = tuple(Check("plane_in_focal_tangent", ok, {"base": _rats(t)}) for t, ok in rep.verdicts)
    return SuiteResult("theoremA", True, checks)


def theorem_b(spec, trials, sampler, bases=None):
    checks = []
    for t in _base_points(spec, trials, sampler, bases):
        m = theoremB_matrix(spec, t, sampler)
        if m is None:
            return SuiteResult("theoremB", False, reason="the tangent space is not constant along the fiber")
        det = m.det()
        div = focal_divisor(characteristic_matrix(spec, t))
        same = (not det.is_zero() and not div.whole_fiber_focal
                and det.monic() == div.form.with_vars(det.vars).monic())
        checks.append(Check("det_is_focal_divisor", same and det.degree() == spec.n, {
            "base": _rats(t), "det": str(det), "divisor": str(div.form), "degree": det.degree(),
        }))
    return SuiteResult("theoremB", True, tuple(checks))


def bijection(spec, trials, sampler, bases=None):
    _require_lines(spec, "bijection")
    checks = []
    for t in _base_points(spec, trials, sampler, bases):
        t, cm, div = _nonfocal_cm(spec, t, sampler)
        homs = rank_one_homs(spec, t)
        if homs.pencil:
            return SuiteResult("bijection", False, reason="the rank-one homomorphisms form a pencil")
        foci = sorted(div.support())
        kernels = sorted(homs.kernels)
        checks.append(Check("foci_are_kernels", foci == kernels and len(foci) == len(homs.classes), {
            "base": _rats(t), "foci": [_rats(p) for p in foci], "kernels": [_rats(p) for p in kernels],
        }))
    return SuiteResult("bijection", True, tuple(checks))


def multiplicity(spec, trials, sampler, bases=None):
    _require_lines(spec, "multiplicity")
    checks = []
    for t in _base_points(spec, trials, sampler, bases):
        t, cm, div = _nonfocal_cm(spec, t, sampler)
        for point, mult in div.roots:
            w = multiplicity_witness(spec, t, point, sampler)
            checks.append(Check("witness_iff_multiple", (w is not None) == (mult >= 2), {
                "base": _rats(t), "focus": _rats(point), "multiplicity": mult, "witness": w is not None,
            }))
    if not checks:
        return SuiteResult("multiplicity", False, reason="no rational focal points")
    return SuiteResult("multiplicity", True, tuple(checks))


def phi(patch, trials, sampler, bases=None):
    res = phi_test(patch, trials, sampler)
    checks = [Check("phi_label", res.consistent and res.stable, {
        "label": res.label, "osc2_dims": list(res.osc2_dims),
    })]
    for _ in range(trials):
        ii = second_form(patch, sampler.vector(2))
        pair = conjugate_pair(ii)
        checks.append(Check("II_dimension_formula", ii.system_dim == ii.osc2_dim - 3, {
            "base": _rats(ii.base), "osc2_dim": ii.osc2_dim, "system_dim": ii.system_dim,
            "conjugate_pair": pair is not None,
        }))
    return SuiteResult("phi", True, tuple(checks))


def counterexample(spec, trials, sampler, bases=None):
    """A family of planes with a focal line on the general plane but no fixed tangent space."""
    checks = []
    for t in _base_points(spec, trials, sampler, bases):
        div = focal_divisor(characteristic_matrix(spec, t))
        env = tangent_envelope(spec, t, sampler=sampler).projective_dim
        checks.append(Check("focal_line_without_fixed_tangent",
                            not div.whole_fiber_focal and div.degree == 1 and env == spec.k, {
                                "base": _rats(t), "divisor": str(div.form), "degree": div.degree,
                                "envelope_dim": env,
                            }))
    return SuiteResult("counterexample", True, tuple(checks))


SUITES = {
    "theoremC": theorem_c,
    "theoremA": theorem_a,
    "theoremB": theorem_b,
    "bijection": bijection,
    "multiplicity": multiplicity,
    "phi": phi,
    "counterexample": counterexample,
}

DEFAULT_TARGETS = {
    "theoremC": "F1",
    "theoremA": "F10",
    "theoremB": "F5",
    "bijection": "F4",
    "multiplicity": "F8",
    "phi": "scroll",
    "counterexample": "F12",
}


def run_suite(name, target, trials, sampler, bases=None):
    try:
        return SUITES[name](target, trials, sampler, bases)
    except (InapplicableError, FocalFiberError) as exc:
        return SuiteResult(name, False, reason=str(exc))
