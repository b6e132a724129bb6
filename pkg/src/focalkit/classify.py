"""Feature extraction and rule tables for 3-dimensional unions of lines and planes."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InapplicableError, InputError, NonGenericError
from .exactalg import LinSubspace, MPoly, RationalSampler, intersect_subspaces, nullspace, rank
from .exactalg.sampling import RETRIES
from .families import canonical_point, fiber_vars, random_base_point, union_dimension
from .focal import (
    characteristic_matrix,
    focal_divisor,
    focus_branches,
    focus_sweep_rank,
    same_locus,
    tangent_envelope,
    theoremB_matrix,
)
from .secondform import SurfacePatch, conjugate_direction, phi_test, second_form

C1_TANGENT_LINES = "c1-tangent-lines-of-surface"
C1_CONES = "c1-cones-over-curve-vertices-on-curve"
C2A = "c2a-bitangent"
C2B = "c2b-tangent-two-surfaces"
C2C = "c2c-tangent-surface-meets-curve"
C2D = "c2d-asymptotic"
C2E = "c2e-join"
C2F = "c2f-secant"
C2G = "c2g-band"
C2H = "c2h-cone-over-surface"
CONE_VERTEX_LINE = "c2-part2-cone-vertex-line"
CONE_OVER_DEVELOPABLE = "c2-part2-cone-over-developable"
OSCULATING_PLANES = "c2-part2-osculating-planes"
NONDEGENERATE = "nondegenerate"
INDETERMINATE = "indeterminate"

LABELS = (C1_TANGENT_LINES, C1_CONES, C2A, C2B, C2C, C2D, C2E, C2F, C2G, C2H,
          CONE_VERTEX_LINE, CONE_OVER_DEVELOPABLE, OSCULATING_PLANES, NONDEGENERATE, INDETERMINATE)


@dataclass(frozen=True)
class FeatureVector:
    """Discrete invariants of a line family, aggregated over random base points.

    Foci are listed by increasing multiplicity, then sweep rank.  ``same_branch``
    records whether the loci swept by two simple foci coincide (None if the
    probe was undecided or there are not two foci).
    """

    n: int
    foci_count: int
    multiplicities: tuple
    sweep_ranks: tuple
    fundamental_flags: tuple
    envelope_dim: int
    gauss_fiber_dim: int
    same_branch: object = None
    stable: bool = True

    def as_dict(self):
        return {
            "n": self.n,
            "foci_count": self.foci_count,
            "multiplicities": list(self.multiplicities),
            "sweep_ranks": list(self.sweep_ranks),
            "fundamental_flags": list(self.fundamental_flags),
            "envelope_dim": self.envelope_dim,
            "gauss_fiber_dim": self.gauss_fiber_dim,
            "same_branch": self.same_branch,
            "stable": self.stable,
        }


def _features_at(spec, t, branches, sampler):
    cm = characteristic_matrix(spec, t)
    div = focal_divisor(cm)
    if div.whole_fiber_focal:
        raise NonGenericError("the sampled line is focal")
    env = tangent_envelope(spec, t, sampler=sampler)
    foci = []
    for point, mult in div.roots:
        owner = next((b for b in branches if b.vanishes(t, point)), None)
        r = focus_sweep_rank(spec, owner, t) if owner is not None else None
        foci.append((mult, r, owner))
    if div.irrational:
        foci.extend((m * f.degree(), None, None) for f, m in div.irrational)
    foci.sort(key=lambda f: (f[0], -1 if f[1] is None else f[1]))
    return foci, env.projective_dim


def extract_features(spec, trials=3, sampler=None):
    if spec.k != 1:
        raise InapplicableError("feature vectors are defined for line families; use classify_plane_family")
    if spec.n + spec.k > 3:
        raise InapplicableError("classification is restricted to unions of dimension at most 3")
    sampler = sampler or RationalSampler(f"features:{spec.label}")
    branches = focus_branches(spec)
    seen = []
    last = None
    for _ in range(trials):
        for _ in range(RETRIES):
            t = random_base_point(spec, sampler)
            try:
                last = _features_at(spec, t, branches, sampler)
                break
            except NonGenericError:
                continue
        else:
            raise NonGenericError("no generic base point found")
        foci, env = last
        seen.append((tuple((m, r) for m, r, _ in foci), env))
    foci, env = last
    stable = len(set(seen)) == 1
    ranks = tuple(r for _, r, _ in foci)
    same = None
    if len(foci) == 2 and all(o is not None for _, _, o in foci):
        same = same_locus(spec, foci[0][2], foci[1][2])
    return FeatureVector(
        n=spec.n,
        foci_count=len(foci),
        multiplicities=tuple(m for m, _, _ in foci),
        sweep_ranks=ranks,
        fundamental_flags=tuple(r is not None and r < spec.n for r in ranks),
        envelope_dim=env,
        gauss_fiber_dim=1 if env == spec.n + spec.k else 0,
        same_branch=same,
        stable=stable,
    )


def classify_line_family(fv):
    """Rule table for line families with union of dimension n+1 <= 3."""
    if not fv.stable or None in fv.sweep_ranks:
        return INDETERMINATE
    if sum(fv.multiplicities) > fv.n or any(r > fv.n for r in fv.sweep_ranks):
        return INDETERMINATE
    mults = fv.multiplicities
    ranks = fv.sweep_ranks
    if fv.envelope_dim == 1:
        return NONDEGENERATE
    if fv.envelope_dim == 2 and mults == (1,):
        if ranks[0] == 2:
            return C1_TANGENT_LINES
        if fv.fundamental_flags[0]:
            return C1_CONES
        return INDETERMINATE
    if fv.envelope_dim == 3 and fv.n == 2:
        if mults == (1, 1):
            pair = tuple(sorted(ranks, reverse=True))
            if pair == (2, 2):
                return {True: C2A, False: C2B}.get(fv.same_branch, INDETERMINATE)
            if pair == (2, 1):
                return C2C
            if pair == (1, 1):
                return {True: C2F, False: C2E}.get(fv.same_branch, INDETERMINATE)
        if mults == (2,):
            return {2: C2D, 1: C2G, 0: C2H}.get(ranks[0], INDETERMINATE)
    return INDETERMINATE


# ---------------------------------------------------------------------------
# plane families

@dataclass(frozen=True)
class FocalLineData:
    """The focal line on each plane of a one-parameter family, as a swept patch."""

    patch: SurfacePatch
    lines: tuple


def _kernel_polys(alpha, params):
    """Two polynomial vectors spanning ker(alpha . x) at generic parameter values."""
    a0, a1, a2 = alpha
    z = MPoly(params)
    return [(a1, -a0, z), (a2, z, -a0), (z, a2, -a1)]


def focal_line_patch(spec, sampler=None):
    """Patch (t, s) -> q1(t) + s q2(t) swept by the focal lines of a family of planes."""
    if spec.k != 2 or spec.n != 1:
        raise InputError("focal lines are tracked for one-parameter families of planes")
    sampler = sampler or RationalSampler(f"focal-line:{spec.label}")
    lin = [b for b in focus_branches(spec) if b.x_degree == 1]
    if len(lin) != 1:
        raise InapplicableError("the focal locus on the general plane is not a single line")
    xs = fiber_vars(2)
    params = spec.params
    co = lin[0].factor.coefficients(xs)
    alpha = []
    for i in range(3):
        e = tuple(int(j == i) for j in range(3))
        alpha.append(co[e].with_vars(params) if e in co else MPoly(params))
    cands = _kernel_polys(alpha, params)
    t = random_base_point(spec, sampler)
    a = spec.assignment(t)
    chosen = None
    for i in range(3):
        for j in range(i + 1, 3):
            vals = [[c.eval(a) for c in cands[i]], [c.eval(a) for c in cands[j]]]
            if rank(vals) == 2:
                chosen = (cands[i], cands[j])
                break
        if chosen:
            break
    if chosen is None:
        raise NonGenericError("focal line degenerates at the sampled plane")

    def point(w):
        return [sum((w[b] * spec.span[b][i] for b in range(3)), MPoly(params)) for i in range(spec.N + 1)]

    q1, q2 = point(chosen[0]), point(chosen[1])
    uv = ("u", "v")
    rename = {params[0]: "u"}
    V = MPoly.var("v", uv)
    coords = tuple(_rename(c, rename, uv) + V * _rename(d, rename, uv) for c, d in zip(q1, q2))
    return FocalLineData(SurfacePatch(coords, uv, f"focal lines of {spec.label}"), (tuple(q1), tuple(q2)))


def _rename(p, mapping, target):
    names = tuple(mapping.get(v, v) for v in p.vars)
    return MPoly(names, p.terms).with_vars(target)


def _line_at(data, spec, t):
    a = spec.assignment(t)
    vecs = [[c.eval(a) for c in q] for q in data.lines]
    return LinSubspace.span(vecs, spec.N + 1)


def classify_plane_family(spec, trials=3, sampler=None):
    """Label a one-parameter family of planes whose union is a 3-fold with degenerate Gauss map."""
    if spec.k != 2 or spec.n != 1:
        raise InapplicableError("plane classification needs k = 2 and n = 1")
    sampler = sampler or RationalSampler(f"planes:{spec.label}")
    if union_dimension(spec, sampler=sampler).dim != 3:
        raise InapplicableError("the union of the planes is not 3-dimensional")
    t = random_base_point(spec, sampler)
    if theoremB_matrix(spec, t, sampler) is None:
        raise InapplicableError("the tangent space is not constant along the planes")
    div = focal_divisor(characteristic_matrix(spec, t))
    if div.whole_fiber_focal or div.degree != 1:
        raise InapplicableError("the focal locus on the plane is not a line")
    data = focal_line_patch(spec, sampler)
    lines = [_line_at(data, spec, random_base_point(spec, sampler)) for _ in range(max(trials, 2))]
    if all(L == lines[0] for L in lines):
        return CONE_VERTEX_LINE
    if phi_test(data.patch, sampler=sampler).label != "developable":
        return INDETERMINATE
    common = intersect_subspaces(lines)
    if common.dim == 1:
        return CONE_OVER_DEVELOPABLE
    if common.dim == 0:
        return OSCULATING_PLANES
    return INDETERMINATE


def classify(spec, trials=3, sampler=None):
    """Dispatch on the family type; returns (label, features or None)."""
    if spec.k == 1:
        fv = extract_features(spec, trials, sampler)
        return classify_line_family(fv), fv
    if spec.k == 2:
        return classify_plane_family(spec, trials, sampler), None
    raise InapplicableError("classification covers line and plane families only")


# ---------------------------------------------------------------------------
# focal surfaces of degenerate families

@dataclass(frozen=True)
class FocalSurfaceReport:
    applicable: bool
    phi_label: str = ""
    direction_ok: bool = False
    reason: str = ""

    @property
    def passed(self):
        return self.applicable and self.phi_label in ("developable", "phi") and self.direction_ok


def _conjugate_or_asymptotic(ii, w):
    conj = conjugate_direction(ii, w)
    return conj == "all" or bool(conj)


def _direction_in_patch(S, p, q):
    """(a:b) with q = c S + a S_u + b S_v at the patch point p, or None."""
    u, v = S.params
    frame = [S.eval(S.coords, p), S.eval(S.derivative(u), p), S.eval(S.derivative(v), p)]
    cols = [list(r) for r in zip(*frame)]
    rows = [c + [-Fraction(x)] for c, x in zip(cols, q)]
    sol = nullspace(rows, 4)
    for s in sol:
        if s[3]:
            return canonical_point([s[1] / s[3], s[2] / s[3]]) if s[1] or s[2] else None
    return None


def check_focal_surface_theorem(spec, sampler=None):
    """Check that a focal surface of a degenerate family is developable or a phi surface.

    Also checks that the direction of the line (or focal line) at the focus
    has a conjugate direction, or is asymptotic, for the surface.
    """
    sampler = sampler or RationalSampler(f"focal-surface:{spec.label}")
    if spec.k == 2 and spec.n == 1:
        data = focal_line_patch(spec, sampler)
        S = data.patch
        res = phi_test(S, sampler=sampler)
        ok = True
        for _ in range(3):
            ii = _sample_ii(S, sampler)
            ok = ok and _conjugate_or_asymptotic(ii, (0, 1))
        return FocalSurfaceReport(True, res.label, ok)
    if spec.k != 1 or spec.n != 2:
        return FocalSurfaceReport(False, reason="needs a two-parameter line family or a one-parameter plane family")
    t = random_base_point(spec, sampler)
    env = tangent_envelope(spec, t, sampler=sampler)
    surface = [b for b in focus_branches(spec)
               if b.point_map() is not None and focus_sweep_rank(spec, b, t) == 2]
    if not surface:
        return FocalSurfaceReport(False, reason="no focal branch sweeps a surface")
    b = surface[0]
    S = SurfacePatch(tuple(_rename(c, dict(zip(spec.params, ("u", "v"))), ("u", "v")) for c in b.point_map()),
                     ("u", "v"), f"focal surface of {spec.label}")
    res = phi_test(S, sampler=sampler)
    if env.projective_dim != 3:
        return FocalSurfaceReport(False, res.label, reason="the Gauss map of the union is nondegenerate")
    ok = True
    for _ in range(3):
        t = random_base_point(spec, sampler)
        ii = second_form(S, t)
        p = [c.eval(spec.assignment(t)) for c in b.point_map()]
        P = spec.span_at(t)
        q = P[0] if rank([p, P[0]]) == 2 else P[1]
        w = _direction_in_patch(S, t, q)
        ok = ok and w is not None and _conjugate_or_asymptotic(ii, w)
    return FocalSurfaceReport(True, res.label, ok)


def _sample_ii(S, sampler):
    for _ in range(RETRIES):
        try:
            return second_form(S, sampler.vector(2))
        except NonGenericError:
            continue
    raise NonGenericError("patch not immersive at sampled points")
