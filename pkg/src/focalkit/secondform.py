"""Second fundamental form of parametrized surfaces.

II is computed in the frame (S, S_u, S_v): second derivatives are reduced
modulo the tangent span, and each normal coordinate contributes one binary
quadric A du^2 + 2B du dv + C dv^2.  No metric is involved anywhere.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InapplicableError, NonGenericError
from .exactalg import LinSubspace, MPoly, RationalSampler, factor_binary_form, gcd_polys, nullspace, rank, rref
from .exactalg.sampling import RETRIES
from .families import FamilySpec, canonical_point
from .focal.charmatrix import QuotientBasis


@dataclass(frozen=True, eq=False)
class SurfacePatch:
    coords: tuple
    params: tuple = ("u", "v")
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(
            c.with_vars(tuple(dict.fromkeys(self.params + c.vars))) if isinstance(c, MPoly)
            else MPoly.const(c, self.params) for c in self.coords))

    @property
    def N(self):
        return len(self.coords) - 1

    def derivative(self, *names):
        out = list(self.coords)
        for nm in names:
            out = [c.diff(nm) for c in out]
        return out

    def eval(self, coords, p):
        a = dict(zip(self.params, (Fraction(x) for x in p)))
        return [c.eval(a) for c in coords]


def veronese():
    U, V = MPoly.gens("u", "v")
    return SurfacePatch((MPoly.const(1, ("u", "v")), U, V, U * U, U * V, V * V), label="veronese")


def scroll():
    U, V = MPoly.gens("u", "v")
    return SurfacePatch((MPoly.const(1, ("u", "v")), U, V, U * U, U * V), label="scroll")


def scroll5():
    """A scroll in P^5 whose rulings are the v-lines; second osculating spaces are P^4."""
    U, V = MPoly.gens("u", "v")
    return SurfacePatch((MPoly.const(1, ("u", "v")), U, V, U * U, U * V, U ** 3), label="scroll5")


def developable():
    """Tangent developable of the twisted cubic, C(t) + s C'(t), in P^3."""
    T, S = MPoly.gens("u", "v")
    C = [MPoly.const(1, ("u", "v")), T, T * T, T ** 3]
    return SurfacePatch(tuple(c + S * c.diff("u") for c in C), label="developable")


PATCHES = {"veronese": veronese, "scroll": scroll, "scroll5": scroll5, "developable": developable}


@dataclass(frozen=True)
class IIData:
    base: tuple
    frame: tuple
    quadrics: tuple
    osc2_dim: int

    @property
    def system_dim(self):
        """Projective dimension of the linear system |II|."""
        return rank([list(q) for q in self.quadrics]) - 1 if self.quadrics else -1

    def independent_quadrics(self):
        red, _ = rref([list(q) for q in self.quadrics], 3) if self.quadrics else ([], [])
        return [tuple(r) for r in red]

    def pairing(self, w, w2):
        """II(w, w2) as a vector over the normal coordinates."""
        a, b = (Fraction(x) for x in w)
        c, d = (Fraction(x) for x in w2)
        return [A * a * c + B * (a * d + b * c) + C * b * d for A, B, C in self.quadrics]


def second_form(S, p):
    """II of the patch at parameter value p."""
    p = tuple(Fraction(x) for x in p)
    u, v = S.params
    frame = [S.eval(S.coords, p), S.eval(S.derivative(u), p), S.eval(S.derivative(v), p)]
    if rank(frame) < 3:
        raise NonGenericError(f"patch is not immersive at {p}")
    second = [S.eval(S.derivative(u, u), p), S.eval(S.derivative(u, v), p), S.eval(S.derivative(v, v), p)]
    qb = QuotientBasis.of(frame)
    red = [qb.reduce(w) for w in second]
    quadrics = tuple((red[0][i], red[1][i], red[2][i]) for i in range(len(qb.indices)))
    quadrics = tuple(q for q in quadrics if any(q))
    osc2 = rank(frame + second) - 1
    return IIData(p, tuple(tuple(r) for r in frame), quadrics, osc2)


def conjugate_direction(ii, w):
    """Directions w2 with II(w, w2) = 0: [] (none), [d] (one), or "all"."""
    a, b = (Fraction(x) for x in w)
    eqs = [[A * a + B * b, B * a + C * b] for A, B, C in ii.quadrics]
    eqs = [e for e in eqs if any(e)]
    ker = nullspace(eqs, 2) if eqs else nullspace([], 2)
    if len(ker) == 2:
        return "all"
    return [canonical_point(k) for k in ker]


def _binary(q, names=("du", "dv")):
    A, B, C = q
    du, dv = MPoly.gens(*names)
    return du * du * A + du * dv * (2 * B) + dv * dv * C


def asymptotic_directions(ii):
    """Common zeros of II(w, w): list of ((du:dv), mult), or "all" for the zero system."""
    forms = [_binary(q) for q in ii.independent_quadrics()]
    if not forms:
        return "all"
    g = gcd_polys(forms).with_vars(("du", "dv"))
    if g.degree() <= 0:
        return []
    roots, irr = factor_binary_form(g, "du", "dv")
    out = [(r, m) for r, m in roots]
    out.extend((f, m) for f, m in irr)
    return out


def conjugate_pair(ii):
    """The unique conjugate pair of a pencil, as ((w1, w2), degenerate) or None.

    For a pencil of binary quadrics the pair is the zero set of the Jacobian
    of two generators; a double root means one asymptotic direction.
    """
    qs = ii.independent_quadrics()
    if len(qs) != 2:
        return None
    f, g = _binary(qs[0]), _binary(qs[1])
    jac = f.diff("du") * g.diff("dv") - f.diff("dv") * g.diff("du")
    if jac.is_zero():
        return None
    roots, irr = factor_binary_form(jac, "du", "dv")
    if irr:
        return ((irr[0][0], irr[0][0]), False)
    if len(roots) == 1:
        return ((roots[0][0], roots[0][0]), True)
    return ((roots[0][0], roots[1][0]), False)


@dataclass(frozen=True)
class PhiResult:
    label: str
    osc2_dims: tuple
    consistent: bool
    stable: bool


def phi_test(S, trials=5, sampler=None):
    """developable / phi / general from the second osculating dimension at random points."""
    sampler = sampler or RationalSampler(f"phi:{S.label}")
    dims = []
    consistent = True
    for _ in range(trials):
        for _ in range(RETRIES):
            try:
                ii = second_form(S, sampler.vector(2))
                break
            except NonGenericError:
                continue
        else:
            raise NonGenericError("patch not immersive at sampled points")
        dims.append(ii.osc2_dim)
        pair = conjugate_pair(ii)
        if ii.osc2_dim == 4:
            consistent = consistent and pair is not None
        elif ii.osc2_dim == 5:
            consistent = consistent and conjugate_direction(ii, (1, 0)) == [] and pair is None
    generic = max(dims)
    label = {3: "developable", 4: "phi", 5: "general"}.get(generic, "developable" if generic < 3 else "general")
    return PhiResult(label, tuple(dims), consistent, len(set(dims)) == 1)


def tangent_plane_family(S):
    """The family of tangent planes span{S, S_u, S_v}."""
    if S.N < 4:
        raise InapplicableError("tangent planes of a surface in P^3 do not form a 2-parameter family of planes")
    u, v = S.params
    return FamilySpec(S.N, 2, S.params, [list(S.coords), S.derivative(u), S.derivative(v)],
                      f"tangent planes of {S.label}")


def osculating_space(S, p):
    """span(S, S_u, S_v, S_uu, S_uv, S_vv) at p."""
    u, v = S.params
    vecs = [S.eval(c, p) for c in (S.coords, S.derivative(u), S.derivative(v),
                                   S.derivative(u, u), S.derivative(u, v), S.derivative(v, v))]
    return LinSubspace.span(vecs, S.N + 1)


def tangent_span_along_plane(S, p, samples=4, sampler=None):
    """Span of the tangent spaces to the union of tangent planes at points of the plane at p."""
    from .focal.charmatrix import embedded_tangent

    sampler = sampler or RationalSampler(f"tangent-span:{S.label}")
    spec = tangent_plane_family(S)
    spaces = []
    for _ in range(4 * samples):
        T = embedded_tangent(spec, p, sampler.projective_point(3))
        if T is not None:
            spaces.append(T)
        if len(spaces) == samples:
            break
    if not spaces:
        raise NonGenericError("the union of tangent planes is singular along the sampled plane")
    total = spaces[0]
    for T in spaces[1:]:
        total = total + T
    return total


def tangent_union_dimension(S, trials=3, sampler=None):
    """Dimension of the union of the tangent planes, from the rank of (u, v, x) -> x.(S, S_u, S_v)."""
    sampler = sampler or RationalSampler(f"tangent-union:{S.label}")
    u, v = S.params
    best = 0
    for _ in range(trials):
        p = sampler.vector(2)
        x = sampler.projective_point(3)
        frame = [S.eval(c, p) for c in (S.coords, S.derivative(u), S.derivative(v))]
        du = [S.eval(c, p) for c in (S.derivative(u), S.derivative(u, u), S.derivative(u, v))]
        dv = [S.eval(c, p) for c in (S.derivative(v), S.derivative(u, v), S.derivative(v, v))]
        cols = list(frame)
        for d in (du, dv):
            cols.append([sum((x[a] * d[a][i] for a in range(3)), Fraction(0)) for i in range(S.N + 1)])
        best = max(best, rank(cols))
    return best - 1
