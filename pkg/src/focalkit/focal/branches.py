"""Focal loci as functions of the base point: focus branches and sweep ranks.

The characteristic matrix is rebuilt over Q[t] by clearing the denominator
of the quotient reduction (adjugate of the pivot block), so the focal form
G(t, x) is a polynomial whose irreducible factors over Q are the branches of
the focal locus.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from ..errors import InapplicableError, NonGenericError
from ..exactalg import (
    LinSubspace,
    MPoly,
    RationalSampler,
    divmod_poly,
    nullspace,
    rank,
    rref,
)
from ..exactalg.linalg import poly_det
from ..families import canonical_point, fiber_vars, random_base_point


def _adjugate(m, variables):
    n = len(m)
    if n == 1:
        return [[MPoly.const(1, variables)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            c = poly_det(minor, variables)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def symbolic_char_matrix(spec):
    """(N-k) x n matrix over Q[t, x], proportional (by det of the pivot block) to the fiberwise one."""
    sampler = RationalSampler(f"pivots:{spec.label}")
    t0 = random_base_point(spec, sampler)
    _, pivots = rref(spec.span_at(t0))
    rest = [i for i in range(spec.N + 1) if i not in pivots]
    xs = fiber_vars(spec.k)
    variables = spec.params + xs
    P = [[c.with_vars(variables) for c in pt] for pt in spec.span]
    X = [MPoly.var(x, variables) for x in xs]
    MT = [[P[a][p] for a in range(spec.k + 1)] for p in pivots]
    delta = poly_det(MT, variables)
    adj = _adjugate(MT, variables)
    columns = []
    for j, tj in enumerate(spec.params):
        w = [sum((X[a] * P[a][i].diff(tj) for a in range(spec.k + 1)), MPoly(variables))
             for i in range(spec.N + 1)]
        wpi = [w[p] for p in pivots]
        c = [sum((adj[a][b] * wpi[b] for b in range(len(pivots))), MPoly(variables))
             for a in range(spec.k + 1)]
        col = []
        for i in rest:
            col.append(delta * w[i] - sum((c[a] * P[a][i] for a in range(spec.k + 1)), MPoly(variables)))
        columns.append(col)
    return [[columns[j][r] for j in range(spec.n)] for r in range(len(rest))], variables


def symbolic_focal_form(spec):
    """G(t, x): gcd of the maximal minors over Q[t, x], with the pure-t content removed."""
    return _symbolic_focal_form_cached(spec)


@lru_cache(maxsize=64)
def _symbolic_focal_form_cached(spec):
    rows, variables = symbolic_char_matrix(spec)
    n = spec.n
    minors = []
    for S in combinations(range(len(rows)), n):
        m = poly_det([rows[i] for i in S], variables)
        if not m.is_zero():
            minors.append(m)
    if not minors:
        return None
    # every factor of the gcd divides the smallest minor; multiplicities are
    # the minimum over all minors, found by exact division
    minors.sort(key=lambda m: (m.degree(), len(m.terms)))
    xs = fiber_vars(spec.k)
    G = MPoly.const(1, variables)
    for fac, _ in factor_over_q(minors[0]):
        fac = fac.with_vars(variables)
        if all(fac.degree_in(x) <= 0 for x in xs):
            continue
        G = G * fac ** min(_multiplicity(m, fac) for m in minors)
    return G.monic()


def _multiplicity(m, f):
    k = 0
    while True:
        q, r = divmod_poly(m, f)
        if not r.is_zero():
            return k
        m, k = q, k + 1


def factor_over_q(p):
    """Irreducible factors over Q with multiplicities (sympy backs this step)."""
    import sympy

    gens = sympy.symbols(p.vars)
    sp = sympy.Poly.from_dict(
        {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}, *gens, domain="QQ"
    )
    out = []
    for fac, mult in sp.factor_list()[1]:
        terms = {tuple(e): Fraction(int(c.p), int(c.q)) for e, c in fac.as_dict().items()}
        out.append((MPoly(p.vars, terms).monic(), mult))
    return out


@dataclass(frozen=True)
class FocusBranch:
    """An irreducible component of the focal locus, tracked over the parameter space."""

    spec: object
    factor: MPoly
    multiplicity: int
    x_degree: int

    @property
    def fiber(self):
        return fiber_vars(self.spec.k)

    def fiber_map(self):
        """For a focus linear in x on a line: polynomial fiber coordinates of the focus."""
        if self.spec.k != 1 or self.x_degree != 1:
            return None
        co = self.factor.coefficients(self.fiber)
        zero = MPoly(self.spec.params)
        alpha = co.get((1, 0), zero).with_vars(self.spec.params)
        beta = co.get((0, 1), zero).with_vars(self.spec.params)
        return (beta, -alpha)

    def point_map(self):
        """Polynomial map t -> focus in P^N, when the branch is rational in t."""
        fm = self.fiber_map()
        if fm is None:
            return None
        return tuple(fm[0] * p0 + fm[1] * p1 for p0, p1 in zip(*self.spec.span))

    def fiber_point(self, t):
        fm = self.fiber_map()
        if fm is None:
            return None
        a = self.spec.assignment(t)
        v = [c.eval(a) for c in fm]
        if not any(v):
            return None
        return canonical_point(v)

    def vanishes(self, t, x):
        a = self.spec.assignment(t)
        a.update(zip(self.fiber, (Fraction(c) for c in x)))
        return self.factor.eval(a) == 0

    def label(self):
        return str(self.factor)


def focus_branches(spec):
    """Factors of the focal form that involve the fiber coordinates."""
    G = symbolic_focal_form(spec)
    if G is None:
        return []
    xs = fiber_vars(spec.k)
    out = []
    for fac, mult in factor_over_q(G):
        xdeg = max((sum(e[len(spec.params):]) for e in fac.terms), default=0)
        if xdeg > 0:
            out.append(FocusBranch(spec, fac.with_vars(spec.params + xs), mult, xdeg))
    out.sort(key=lambda b: (b.multiplicity, str(b.factor)))
    return out


def focus_sweep_rank(spec, branch, t):
    """Rank of t -> focus at t (projective): 0 fixed point, 1 curve, 2 surface.

    Returns None when the branch is not rational in t.
    """
    pm = branch.point_map()
    if pm is None:
        return None
    a = spec.assignment(t)
    p = [c.eval(a) for c in pm]
    if not any(p):
        raise NonGenericError("focus degenerates at this base point")
    rows = [p] + [[c.diff(tj).eval(a) for c in pm] for tj in spec.params]
    return rank(rows) - 1


def swept_tangent(spec, factor, t, x):
    """Tangent space of the locus swept by {factor = 0} at the point (t, x).

    Implicit differentiation: fiber directions tangent to the factor's zero set
    plus, for each parameter, the motion of a lift of x along the branch.
    Returns None at singular points of the factor.
    """
    xs = fiber_vars(spec.k)
    a = spec.assignment(t)
    a.update(zip(xs, (Fraction(c) for c in x)))
    grad = [factor.diff(v).eval(a) for v in xs]
    if not any(grad):
        return None
    c = next(i for i, g in enumerate(grad) if g)
    P = spec.span_at(t)
    vectors = []
    for w in nullspace([grad], spec.k + 1):
        vectors.append([sum((w[b] * P[b][i] for b in range(spec.k + 1)), Fraction(0)) for i in range(spec.N + 1)])
    for j, tj in enumerate(spec.params):
        dP = spec.span_derivative_at(t, j)
        dxc = -factor.diff(tj).eval(a) / grad[c]
        vec = [sum((Fraction(x[b]) * dP[b][i] for b in range(spec.k + 1)), Fraction(0)) + dxc * P[c][i]
               for i in range(spec.N + 1)]
        vectors.append(vec)
    return LinSubspace.span(vectors, spec.N + 1)


def focal_points_on(spec, branch, t, sampler, count=3):
    """Rational points of the branch on the fiber over t."""
    if spec.k == 1:
        p = branch.fiber_point(t)
        return [p] if p is not None else []
    if branch.x_degree != 1:
        return []
    xs = fiber_vars(spec.k)
    a = spec.assignment(t)
    coeffs = branch.factor.coefficients(xs)
    alpha = []
    for i in range(spec.k + 1):
        e = tuple(int(j == i) for j in range(spec.k + 1))
        alpha.append(coeffs[e].eval(a) if e in coeffs else Fraction(0))
    if not any(alpha):
        return []
    basis = nullspace([alpha], spec.k + 1)
    pts = []
    for _ in range(count):
        lam = sampler.vector(len(basis))
        v = [sum((l * b[i] for l, b in zip(lam, basis)), Fraction(0)) for i in range(spec.k + 1)]
        if any(v):
            pts.append(canonical_point(v))
    return pts


@dataclass(frozen=True)
class TangencyReport:
    applicable: bool
    verdicts: tuple = ()
    reason: str = ""

    @property
    def passed(self):
        return self.applicable and bool(self.verdicts) and all(ok for _, ok in self.verdicts)


def codim_one_branches(spec, t, sampler):
    """Branches whose swept locus has dimension n+k-1 near the base point t."""
    out = []
    for b in focus_branches(spec):
        for x in focal_points_on(spec, b, t, sampler, count=1):
            T = swept_tangent(spec, b.factor, t, x)
            if T is not None and T.projective_dim == spec.n + spec.k - 1:
                out.append(b)
                break
    return out


def verify_focal_tangency(spec, trials=3, sampler=None):
    """Check that each plane lies in the tangent space of the swept focal hypersurface at its foci."""
    sampler = sampler or RationalSampler(f"tangency:{spec.label}")
    t0 = random_base_point(spec, sampler)
    comps = codim_one_branches(spec, t0, sampler)
    if not comps:
        return TangencyReport(False, reason="no focal component of codimension 1 in X")
    verdicts = []
    for _ in range(trials):
        for attempt in range(5):
            t = random_base_point(spec, sampler)
            ok = True
            immersive = True
            for b in comps:
                pts = focal_points_on(spec, b, t, sampler)
                for x in pts:
                    T = swept_tangent(spec, b.factor, t, x)
                    if T is None or T.projective_dim != spec.n + spec.k - 1:
                        immersive = False
                        break
                    ok = ok and all(T.contains(p) for p in spec.span_at(t))
                if not immersive:
                    break
            if immersive:
                verdicts.append((tuple(t), ok))
                break
        else:
            raise NonGenericError("swept focal locus not immersive at any sampled base point")
    return TangencyReport(True, tuple(verdicts))


def require_tangency(spec, trials=3, sampler=None):
    rep = verify_focal_tangency(spec, trials, sampler)
    if not rep.applicable:
        raise InapplicableError(rep.reason)
    return rep


# ---------------------------------------------------------------------------
# comparing the loci swept by two branches

def _monomial_values(point, degree):
    vals = []
    for combo in combinations_with_replacement(range(len(point)), degree):
        v = Fraction(1)
        for i in combo:
            v *= point[i]
        vals.append(v)
    return vals


def _branch_samples(spec, branch, count, sampler):
    pm = branch.point_map()
    out = []
    tries = 0
    while len(out) < count and tries < 4 * count:
        tries += 1
        a = spec.assignment(sampler.vector(spec.n))
        p = [c.eval(a) for c in pm]
        if any(p):
            out.append(p)
    return out


def _vanishing_forms(points, degree):
    rows = [_monomial_values(p, degree) for p in points]
    return nullspace(rows, len(rows[0]))


def same_locus(spec, b1, b2, max_degree=3, sampler=None):
    """True/False when the two branch images agree/differ; None when undecided.

    Probes the ideal of each image in low degree by interpolation through many
    sampled points and tests the other branch's points against it.
    """
    if b1 == b2:
        return True
    if b1.point_map() is None or b2.point_map() is None:
        return None
    sampler = sampler or RationalSampler(f"locus:{spec.label}", bound=60)
    from math import comb

    decided_same = False
    for d in range(1, max_degree + 1):
        nmono = comb(spec.N + d, d)
        s1 = _branch_samples(spec, b1, nmono + 6, sampler)
        s2 = _branch_samples(spec, b2, nmono + 6, sampler)
        f1 = _vanishing_forms(s1, d)
        f2 = _vanishing_forms(s2, d)
        for forms, pts in ((f2, s1[:6]), (f1, s2[:6])):
            for f in forms:
                for p in pts:
                    if sum((a * b for a, b in zip(f, _monomial_values(p, d))), Fraction(0)):
                        return False
        if f1 and f2:
            decided_same = True
            if d >= 2:
                return True
    return True if decided_same else None
