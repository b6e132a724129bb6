"""Characteristic matrices, fiberwise focal divisors and fixed tangent spaces."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import FocalFiberError, InputError, NonGenericError
from ..exactalg import (
    LinSubspace,
    MPoly,
    PolyMatrix,
    RationalSampler,
    exact_div,
    factor_binary_form,
    gcd_polys,
    intersect_subspaces,
    maximal_minors,
    nullspace,
    rank,
    rref,
    signed_maximal_minors,
)
from ..families import canonical_point, df_rank, fiber_vars, incidence


@dataclass(frozen=True)
class QuotientBasis:
    """Standard basis vectors complementing the RREF pivots of a span matrix."""

    echelon: tuple
    pivots: tuple
    indices: tuple

    @classmethod
    def of(cls, rows):
        red, pivots = rref(rows)
        ncols = len(rows[0])
        return cls(tuple(tuple(r) for r in red), tuple(pivots),
                   tuple(i for i in range(ncols) if i not in pivots))

    def reduce(self, w):
        """Coordinates of w modulo the span, in the complementary basis."""
        w = list(w)
        for row, p in zip(self.echelon, self.pivots):
            c = w[p]
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        return [w[i] for i in self.indices]

    def lift(self, q, ambient):
        v = [Fraction(0)] * ambient
        for i, c in zip(self.indices, q):
            v[i] = Fraction(c)
        return v


@dataclass(frozen=True)
class TangentHom:
    """A tangent vector to the Grassmannian as a map from the plane to the quotient."""

    matrix: tuple

    @property
    def rank(self):
        return rank([list(r) for r in self.matrix])

    def apply(self, v):
        return [sum((a * Fraction(b) for a, b in zip(row, v)), Fraction(0)) for row in self.matrix]

    def kernel(self):
        return nullspace([list(r) for r in self.matrix], len(self.matrix[0]))

    def image(self):
        cols = [list(c) for c in zip(*self.matrix)]
        return LinSubspace.span(cols, len(self.matrix))

    def is_zero(self):
        return all(not x for r in self.matrix for x in r)


@dataclass(frozen=True)
class CharMatrix:
    spec: object
    base: tuple
    quotient: QuotientBasis
    matrix: PolyMatrix

    @property
    def fiber(self):
        return fiber_vars(self.spec.k)

    def hom(self, j):
        """Column j as a constant (N-k) x (k+1) matrix."""
        rows = []
        for i in range(self.matrix.rows):
            entry = self.matrix[i, j]
            rows.append(tuple(entry.diff(x).constant_value() for x in self.fiber))
        return TangentHom(tuple(rows))

    def homs(self):
        return [self.hom(j) for j in range(self.matrix.cols)]

    def at(self, x):
        """Numeric (N-k) x n matrix at the fiber point x."""
        return self.matrix.evaluate(dict(zip(self.fiber, (Fraction(c) for c in x))))

    def combination(self, lam):
        m = [[sum((Fraction(l) * h.matrix[i][a] for l, h in zip(lam, self.homs())), Fraction(0))
              for a in range(self.spec.k + 1)] for i in range(self.matrix.rows)]
        return TangentHom(tuple(tuple(r) for r in m))


def characteristic_matrix(spec, t):
    """Matrix of linear forms on the fiber: column j is sum_a x_a dP_a/dt_j mod the plane."""
    t = tuple(Fraction(v) for v in t)
    span = spec.span_at(t)
    if rank(span) != spec.k + 1:
        raise NonGenericError(f"spanning points are dependent at t = {t}")
    qb = QuotientBasis.of(span)
    xs = fiber_vars(spec.k)
    X = [MPoly.var(x, xs) for x in xs]
    columns = []
    for j in range(spec.n):
        derivs = [qb.reduce(d) for d in spec.span_derivative_at(t, j)]
        columns.append([sum((X[a] * derivs[a][i] for a in range(spec.k + 1)), MPoly(xs))
                        for i in range(len(qb.indices))])
    rows = [[columns[j][i] for j in range(spec.n)] for i in range(len(qb.indices))]
    return CharMatrix(spec, t, qb, PolyMatrix(rows, xs))


@dataclass(frozen=True)
class FocalDivisor:
    form: MPoly
    degree: int
    roots: tuple = ()
    irrational: tuple = ()
    whole_fiber_focal: bool = False
    fixed_image: bool = False
    extrapolated: bool = False

    def support(self):
        return [r for r, _ in self.roots]

    def multiplicity(self, point):
        point = canonical_point(point)
        for r, m in self.roots:
            if r == point:
                return m
        return 0

    def vanishes_at(self, x):
        if self.whole_fiber_focal:
            return True
        xs = self.form.vars
        return self.form.eval(dict(zip(xs, (Fraction(c) for c in x)))) == 0

    def __str__(self):
        return factored_string(self)


def has_fixed_image(cm):
    """True when all columns at all fiber points lie in one n-dimensional subspace."""
    vecs = []
    for h in cm.homs():
        vecs.extend(list(c) for c in zip(*h.matrix))
    return rank(vecs) == cm.matrix.cols if vecs else False


def focal_divisor(cm):
    """Rank-drop divisor of the characteristic matrix on the fiber."""
    A = cm.matrix
    k = cm.spec.k
    xs = cm.fiber
    fixed = has_fixed_image(cm)
    minors = [m for m in maximal_minors(A).values()]
    if all(m.is_zero() for m in minors):
        return FocalDivisor(MPoly(xs), -1, whole_fiber_focal=True, fixed_image=fixed)
    form = gcd_polys(minors).with_vars(xs)
    roots, irr = (), ()
    if k == 1:
        rs, ir = factor_binary_form(form, *xs)
        roots = tuple((canonical_point(p), m) for p, m in rs)
        irr = tuple((f.monic(), m) for f, m in ir)
    extrapolated = k >= 2 and 1 < cm.spec.n == cm.spec.N - k and not fixed
    return FocalDivisor(form, form.degree(), roots, irr, False, fixed, extrapolated)


def factored_string(div):
    if div.whole_fiber_focal:
        return "0"
    if div.form.vars != ("x0", "x1") or not div.roots and not div.irrational:
        return str(div.form)
    parts = []
    for (a, b), m in div.roots:
        # the point (a:b) is the zero of b*x0 - a*x1
        lin = MPoly.var("x0", ("x0", "x1")) * b - MPoly.var("x1", ("x0", "x1")) * a
        s = str(lin.monic())
        s = s if " " not in s else f"({s})"
        parts.append(s if m == 1 else f"{s}^{m}")
    for f, m in div.irrational:
        s = f"({f})"
        parts.append(s if m == 1 else f"{s}^{m}")
    return "*".join(sorted(parts)) if parts else "1"


@dataclass(frozen=True)
class TangentEnvelope:
    subspace: LinSubspace

    @property
    def projective_dim(self):
        return self.subspace.projective_dim

    def contains(self, v):
        return self.subspace.contains(v)


def _star_equations(A, xs):
    """Linear conditions on v for v to lie in the column space of A(x) for all x."""
    n = A.cols
    rows = A.rows
    eqs = []
    for S in combinations(range(rows), n + 1):
        phis = signed_maximal_minors(A.submatrix(S, range(n)))
        if all(p.is_zero() for p in phis):
            continue
        F = gcd_polys(phis).with_vars(xs)
        psis = [exact_div(p.with_vars(xs), F) for p in phis]
        degree = n - F.degree()
        monos = sorted({e for p in psis for e in p.terms} |
                       {e for e in _monomials(len(xs), degree)})
        for mono in monos:
            eq = [Fraction(0)] * rows
            for i, p in zip(S, psis):
                eq[i] = p.terms.get(mono, Fraction(0))
            if any(eq):
                eqs.append(eq)
    return eqs


def _monomials(nvars, degree):
    if nvars == 1:
        yield (degree,)
        return
    for d in range(degree + 1):
        for rest in _monomials(nvars - 1, degree - d):
            yield (d,) + rest


def fixed_tangent_space(cm):
    """Plane plus every normal direction in the image of the characteristic map at all fiber points."""
    if cm.spec.k != 1:
        raise InputError("fixed_tangent_space is defined for line families (k = 1)")
    div = focal_divisor(cm)
    if div.whole_fiber_focal:
        raise FocalFiberError("every point of the line is focal")
    A = cm.matrix
    eqs = _star_equations(A, cm.fiber)
    sol = nullspace(eqs, A.rows) if eqs else nullspace([], A.rows)
    N1 = cm.spec.N + 1
    vectors = list(cm.spec.span_at(cm.base)) + [cm.quotient.lift(v, N1) for v in sol]
    return TangentEnvelope(LinSubspace.span(vectors, N1))


def embedded_tangent(spec, t, x, jac=None):
    """Column span of the incidence Jacobian at (t, x), or None where it drops rank."""
    inc = incidence(spec)
    jac = jac or inc.jacobian()
    a = dict(zip(spec.params, (Fraction(v) for v in t)))
    a.update(zip(inc.fiber, (Fraction(v) for v in x)))
    m = jac.evaluate(a)
    cols = [list(c) for c in zip(*m)]
    if rank(cols) < spec.n + spec.k + 1:
        return None
    return LinSubspace.span(cols, spec.N + 1)


def tangent_envelope(spec, t, samples=None, sampler=None):
    """Intersection of embedded tangent spaces of X at random smooth points of the fiber."""
    samples = samples if samples is not None else spec.n + 3
    if samples < spec.n + 2:
        raise InputError(f"need at least n+2 = {spec.n + 2} samples")
    sampler = sampler or RationalSampler(f"envelope:{spec.label}")
    jac = incidence(spec).jacobian()
    spaces = []
    attempts = 0
    while len(spaces) < samples and attempts < 4 * samples:
        attempts += 1
        T = embedded_tangent(spec, t, sampler.projective_point(spec.k + 1), jac)
        if T is not None:
            spaces.append(T)
    if not spaces:
        raise NonGenericError("all sampled fiber points are singular for the incidence map")
    return TangentEnvelope(intersect_subspaces(spaces))


def df_rank_oracle(spec, t, x):
    """Rank of the incidence differential at (t, x); x is focal iff it is < n+k+1."""
    return df_rank(spec, t, x)


def theoremB_matrix(spec, t, sampler=None, envelope=None):
    """Characteristic columns in coordinates of the fixed tangent space mod the plane.

    Returns None when the tangent space is not constant along the fiber.
    """
    envelope = envelope or tangent_envelope(spec, t, sampler=sampler)
    if envelope.projective_dim != spec.n + spec.k:
        return None
    cm = characteristic_matrix(spec, t)
    W = [cm.quotient.reduce(b) for b in envelope.subspace.basis]
    red, pivots = rref(W, cm.matrix.rows)
    if len(pivots) != spec.n:
        return None
    A = cm.matrix
    Wspace = LinSubspace.span(red, A.rows)
    for h in cm.homs():
        if not all(Wspace.contains(c) for c in zip(*h.matrix)):
            return None
    # columns lie in W, whose echelon basis makes the pivot entries the coordinates
    return PolyMatrix([[A[p, j] for j in range(A.cols)] for p in pivots], A.vars)
