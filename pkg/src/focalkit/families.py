"""Parametrized families of k-planes, the incidence map and the fixture catalog."""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, NonGenericError
from .exactalg import MPoly, PolyMatrix, RationalSampler, rank, rank_at
from .exactalg.sampling import RETRIES


def fiber_vars(k):
    return tuple(f"x{a}" for a in range(k + 1))


def canonical_point(v):
    """Projective representative with first nonzero coordinate equal to 1."""
    v = [Fraction(x) for x in v]
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(x / lead for x in v)


@dataclass(frozen=True, eq=False)
class FamilySpec:
    """k+1 moving points spanning a k-plane of P^N, polynomial in ``params``."""

    N: int
    k: int
    params: tuple
    span: tuple
    label: str = ""
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        params = tuple(self.params)
        span = tuple(tuple(_lift(c, params) for c in pt) for pt in self.span)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "span", span)
        if len(span) != self.k + 1:
            raise InputError(f"need k+1 = {self.k + 1} spanning points, got {len(span)}")
        for i, pt in enumerate(span):
            if len(pt) != self.N + 1:
                raise InputError(f"point {i} has {len(pt)} coordinates, expected N+1 = {self.N + 1}")
            for c in pt:
                extra = [v for v in c.used_vars() if v not in params]
                if extra:
                    raise InputError(f"point {i} uses undeclared variables {extra}")
        clash = set(params) & set(fiber_vars(self.k))
        if clash:
            raise InputError(f"parameter names clash with fiber coordinates: {sorted(clash)}")
        if self.n > self.N - self.k:
            raise InputError(f"n = {self.n} exceeds N - k = {self.N - self.k}")
        if self.validate:
            sampler = RationalSampler(f"validate:{self.label}")
            for _ in range(RETRIES):
                if rank(self.span_at(sampler.vector(self.n))) == self.k + 1:
                    break
            else:
                raise InputError("spanning points are dependent at every sampled parameter value")

    @property
    def n(self):
        return len(self.params)

    def assignment(self, t):
        t = tuple(t)
        if len(t) != self.n:
            raise InputError(f"expected {self.n} parameter values, got {len(t)}")
        return dict(zip(self.params, (Fraction(x) for x in t)))

    def span_at(self, t):
        a = self.assignment(t)
        return [[c.eval(a) for c in pt] for pt in self.span]

    def span_derivative_at(self, t, j):
        """d/dt_j of every spanning point at t."""
        a = self.assignment(t)
        p = self.params[j]
        return [[c.diff(p).eval(a) for c in pt] for pt in self.span]

    def recombined(self, matrix):
        """Replace the spanning points by an invertible constant recombination."""
        new = []
        for row in matrix:
            pt = []
            for i in range(self.N + 1):
                acc = MPoly(self.params)
                for c, p in zip(row, self.span):
                    acc = acc + p[i] * Fraction(c)
                pt.append(acc)
            new.append(pt)
        return FamilySpec(self.N, self.k, self.params, new, self.label)

    def transformed(self, matrix):
        """Apply a projective change of coordinates of P^N to all spanning points."""
        new = []
        for pt in self.span:
            new.append([
                sum((pt[j] * Fraction(matrix[i][j]) for j in range(self.N + 1)), MPoly(self.params))
                for i in range(self.N + 1)
            ])
        return FamilySpec(self.N, self.k, self.params, new, self.label)

    def reordered(self, order):
        return FamilySpec(self.N, self.k, self.params, [self.span[i] for i in order], self.label)

    def __eq__(self, other):
        return (
            isinstance(other, FamilySpec)
            and (self.N, self.k, self.params) == (other.N, other.k, other.params)
            and self.span == other.span
        )

    def __hash__(self):
        return hash((self.N, self.k, self.params))


def _lift(c, params):
    if isinstance(c, MPoly):
        return c.with_vars(tuple(dict.fromkeys(params + c.vars)))
    return MPoly.const(Fraction(c), params)


@dataclass(frozen=True)
class IncidenceMap:
    params: tuple
    fiber: tuple
    coords: tuple

    @property
    def variables(self):
        return self.params + self.fiber

    def jacobian(self):
        """(N+1) x (n+k+1) Jacobian with respect to (t, x)."""
        return PolyMatrix([[c.diff(v) for v in self.variables] for c in self.coords], self.variables)

    def at(self, t, x):
        a = dict(zip(self.params, t))
        a.update(zip(self.fiber, x))
        return [c.eval(a) for c in self.coords]


def incidence(spec):
    """(t, x) -> sum_a x_a P_a(t)."""
    xs = fiber_vars(spec.k)
    variables = spec.params + xs
    X = [MPoly.var(x, variables) for x in xs]
    coords = []
    for i in range(spec.N + 1):
        acc = MPoly(variables)
        for xa, pt in zip(X, spec.span):
            acc = acc + xa * pt[i]
        coords.append(acc)
    return IncidenceMap(spec.params, xs, tuple(coords))


def df_rank(spec, t, x, jac=None):
    """Rank of the incidence Jacobian at (t, x)."""
    inc = incidence(spec)
    jac = jac or inc.jacobian()
    a = dict(zip(spec.params, (Fraction(v) for v in t)))
    a.update(zip(inc.fiber, (Fraction(v) for v in x)))
    return rank_at(jac, a)


@dataclass(frozen=True)
class UnionDimension:
    dim: int
    expected: int

    @property
    def ok(self):
        return self.dim == self.expected


def union_dimension(spec, trials=5, sampler=None):
    """Projective dimension of the union X, from the max Jacobian rank over samples."""
    sampler = sampler or RationalSampler(0)
    jac = incidence(spec).jacobian()
    best = 0
    for _ in range(max(trials, 1)):
        t = sampler.vector(spec.n)
        x = sampler.projective_point(spec.k + 1)
        best = max(best, df_rank(spec, t, x, jac))
    return UnionDimension(best - 1, spec.n + spec.k)


def random_base_point(spec, sampler):
    """A parameter value where the spanning points are independent."""
    for _ in range(RETRIES):
        t = sampler.vector(spec.n)
        if rank(spec.span_at(t)) == spec.k + 1:
            return tuple(t)
    raise NonGenericError("could not find a base point with independent spanning points")


# ---------------------------------------------------------------------------
# fixture catalog

def rnc(var, degree, variables=None):
    """Rational normal curve (1, t, ..., t^degree)."""
    t = MPoly.var(var, variables or (var,))
    return [t ** i for i in range(degree + 1)]


def _d(point, var):
    return [c.diff(var) for c in point]


def _pad(point, before, after, variables):
    z = MPoly(variables)
    return [z] * before + list(point) + [z] * after


def _consts(values, variables):
    return [MPoly.const(v, variables) for v in values]


def veronese_patch(u="u", v="v"):
    U, V = MPoly.gens(u, v)
    one = MPoly.const(1, (u, v))
    return [one, U, V, U * U, U * V, V * V]


def _f1():
    C = rnc("t", 3)
    return FamilySpec(3, 1, ("t",), [C, _d(C, "t")], "F1 tangent developable of the twisted cubic")


def _f2():
    t = ("t",)
    T = MPoly.var("t")
    return FamilySpec(3, 1, t, [_consts([0, 0, 0, 1], t), [MPoly.const(1, t), T, T * T, MPoly(t)]],
                      "F2 cone over a plane conic")


def _f3():
    t = ("t",)
    T = MPoly.var("t")
    one, zero = MPoly.const(1, t), MPoly(t)
    return FamilySpec(3, 1, t, [[one, T, zero, zero], [zero, zero, one, T]], "F3 ruling of a smooth quadric")


def _f4():
    p = ("s", "u")
    return FamilySpec(4, 1, p, [rnc("s", 4, p), rnc("u", 4, p)], "F4 secant lines of the rational normal quartic")


def _f5():
    C = rnc("t", 4)
    return FamilySpec(4, 2, ("t",), [C, _d(C, "t"), _d(_d(C, "t"), "t")],
                      "F5 osculating planes of the rational normal quartic")


def _f6():
    p = ("s", "u")
    return FamilySpec(5, 1, p, [_pad(rnc("s", 2, p), 0, 3, p), _pad(rnc("u", 2, p), 3, 0, p)],
                      "F6 join of two conics")


def default_band_curves():
    p = ("t",)
    return _pad(rnc("t", 2, p), 0, 3, p), _pad(rnc("t", 2, p), 3, 0, p)


def _f7(C=None, D=None, planes=False):
    if C is None or D is None:
        C, D = default_band_curves()
    C = [c.with_vars(tuple(dict.fromkeys(("t",) + c.vars))) for c in C]
    D = [c.with_vars(C[0].vars) for c in D]
    if planes:
        return FamilySpec(len(C) - 1, 2, ("t",), [C, _d(C, "t"), D], "F7 band (planes)")
    p = ("t", "u")
    U = MPoly.var("u", p)
    Cp = [c.with_vars(p) for c in C]
    line2 = [a.diff("t") + U * b.with_vars(p) for a, b in zip(Cp, D)]
    return FamilySpec(len(C) - 1, 1, p, [Cp, line2], "F7 band (lines)")


def _f8(surface=None, vertex=None):
    p = ("u", "v")
    if surface is None:
        surface = veronese_patch()
        surface = [c.with_vars(p) for c in surface] + [MPoly(p)]
        vertex = [0] * 6 + [1]
    S = [c.with_vars(p) for c in surface]
    if vertex is None:
        raise InputError("F8 with a custom surface needs a vertex")
    return FamilySpec(len(S) - 1, 1, p, [_consts(vertex, p), S], "F8 cone over a surface")


def _f10():
    p = ("u", "v")
    S = veronese_patch()
    return FamilySpec(5, 1, p, [S, _d(S, "u")], "F10 u-tangent lines of the Veronese surface")


def _f11():
    p = ("t", "s")
    T, S = MPoly.gens(*p)
    one, zero = MPoly.const(1, p), MPoly(p)
    V = [one, T, T * T, zero, zero]
    E = [zero, zero, one, S + T * S * S, S * S]
    return FamilySpec(4, 1, p, [V, E], "F11 cones with moving vertex")


def _f12():
    p = ("s", "u")
    Cs, Cu = rnc("s", 5, p), rnc("u", 5, p)
    third = [a + b for a, b in zip(_d(Cs, "s"), _d(Cu, "u"))]
    return FamilySpec(5, 2, p, [Cs, Cu, third], "F12 planes through secant lines of the quintic")


def _cone_vertex_line():
    t = ("t",)
    A = _consts([1, 0, 0, 0, 0], t)
    B = _consts([0, 1, 0, 0, 0], t)
    C = [MPoly(t), MPoly(t)] + rnc("t", 2, t)
    return FamilySpec(4, 2, t, [A, B, C], "cone with a line as vertex over a conic")


def _cone_over_developable():
    t = ("t",)
    V = _consts([0, 0, 0, 0, 1], t)
    C = rnc("t", 3, t) + [MPoly(t)]
    return FamilySpec(4, 2, t, [V, C, _d(C, "t")], "cone over the tangent developable of a twisted cubic")


CATALOG = {
    "F1": _f1,
    "F2": _f2,
    "F3": _f3,
    "F4": _f4,
    "F5": _f5,
    "F6": _f6,
    "F7": _f7,
    "F7-planes": lambda **kw: _f7(planes=True, **kw),
    "F8": _f8,
    "F10": _f10,
    "F11": _f11,
    "F12": _f12,
    "CONE-LINE": _cone_vertex_line,
    "CONE-DEV": _cone_over_developable,
}


def fixture(name, **params):
    """Catalog family by id; F7 accepts curves C, D and F8 a surface and vertex."""
    try:
        make = CATALOG[name]
    except KeyError:
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(CATALOG)}") from None
    return make(**params)
