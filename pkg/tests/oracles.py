"""Independent reference computations used to cross-check the library.

Nothing here calls into focalkit's linear algebra, gcd or focal code: ranks
come from fraction-free Bareiss elimination, polynomial work from sympy, and
focal forms straight from the minors of the incidence Jacobian.
"""

from fractions import Fraction
from itertools import combinations
from math import lcm

import sympy


def bareiss_rank(rows):
    """Rank by fraction-free elimination on an integer scaling of the matrix."""
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows or not rows[0]:
        return 0
    m = []
    for r in rows:
        d = lcm(*(x.denominator for x in r)) if r else 1
        m.append([int(x * d) for x in r])
    nrows, ncols = len(m), len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) // prev
            m[i][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == nrows:
            break
    return rank


def to_sympy(p, gens=None):
    gens = gens or sympy.symbols(p.vars)
    names = [str(g) for g in gens]
    expr = 0
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, k in zip(p.vars, e):
            if k:
                term *= gens[names.index(v)] ** k
        expr += term
    return sympy.Poly(expr, *gens, domain="QQ")


def sympy_span(spec):
    """Spanning points as sympy expressions in the parameters."""
    ts = sympy.symbols(spec.params)
    return ts, [[to_sympy(c, ts).as_expr() for c in pt] for pt in spec.span]


def jacobian_at(spec, t):
    """Incidence Jacobian at parameter t, as a sympy matrix in the fiber coordinates."""
    ts, span = sympy_span(spec)
    xs = sympy.symbols(f"x0:{spec.k + 1}")
    F = [sum(x * pt[i] for x, pt in zip(xs, span)) for i in range(spec.N + 1)]
    J = sympy.Matrix([[sympy.diff(f, v) for v in (*ts, *xs)] for f in F])
    sub = {tv: sympy.Rational(Fraction(a).numerator, Fraction(a).denominator) for tv, a in zip(ts, t)}
    return J.subs(sub), xs


def focal_form_oracle(spec, t):
    """Monic gcd of the maximal minors of the incidence Jacobian at t, as a sympy Poly in x."""
    J, xs = jacobian_at(spec, t)
    size = J.shape[1]
    g = sympy.Poly(0, *xs, domain="QQ")
    for rows in combinations(range(J.shape[0]), size):
        d = sympy.Poly(J.extract(list(rows), list(range(size))).det(method="berkowitz").expand(), *xs, domain="QQ")
        g = sympy.gcd(g, d)
    return g.monic() if not g.is_zero else g


def df_rank_oracle(spec, t, x):
    J, xs = jacobian_at(spec, t)
    sub = {xv: sympy.Rational(Fraction(a).numerator, Fraction(a).denominator) for xv, a in zip(xs, x)}
    return J.subs(sub).rank()


def union_dim_oracle(spec, samples):
    """Max Jacobian rank over the given (t, x) samples, minus one."""
    return max(df_rank_oracle(spec, t, x) for t, x in samples) - 1


def tangent_intersection_dim(spec, t, xs_list):
    """Projective dimension of the intersection of the Jacobian column spaces at (t, x) for x in xs_list."""
    J, xs = jacobian_at(spec, t)
    space = None
    for x in xs_list:
        sub = {xv: sympy.Rational(Fraction(a).numerator, Fraction(a).denominator) for xv, a in zip(xs, x)}
        A = J.subs(sub)
        cols = A.columnspace()
        B = sympy.Matrix.hstack(*cols)
        if space is None:
            space = B
            continue
        # v = space*a = B*b  <=>  [space | -B] (a, b) = 0
        ker = sympy.Matrix.hstack(space, -B).nullspace()
        if not ker:
            return -1
        vecs = [space * k[: space.shape[1], :] for k in ker]
        space = sympy.Matrix.hstack(*vecs)
        space = sympy.Matrix.hstack(*space.columnspace())
    return space.rank() - 1


def sympy_det(rows, gens):
    M = sympy.Matrix([[to_sympy(e, gens).as_expr() for e in r] for r in rows])
    return sympy.Poly(M.det(method="berkowitz").expand(), *gens, domain="QQ")
