"""Polynomial GCDs over Q and factorization of binary forms.

Multivariate GCDs use content / primitive-part recursion on the last
variable in use, with a primitive pseudo-remainder sequence in the main
variable.  Inputs here are low-degree forms in a handful of variables, so
nothing cleverer is needed.
"""

from fractions import Fraction
from math import isqrt

from .poly import MPoly, as_rat, exact_div


def _as_univariate(p, x):
    """{degree in x: coefficient MPoly in the remaining variables}."""
    return {e[0]: c for e, c in p.coefficients((x,)).items()}


def _from_univariate(coeffs, x, rest_vars):
    out = MPoly(rest_vars + (x,))
    xv = MPoly.var(x, rest_vars + (x,))
    for d, c in coeffs.items():
        out = out + c * xv ** d
    return out


def content(p, x):
    """GCD of the coefficients of p viewed as a polynomial in x."""
    g = MPoly(())
    for c in _as_univariate(p, x).values():
        g = _gcd2(g, c)
        if g.is_constant() and not g.is_zero():
            return g
    return g


def _prem(f, g, x):
    """Pseudo-remainder of f by g in the variable x."""
    df, dg = f.degree_in(x), g.degree_in(x)
    if df < dg:
        return f
    gu = _as_univariate(g, x)
    lc = gu[dg]
    xv = MPoly.var(x, f.vars)
    g_tail = g - lc * xv ** dg
    r = f
    for _ in range(df - dg + 1):
        dr = r.degree_in(x)
        if r.is_zero() or dr < dg:
            r = r * lc
            continue
        lr = _as_univariate(r, x)[dr]
        r = lc * (r - lr * xv ** dr) - lr * xv ** (dr - dg) * g_tail
    return r


def _primitive(p, x):
    c = content(p, x)
    if c.is_zero():
        return p
    return exact_div(p, c)


def _gcd2(f, g):
    f, g = f._align(g) if isinstance(g, MPoly) else (f, MPoly.const(g, f.vars))
    if f.is_zero():
        return g.monic() if not g.is_zero() else g
    if g.is_zero():
        return f.monic()
    used = [v for v in f.vars if v in set(f.used_vars()) | set(g.used_vars())]
    if not used:
        return MPoly.const(1, f.vars)
    x = used[-1]
    if f.degree_in(x) <= 0:
        return _gcd2(f, content(g, x)).with_vars(f.vars)
    if g.degree_in(x) <= 0:
        return _gcd2(content(f, x), g).with_vars(f.vars)
    cf, cg = content(f, x), content(g, x)
    c = _gcd2(cf, cg)
    a, b = exact_div(f, cf), exact_div(g, cg)
    if a.degree_in(x) < b.degree_in(x):
        a, b = b, a
    while not b.is_zero() and b.degree_in(x) > 0:
        r = _prem(a, b, x)
        a, b = b, (_primitive(r, x) if not r.is_zero() else r)
    if b.is_zero():
        g0 = _primitive(a, x)
    else:
        g0 = MPoly.const(1, f.vars)
    return (c * g0).with_vars(f.vars).monic()


def gcd_polys(ps):
    """GCD of a list of polynomials, monic under graded-lex; gcd of zeros is 0."""
    ps = list(ps)
    if not ps:
        return MPoly(())
    g = MPoly(ps[0].vars)
    for p in ps:
        g = _gcd2(g, p)
    return g.monic()


# ---------------------------------------------------------------------------
# univariate helpers (coefficient lists, lowest degree first)

def _trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def udivmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        f = r[-1] / b[-1]
        s = len(r) - len(b)
        q[s] = f
        for i, bc in enumerate(b):
            r[s + i] -= f * bc
        r = _trim(r)
    return _trim(q), r


def ugcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    if not a:
        return a
    return [c / a[-1] for c in a]


def uderiv(a):
    return _trim([a[i] * i for i in range(1, len(a))])


def squarefree_decomposition(a):
    """Yun's algorithm: a = lc * prod a_i^i with squarefree, coprime a_i."""
    a = _trim(a)
    out = []
    if len(a) <= 1:
        return out
    b = uderiv(a)
    c = ugcd(a, b)
    w = udivmod(a, c)[0]
    y = udivmod(b, c)[0]
    i = 1
    while len(w) > 1:
        z = [yc - dc for yc, dc in zip(_pad(y, len(w)), _pad(uderiv(w), len(w)))]
        z = _trim(z)
        g = ugcd(w, z) if z else w
        if len(g) > 1:
            out.append((g, i))
        w = udivmod(w, g)[0]
        y = udivmod(z, g)[0] if z else []
        i += 1
    return out


def _pad(a, n):
    return list(a) + [Fraction(0)] * (n - len(a))


def _rational_sqrt(q):
    q = as_rat(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def rational_roots_squarefree(a):
    """Rational roots of a squarefree univariate polynomial over Q.

    Returns (roots, residual) where residual is the cofactor without rational
    roots (monic).  Degrees 1 and 2 are handled in closed form; higher degree
    goes through sympy's univariate factorization over Q.
    """
    a = _trim(a)
    deg = len(a) - 1
    if deg <= 0:
        return [], a
    if deg == 1:
        return [-a[0] / a[1]], [Fraction(1)]
    if deg == 2:
        c, b, lead = a
        disc = b * b - 4 * lead * c
        s = _rational_sqrt(disc)
        if s is None:
            return [], [x / lead for x in a]
        return sorted({(-b + s) / (2 * lead), (-b - s) / (2 * lead)}), [Fraction(1)]
    import sympy

    y = sympy.Symbol("y")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(a)], y, domain="QQ")
    roots, residual = [], [Fraction(1)]
    for fac, _ in poly.factor_list()[1]:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        if len(coeffs) == 2:
            roots.append(-coeffs[0] / coeffs[1])
        else:
            residual = _umul(residual, [c / coeffs[-1] for c in coeffs])
    return sorted(roots), residual


def _umul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def factor_binary_form(form, x0="x0", x1="x1"):
    """Factor a binary form over Q into rational points with multiplicity.

    Returns (roots, irrational) where roots is a list of ((a, b), mult) with
    (a:b) a point where the form vanishes, canonicalized first-nonzero = 1, and
    irrational is a list of (MPoly factor, mult) with no rational zeros.
    """
    form = form.with_vars(tuple(dict.fromkeys(form.vars + (x0, x1))))
    if form.is_zero():
        raise ValueError("zero form has no factorization")
    d = form.degree()
    i0 = form.vars.index(x0)
    i1 = form.vars.index(x1)
    # dehomogenize at x0 = 1, y = x1
    coeffs = [Fraction(0)] * (d + 1)
    for e, c in form.terms.items():
        coeffs[e[i1]] += c
    coeffs = _trim(coeffs)
    roots, irr = [], []
    at_infinity = d - (len(coeffs) - 1)
    if at_infinity:
        roots.append(((Fraction(0), Fraction(1)), at_infinity))
    X0, X1 = MPoly.var(x0, (x0, x1)), MPoly.var(x1, (x0, x1))
    for part, mult in squarefree_decomposition(coeffs):
        rs, residual = rational_roots_squarefree(part)
        for r in rs:
            roots.append(((Fraction(1), r), mult))
        if len(residual) > 1:
            k = len(residual) - 1
            f = MPoly((x0, x1))
            for j, c in enumerate(residual):
                f = f + c * X1 ** j * X0 ** (k - j)
            irr.append((f, mult))
    roots.sort(key=lambda t: (t[0][0] == 0, t[0][1]))
    return roots, irr
