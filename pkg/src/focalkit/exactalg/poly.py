"""Sparse multivariate polynomials with exact rational coefficients.

An :class:`MPoly` carries its own ordered variable list.  Binary operations
between polynomials over different variable lists first merge the lists
(left operand's order first), so callers rarely need to align by hand.
"""

from fractions import Fraction
from numbers import Rational

from ..errors import InputError

Rat = Fraction


def as_rat(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        nv = len(self.vars)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nv:
                raise ValueError(f"exponent tuple {exps} does not match {nv} variables")
            c = as_rat(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c, variables=()):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name, variables=None):
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            variables = variables + (name,)
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1})

    @classmethod
    def gens(cls, *names):
        return tuple(cls.var(n, names) for n in names)

    # -- variable bookkeeping --------------------------------------------
    def with_vars(self, variables):
        """Re-express over ``variables`` (must contain every variable in use)."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        index = {v: i for i, v in enumerate(variables)}
        out = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.vars, exps):
                if e:
                    if v not in index:
                        raise InputError(f"variable {v!r} missing from target variable list")
                    new[index[v]] = e
            out[tuple(new)] = c
        p = MPoly.__new__(MPoly)
        p.vars = variables
        p.terms = out
        return p

    def used_vars(self):
        used = [False] * len(self.vars)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def _align(self, other):
        if isinstance(other, MPoly):
            if other.vars == self.vars:
                return self, other
            merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
            return self.with_vars(merged), other.with_vars(merged)
        return self, MPoly.const(as_rat(other), self.vars)

    # -- predicates / accessors --------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name):
        if name not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def monic(self):
        if not self.terms:
            return self
        return self * (1 / self.leading()[1])

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MPoly) else -as_rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = as_rat(other)
            if not c:
                return _raw(self.vars, {})
            return _raw(self.vars, {e: v * c for e, v in self.terms.items()})
        a, b = self._align(other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return _raw(a.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            return exact_div(self, other)
        return self * (1 / as_rat(other))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        result = MPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = MPoly.const(as_rat(other), self.vars)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        items = []
        for e, c in self.terms.items():
            key = tuple(sorted((v, x) for v, x in zip(self.vars, e) if x))
            items.append((key, c))
        return hash(frozenset(items))

    # -- calculus / evaluation ------------------------------------------------
    def diff(self, name):
        if name not in self.vars:
            return _raw(self.vars, {})
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return _raw(self.vars, out)

    def __call__(self, assignment):
        return self.eval(assignment)

    def eval(self, assignment):
        """Evaluate at a full assignment ``{name: Rat}``; returns a Fraction."""
        missing = [v for v in self.used_vars() if v not in assignment]
        if missing:
            raise InputError(f"assignment does not cover variables {missing}")
        vals = [as_rat(assignment[v]) if v in assignment else None for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for val, x in zip(vals, e):
                if x:
                    term *= val ** x
            total += term
        return total

    def subs(self, mapping):
        """Substitute Rats or MPolys for some variables; the rest stay symbolic."""
        keep = tuple(v for v in self.vars if v not in mapping)
        result = MPoly(keep)
        cache = {}
        for e, c in self.terms.items():
            mono = MPoly.const(c, keep)
            kept = [0] * len(keep)
            for v, x in zip(self.vars, e):
                if not x:
                    continue
                if v in mapping:
                    key = (v, x)
                    if key not in cache:
                        val = mapping[v]
                        cache[key] = val ** x if isinstance(val, MPoly) else as_rat(val) ** x
                    mono = mono * cache[key]
                else:
                    kept[keep.index(v)] = x
            if any(kept):
                mono = mono * _raw(keep, {tuple(kept): 1})
            result = result + mono
        return result

    def coefficients(self, names):
        """Split as a polynomial in ``names``: {exponents in names: MPoly in the rest}."""
        names = tuple(names)
        idx = [self.vars.index(n) if n in self.vars else None for n in names]
        rest = tuple(v for v in self.vars if v not in names)
        rest_idx = [self.vars.index(v) for v in rest]
        out = {}
        for e, c in self.terms.items():
            key = tuple(e[i] if i is not None else 0 for i in idx)
            sub = tuple(e[i] for i in rest_idx)
            out.setdefault(key, {})
            out[key][sub] = out[key].get(sub, 0) + c
        return {k: MPoly(rest, v) for k, v in out.items()}

    # -- rendering ------------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"MPoly({render(self)!r}, vars={self.vars})"


def _raw(variables, terms):
    p = MPoly.__new__(MPoly)
    p.vars = variables
    p.terms = terms
    return p


def render_rat(c):
    c = as_rat(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(p):
    """Render in the input grammar: variables sorted, terms in descending grlex."""
    if not p.terms:
        return "0"
    order = sorted(range(len(p.vars)), key=lambda i: p.vars[i])

    def key(e):
        se = tuple(e[i] for i in order)
        return (sum(se), se)

    pieces = []
    for e in sorted(p.terms, key=key, reverse=True):
        c = p.terms[e]
        factors = []
        for i in order:
            if e[i] == 1:
                factors.append(p.vars[i])
            elif e[i] > 1:
                factors.append(f"{p.vars[i]}^{e[i]}")
        mag = abs(c)
        if not factors:
            body = render_rat(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = render_rat(mag) + "*" + "*".join(factors)
        pieces.append(("-" if c < 0 else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def divmod_poly(f, g):
    """Multivariate division of f by g under graded-lex order: f = q*g + r."""
    f, g = f._align(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lg, cg = g.leading()
    q = MPoly(f.vars)
    r = MPoly(f.vars)
    p = f
    while not p.is_zero():
        lp, cp = p.leading()
        if all(a >= b for a, b in zip(lp, lg)):
            t = _raw(f.vars, {tuple(a - b for a, b in zip(lp, lg)): cp / cg})
            q = q + t
            p = p - t * g
        else:
            lt = _raw(f.vars, {lp: cp})
            r = r + lt
            p = p - lt
    return q, r


def exact_div(f, g):
    q, r = divmod_poly(f, g)
    if not r.is_zero():
        raise ArithmeticError(f"{g} does not divide {f}")
    return q
