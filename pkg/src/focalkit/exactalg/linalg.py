"""Exact linear algebra over Q and over polynomial rings."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from ..errors import InputError, ShapeError
from .poly import MPoly, as_rat


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [[as_rat(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """Basis of {v : M v = 0} as a list of vectors (RREF free-variable basis)."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def transpose(rows):
    return [list(c) for c in zip(*rows)]


def mat_vec(m, v):
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]


def det_rat(m):
    m = [[as_rat(x) for x in r] for r in m]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


@dataclass(frozen=True)
class LinSubspace:
    """A linear subspace of Q^ambient, stored by a reduced echelon basis."""

    ambient: int
    basis: tuple

    @classmethod
    def span(cls, vectors, ambient=None):
        vectors = [list(v) for v in vectors]
        if ambient is None:
            if not vectors:
                raise ValueError("ambient dimension required for an empty span")
            ambient = len(vectors[0])
        if any(len(v) != ambient for v in vectors):
            raise ShapeError("vectors of inconsistent length")
        red, _ = rref(vectors, ambient) if vectors else ([], [])
        return cls(ambient, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient):
        return cls.span([[int(i == j) for i in range(ambient)] for j in range(ambient)], ambient)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def projective_dim(self):
        return self.dim - 1

    def contains(self, v):
        v = [as_rat(x) for x in v]
        return rank(list(self.basis) + [v]) == self.dim

    def contains_space(self, other):
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other):
        return LinSubspace.span(list(self.basis) + list(other.basis), self.ambient)

    def intersect(self, other):
        return intersect_subspaces([self, other])

    def annihilator(self):
        """Basis of linear forms vanishing on the subspace."""
        return nullspace([list(b) for b in self.basis], self.ambient)


def intersect_subspaces(spaces):
    spaces = list(spaces)
    ambient = spaces[0].ambient
    eqs = []
    for s in spaces:
        eqs.extend(s.annihilator())
    return LinSubspace.span(nullspace(eqs, ambient), ambient) if eqs else LinSubspace.full(ambient)


class PolyMatrix:
    """A rectangular matrix of MPoly entries over a common variable list."""

    def __init__(self, entries, variables=None):
        entries = [list(r) for r in entries]
        if entries and any(len(r) != len(entries[0]) for r in entries):
            raise ShapeError("ragged matrix")
        names = list(variables or ())
        for r in entries:
            for x in r:
                if isinstance(x, MPoly):
                    for v in x.vars:
                        if v not in names:
                            names.append(v)
        self.vars = tuple(names)
        self.entries = tuple(
            tuple((x if isinstance(x, MPoly) else MPoly.const(x, self.vars)).with_vars(self.vars) for x in r)
            for r in entries
        )

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def submatrix(self, rows, cols):
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.vars)

    def delete_row(self, i):
        return PolyMatrix([r for k, r in enumerate(self.entries) if k != i], self.vars)

    def transpose(self):
        return PolyMatrix(transpose(self.entries), self.vars)

    def evaluate(self, assignment):
        return [[x.eval(assignment) for x in r] for r in self.entries]

    def is_constant(self):
        return all(x.is_constant() for r in self.entries for x in r)

    def constant_rows(self):
        if not self.is_constant():
            raise InputError("matrix entries are not constant")
        return [[x.constant_value() for x in r] for r in self.entries]

    def det(self):
        if self.rows != self.cols:
            raise ShapeError(f"determinant of a non-square {self.rows}x{self.cols} matrix")
        return poly_det(self.entries, self.vars)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.shape == other.shape and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"PolyMatrix([{body}])"


def poly_det(m, variables=()):
    """Determinant by Laplace expansion along the first row (small matrices)."""
    n = len(m)
    if n == 0:
        return MPoly.const(1, variables)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = MPoly(variables)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * poly_det(minor, variables)
        total = total + term if j % 2 == 0 else total - term
    return total


def signed_maximal_minors(m):
    """phi_i = (-1)^(i+1) det(m with row i deleted), for an (n+1) x n matrix."""
    if m.rows != m.cols + 1:
        raise ShapeError(f"expected rows = cols + 1, got {m.rows}x{m.cols}")
    out = []
    for i in range(m.rows):
        d = m.delete_row(i).det()
        out.append(d if i % 2 == 0 else -d)
    return out


def maximal_minors(m):
    """All minors of order min(rows, cols), keyed by the chosen row/col subset."""
    r = min(m.rows, m.cols)
    out = {}
    for rows in combinations(range(m.rows), r):
        for cols in combinations(range(m.cols), r):
            out[(rows, cols)] = m.submatrix(rows, cols).det()
    return out


def kernel_basis(m):
    """Right kernel of a matrix with constant entries, as a LinSubspace."""
    if isinstance(m, PolyMatrix):
        rows, ncols = m.constant_rows(), m.cols
    else:
        rows = [[as_rat(x) for x in r] for r in m]
        ncols = len(rows[0]) if rows else 0
    return LinSubspace.span(nullspace(rows, ncols), ncols)


def rank_at(m, assignment):
    """Exact rank of m evaluated at ``assignment``."""
    missing = [v for r in m.entries for x in r for v in x.used_vars() if v not in assignment]
    if missing:
        raise InputError(f"assignment is missing variables {sorted(set(missing))}")
    return rank(m.evaluate(assignment))


def leibniz_det(m):
    """Determinant by the permutation expansion; kept as an independent check."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = term * m[i][perm[i]]
        total = total + (term if inv % 2 == 0 else -term)
    return total
