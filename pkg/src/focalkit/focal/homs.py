"""Rank-one tangent homomorphisms and multiplicity witnesses for line families."""

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import FocalFiberError, InputError
from ..exactalg import LinSubspace, MPoly, RationalSampler, factor_binary_form, gcd_polys, nullspace, rank
from ..families import canonical_point
from .charmatrix import TangentHom, characteristic_matrix, focal_divisor


@dataclass(frozen=True)
class RankOneHoms:
    """Rank-one classes in the tangent space of the family at a line.

    ``classes`` pairs each class (up to scalar) with its kernel point.  When
    the rank-one locus is positive dimensional, ``pencil`` is set and
    ``pencil_kernels`` lists the kernels met along it.
    """

    classes: tuple = ()
    pencil: bool = False
    pencil_kernels: tuple = ()
    irrational: int = 0

    @property
    def kernels(self):
        return [p for _, p in self.classes]


def _kernel_point(h):
    ker = h.kernel()
    if len(ker) != 1:
        return None
    return canonical_point(ker[0])


def rank_one_homs(spec, t):
    """All rank-one elements of the span of the characteristic columns, with their kernels."""
    if spec.k != 1:
        raise InputError("rank_one_homs is defined for line families (k = 1)")
    cm = characteristic_matrix(spec, t)
    if focal_divisor(cm).whole_fiber_focal:
        raise FocalFiberError("the line is focal")
    homs = cm.homs()
    n = len(homs)
    if n == 1:
        h = homs[0]
        if h.rank == 1:
            return RankOneHoms(((h, _kernel_point(h)),))
        return RankOneHoms()
    if n == 2:
        return _rank_one_pencil(cm, homs)
    return _rank_one_by_kernels(cm, homs)


def _rank_one_pencil(cm, homs):
    # the 2x2 minors of l0*eta_1 + l1*eta_2 are binary quadrics in (l0, l1)
    L0, L1 = MPoly.gens("l0", "l1")
    rows = len(homs[0].matrix)
    entries = [[L0 * homs[0].matrix[i][a] + L1 * homs[1].matrix[i][a] for a in range(2)] for i in range(rows)]
    minors = []
    for i in range(rows):
        for j in range(i + 1, rows):
            minors.append(entries[i][0] * entries[j][1] - entries[i][1] * entries[j][0])
    if all(m.is_zero() for m in minors):
        kernels = sorted({_kernel_point(h) for h in homs if h.rank == 1} - {None})
        return RankOneHoms(pencil=True, pencil_kernels=tuple(kernels))
    g = gcd_polys(minors).with_vars(("l0", "l1"))
    if g.degree() <= 0:
        return RankOneHoms()
    roots, irr = factor_binary_form(g, "l0", "l1")
    classes = []
    for lam, _ in roots:
        h = cm.combination(lam)
        if h.is_zero():
            continue
        classes.append((h, _kernel_point(h)))
    classes.sort(key=lambda c: c[1])
    return RankOneHoms(tuple(classes), irrational=sum(f.degree() for f, _ in irr))


def _rank_one_by_kernels(cm, homs):
    # eta(v) = 0 for a nonzero eta in the span: solve A(v) lam = 0 at each focus
    div = focal_divisor(cm)
    classes = []
    kernels = []
    pencil = False
    for point, _ in div.roots:
        ker = nullspace(cm.at(point), len(homs)) if cm.matrix.rows else []
        if len(ker) > 1:
            pencil = True
            kernels.append(point)
        elif ker:
            h = cm.combination(ker[0])
            if h.rank == 1:
                classes.append((h, point))
    return RankOneHoms(tuple(classes), pencil, tuple(kernels))


@dataclass(frozen=True)
class Witness:
    eta1: TangentHom
    eta2: TangentHom
    lam1: tuple = field(default=())
    lam2: tuple = field(default=())


def check_witness(w, v):
    """The four conditions characterizing a focus of multiplicity >= 2."""
    im1 = w.eta1.image()
    return (
        not any(w.eta1.apply(v))
        and im1.dim > 0
        and im1.contains(w.eta2.apply(v))
        and w.eta2.image() != im1
        and rank([list(w.lam1), list(w.lam2)]) == 2
    )


def multiplicity_witness(spec, t, focus, sampler=None):
    """A pair (eta1, eta2) certifying that ``focus`` has multiplicity >= 2, else None."""
    cm = characteristic_matrix(spec, t)
    div = focal_divisor(cm)
    v = [Fraction(c) for c in focus]
    if not div.vanishes_at(v):
        raise InputError(f"{tuple(focus)} is not a root of the focal divisor")
    sampler = sampler or RationalSampler("witness")
    n = cm.matrix.cols
    Av = cm.at(v)
    K = nullspace(Av, n)
    for lam1 in _candidates(K, sampler):
        eta1 = cm.combination(lam1)
        im1 = eta1.image()
        if im1.dim == 0:
            continue
        # lam with A(v) lam in Im(eta1): annihilators of Im(eta1) kill A(v) lam
        eqs = []
        for alpha in im1.annihilator():
            eqs.append([sum((a * Av[i][j] for i, a in enumerate(alpha)), Fraction(0)) for j in range(n)])
        L = nullspace(eqs, n) if eqs else nullspace([], n)
        for lam2 in _candidates(L, sampler):
            if rank([lam1, lam2]) < 2:
                continue
            eta2 = cm.combination(lam2)
            if eta2.image() == im1:
                continue
            w = Witness(eta1, eta2, tuple(lam1), tuple(lam2))
            if check_witness(w, v):
                return w
    return None


def _candidates(basis, sampler, extra=3):
    for b in basis:
        yield b
    if len(basis) > 1:
        for _ in range(extra):
            coeffs = sampler.vector(len(basis))
            yield [sum((c * b[i] for c, b in zip(coeffs, basis)), Fraction(0)) for i in range(len(basis[0]))]
