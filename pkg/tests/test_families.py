from fractions import Fraction

import pytest

from focalkit.errors import InputError
from focalkit.exactalg import MPoly, RationalSampler
from focalkit.families import (
    CATALOG,
    FamilySpec,
    canonical_point,
    df_rank,
    fixture,
    incidence,
    random_base_point,
    union_dimension,
)
from oracles import bareiss_rank, df_rank_oracle

# union dimensions computed by the sympy Jacobian oracle, frozen here
UNION_DIMS = {
    "F1": 2, "F2": 2, "F3": 2, "F4": 3, "F5": 3, "F6": 3, "F7": 3, "F8": 3,
    "F10": 3, "F11": 3, "F12": 4, "CONE-LINE": 3, "CONE-DEV": 3,
}


@pytest.mark.parametrize("name", sorted(UNION_DIMS))
def test_union_dimension_matches_expected(name):
    spec = fixture(name)
    ud = union_dimension(spec, trials=4, sampler=RationalSampler(1))
    assert ud.dim == UNION_DIMS[name]
    assert ud.ok == (ud.dim == spec.n + spec.k)


@pytest.mark.parametrize("name", ["F1", "F4", "F7", "F12"])
def test_df_rank_matches_sympy_oracle(name):
    spec = fixture(name)
    s = RationalSampler(2)
    for _ in range(3):
        t, x = s.vector(spec.n), s.projective_point(spec.k + 1)
        assert df_rank(spec, t, x) == df_rank_oracle(spec, t, x)


def test_catalog_is_complete():
    for name in ["F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F10", "F11", "F12"]:
        assert name in CATALOG


def test_unknown_fixture():
    with pytest.raises(InputError, match="unknown fixture"):
        fixture("F99")


def test_f7_accepts_custom_curves():
    t = ("t",)
    T = MPoly.var("t")
    one, z = MPoly.const(1, t), MPoly(t)
    C = [one, T, T * T, T ** 3, z, z, z]
    D = [z, z, z, z, one, T, T * T]
    spec = fixture("F7", C=C, D=D)
    assert spec.N == 6 and spec.n == 2
    assert union_dimension(spec).dim == 3


def test_f8_custom_surface_needs_vertex():
    with pytest.raises(InputError):
        fixture("F8", surface=[MPoly.const(1, ("u", "v"))] * 5)


def _line(N, params, a, b):
    return FamilySpec(N, 1, params, [a, b])


def test_spec_rejects_wrong_arity():
    t = ("t",)
    T = MPoly.var("t")
    with pytest.raises(InputError, match="coordinates"):
        _line(3, t, [1, T, T * T], [0, 1, 2 * T, 0])


def test_spec_rejects_wrong_point_count():
    with pytest.raises(InputError, match="spanning points"):
        FamilySpec(3, 1, ("t",), [[1, 0, 0, 0]])


def test_spec_rejects_undeclared_variable():
    s = MPoly.var("s")
    with pytest.raises(InputError, match="undeclared"):
        _line(3, ("t",), [1, s, 0, 0], [0, 0, 1, 0])


def test_spec_rejects_dependent_points():
    T = MPoly.var("t")
    with pytest.raises(InputError, match="dependent"):
        _line(3, ("t",), [1, T, 0, 0], [2, 2 * T, 0, 0])


def test_spec_rejects_too_many_parameters():
    p = ("a", "b", "c")
    A = MPoly.var("a", p)
    with pytest.raises(InputError, match="exceeds"):
        FamilySpec(3, 1, p, [[1, A, 0, 0], [0, 0, 1, A]])


def test_spec_rejects_fiber_name_clash():
    x0 = MPoly.var("x0")
    with pytest.raises(InputError, match="clash"):
        _line(3, ("x0",), [1, x0, 0, 0], [0, 0, 1, x0])


def test_incidence_map_evaluates_combination():
    spec = fixture("F1")
    inc = incidence(spec)
    t, x = [Fraction(2)], [Fraction(3), Fraction(-1)]
    P = spec.span_at(t)
    assert inc.at(t, x) == [3 * a - b for a, b in zip(P[0], P[1])]
    assert inc.jacobian().shape == (4, 3)


def test_recombined_and_transformed_preserve_union():
    spec = fixture("F4")
    s = RationalSampler(5)
    for other in (spec.recombined(s.invertible_matrix(2)), spec.transformed(s.invertible_matrix(5))):
        assert union_dimension(other).dim == 3


def test_random_base_point_is_nondegenerate():
    spec = fixture("F11")
    t = random_base_point(spec, RationalSampler(0))
    assert bareiss_rank(spec.span_at(t)) == 2


def test_canonical_point():
    assert canonical_point([0, 2, 4]) == (0, 1, 2)
    with pytest.raises(ValueError):
        canonical_point([0, 0])


def test_equality_and_reordering():
    a, b = fixture("F3"), fixture("F3")
    assert a == b and hash(a) == hash(b)
    assert a.reordered([1, 0]) != a
