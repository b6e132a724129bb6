from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from focalkit.errors import FocalFiberError, InputError
from focalkit.exactalg import MPoly, RationalSampler
from focalkit.families import FamilySpec, fixture
from focalkit.focal import (
    characteristic_matrix,
    df_rank_oracle,
    fixed_tangent_space,
    focal_divisor,
    focus_branches,
    focus_sweep_rank,
    multiplicity_witness,
    rank_one_homs,
    same_locus,
    swept_tangent,
    symbolic_focal_form,
    tangent_envelope,
    theoremB_matrix,
    verify_focal_tangency,
)
from focalkit.focal.homs import check_witness
from oracles import focal_form_oracle, tangent_intersection_dim, to_sympy

# focal forms on the fiber and envelope dimensions from the sympy oracle
ORACLE = {
    "F1": ("x1", 2), "F2": ("x1", 2), "F3": ("1", 1), "F4": ("x0*x1", 3), "F6": ("x0*x1", 3),
    "F7": ("x1**2", 3), "F8": ("x1**2", 3), "F10": ("x1", 2), "F11": ("x1", 2), "F5": ("x2", 3),
    "F12": ("x2", 2), "CONE-LINE": ("x2", 3), "CONE-DEV": ("x2", 3),
}
LINE_FAMILIES = ["F1", "F2", "F3", "F4", "F6", "F7", "F8", "F10", "F11"]


def _t(spec, seed):
    return RationalSampler(seed).vector(spec.n)


def _as_sympy(div, k):
    gens = sympy.symbols(f"x0:{k + 1}")
    return to_sympy(div.form, gens).monic() if div.degree > 0 else sympy.Poly(1, *gens, domain="QQ")


@pytest.mark.parametrize("name", sorted(ORACLE))
def test_focal_divisor_matches_frozen_oracle(name):
    spec = fixture(name)
    div = focal_divisor(characteristic_matrix(spec, _t(spec, 3)))
    gens = sympy.symbols(f"x0:{spec.k + 1}")
    expected = sympy.Poly(sympy.sympify(ORACLE[name][0], locals=dict(zip(map(str, gens), gens))), *gens,
                          domain="QQ")
    assert _as_sympy(div, spec.k) == expected


@pytest.mark.parametrize("name", ["F4", "F7", "F12"])
def test_focal_divisor_matches_live_oracle(name):
    spec = fixture(name)
    t = _t(spec, 11)
    div = focal_divisor(characteristic_matrix(spec, t))
    assert _as_sympy(div, spec.k) == focal_form_oracle(spec, t)


@pytest.mark.parametrize("name", sorted(ORACLE))
def test_envelope_matches_frozen_oracle(name):
    spec = fixture(name)
    assert tangent_envelope(spec, _t(spec, 4), sampler=RationalSampler(9)).projective_dim == ORACLE[name][1]


def test_envelope_against_live_oracle():
    spec = fixture("F10")
    s = RationalSampler(6)
    t = s.vector(2)
    xs = [s.projective_point(2) for _ in range(5)]
    assert tangent_intersection_dim(spec, t, xs) == tangent_envelope(spec, t, sampler=RationalSampler(7)).projective_dim


def test_characteristic_matrix_f1_at_origin():
    cm = characteristic_matrix(fixture("F1"), [0])
    x1 = MPoly.var("x1", ("x0", "x1"))
    assert cm.matrix.shape == (2, 1)
    assert cm.matrix[0, 0] == 2 * x1 and cm.matrix[1, 0].is_zero()


def test_characteristic_matrix_f3_at_origin():
    cm = characteristic_matrix(fixture("F3"), [0])
    x0, x1 = MPoly.gens("x0", "x1")
    assert [cm.matrix[i, 0] for i in range(2)] == [x0, x1]
    div = focal_divisor(cm)
    assert div.degree == 0 and div.roots == ()


def test_divisor_string_is_factored():
    div = focal_divisor(characteristic_matrix(fixture("F4"), [2, 5]))
    assert str(div) == "x0*x1"
    assert div.support() == [(1, 0), (0, 1)]
    assert div.multiplicity((0, 3)) == 1 and div.multiplicity((1, 1)) == 0


def test_double_focus_multiplicity():
    div = focal_divisor(characteristic_matrix(fixture("F8"), [1, 2]))
    assert str(div) == "x1^2" and div.roots == (((1, 0), 2),)


@pytest.mark.parametrize("name", LINE_FAMILIES)
def test_roots_coincide_with_df_rank_drops(name):
    spec = fixture(name)
    s = RationalSampler(1)
    t = s.vector(spec.n)
    div = focal_divisor(characteristic_matrix(spec, t))
    full = spec.n + 2
    for x in div.support() + [s.projective_point(2) for _ in range(5)]:
        assert (df_rank_oracle(spec, t, x) < full) == div.vanishes_at(x)


@pytest.mark.parametrize("name", ["F1", "F2", "F3", "F4", "F6", "F10", "F11"])
def test_fixed_tangent_space_equals_envelope(name):
    spec = fixture(name)
    t = _t(spec, 8)
    cm = characteristic_matrix(spec, t)
    fixed = fixed_tangent_space(cm)
    env = tangent_envelope(spec, t, sampler=RationalSampler(2))
    assert fixed.subspace == env.subspace
    assert focal_divisor(cm).degree + 1 == fixed.projective_dim


@given(st.integers(0, 2 ** 32))
def test_divisor_degree_invariant_under_coordinate_change(seed):
    spec = fixture("F6")
    s = RationalSampler(seed)
    other = spec.transformed(s.invertible_matrix(6)).recombined(s.invertible_matrix(2))
    t = s.vector(2)
    assert focal_divisor(characteristic_matrix(other, t)).degree == 2


def test_whole_fiber_focal():
    t = ("t",)
    T = MPoly.var("t")
    # the line never moves
    spec = FamilySpec(3, 1, t, [[1, 0, 0, 0], [T, 1, 0, 0]])
    cm = characteristic_matrix(spec, [2])
    assert focal_divisor(cm).whole_fiber_focal
    with pytest.raises(FocalFiberError):
        fixed_tangent_space(cm)
    assert str(focal_divisor(cm)) == "0"


def test_fixed_tangent_space_needs_lines():
    with pytest.raises(InputError):
        fixed_tangent_space(characteristic_matrix(fixture("F5"), [1]))


def test_envelope_needs_enough_samples():
    with pytest.raises(InputError):
        tangent_envelope(fixture("F4"), [1, 2], samples=3)


# --- rank-one homomorphisms and multiplicities ---------------------------------

@pytest.mark.parametrize("name", ["F4", "F6"])
def test_rank_one_classes_biject_with_foci(name):
    spec = fixture(name)
    t = _t(spec, 5)
    homs = rank_one_homs(spec, t)
    div = focal_divisor(characteristic_matrix(spec, t))
    assert len(homs.classes) == 2
    assert sorted(homs.kernels) == sorted(div.support())
    assert all(h.rank == 1 for h, _ in homs.classes)


def test_rank_one_none_for_quadric_ruling():
    assert rank_one_homs(fixture("F3"), [3]).classes == ()


def test_rank_one_pencil_for_cone():
    homs = rank_one_homs(fixture("F8"), [1, 3])
    assert homs.pencil and homs.pencil_kernels == ((1, 0),)


@pytest.mark.parametrize("name,expected", [("F7", True), ("F8", True), ("F4", False), ("F6", False)])
def test_witness_exists_exactly_for_double_foci(name, expected):
    spec = fixture(name)
    t = _t(spec, 2)
    div = focal_divisor(characteristic_matrix(spec, t))
    for point, mult in div.roots:
        w = multiplicity_witness(spec, t, point, RationalSampler(0))
        assert (w is not None) == expected == (mult >= 2)
        if w is not None:
            assert check_witness(w, point)


def test_witness_rejects_non_focus():
    with pytest.raises(InputError):
        multiplicity_witness(fixture("F7"), [1, 1], (1, 1))


# --- branches, sweep ranks and tangency ----------------------------------------

@pytest.mark.parametrize("name,ranks", [
    ("F1", [1]), ("F2", [0]), ("F4", [1, 1]), ("F7", [1]), ("F8", [0]), ("F10", [2]), ("F11", [1]),
])
def test_sweep_ranks(name, ranks):
    spec = fixture(name)
    t = _t(spec, 12)
    got = sorted(focus_sweep_rank(spec, b, t) for b in focus_branches(spec))
    assert got == ranks


def test_symbolic_focal_form_specializes_to_fiberwise_divisor():
    spec = fixture("F11")
    G = symbolic_focal_form(spec)
    t = [Fraction(3), Fraction(-2)]
    a = dict(zip(spec.params, t))
    G_t = G.subs({p: MPoly.const(v, G.vars) for p, v in a.items()})
    div = focal_divisor(characteristic_matrix(spec, t))
    assert G_t.with_vars(("x0", "x1")).monic() == div.form.monic()


@pytest.mark.parametrize("name", ["F10", "F5", "F1", "CONE-DEV"])
def test_tangency_passes(name):
    rep = verify_focal_tangency(fixture(name), 3, RationalSampler(0))
    assert rep.applicable and rep.passed


@pytest.mark.parametrize("name", ["F4", "F2"])
def test_tangency_inapplicable_without_codim_one_focal_locus(name):
    rep = verify_focal_tangency(fixture(name), 2, RationalSampler(0))
    assert not rep.applicable and not rep.passed


def test_swept_tangent_contains_line_f10():
    spec = fixture("F10")
    b = focus_branches(spec)[0]
    t = [Fraction(1, 2), Fraction(3)]
    T = swept_tangent(spec, b.factor, t, b.fiber_point(t))
    assert T.projective_dim == 2
    assert all(T.contains(p) for p in spec.span_at(t))


def test_same_locus():
    f4, f6 = fixture("F4"), fixture("F6")
    b4, b6 = focus_branches(f4), focus_branches(f6)
    assert same_locus(f4, b4[0], b4[1]) is True
    assert same_locus(f6, b6[0], b6[1]) is False


# --- determinant of the fixed-tangent-space matrix ---------------------------

@pytest.mark.parametrize("name", ["F5", "F4"])
def test_theoremB_determinant_is_focal_divisor(name):
    spec = fixture(name)
    t = _t(spec, 13)
    m = theoremB_matrix(spec, t, RationalSampler(1))
    det = m.det()
    div = focal_divisor(characteristic_matrix(spec, t))
    assert det.degree() == spec.n
    assert det.monic() == div.form.with_vars(det.vars).monic()


@pytest.mark.parametrize("name", ["F10", "F12"])
def test_theoremB_needs_fixed_tangent_space(name):
    spec = fixture(name)
    assert theoremB_matrix(spec, _t(spec, 1), RationalSampler(1)) is None
