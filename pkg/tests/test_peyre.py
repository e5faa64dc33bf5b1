import math
from fractions import Fraction

import mpmath
import pytest
from sympy import Matrix

from torsorcount.fan import PicardData, picard_basis
from torsorcount.library import get_fan, hirzebruch, library
from torsorcount.peyre import (
    ConstantError,
    PolytopeError,
    SymbolicConstant,
    alpha,
    alpha_peyre,
    constant_report,
    eff_dual_polytope,
    leading_constant,
    peyre_components,
    predicted_count,
    symbolic_part,
)
from torsorcount.quadfield import make_field

LIB = [e.name for e in library()]
SHEARS = {
    2: [[1, 1], [0, 1]],
    3: [[1, 2, 0], [0, 1, -1], [1, 0, 1]],
    4: [[1, 0, 1, 0], [0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 2, 1]],
}


def sheared(pic: PicardData) -> PicardData:
    """The same Picard group with a unimodular change of basis applied."""
    r = pic.rank
    G = Matrix(SHEARS[r]) if r in SHEARS else -Matrix.eye(r)
    assert abs(G.det()) == 1
    C = G * Matrix(pic.class_matrix)
    S = Matrix(pic.section) * G.inv()
    return PicardData(r, tuple(map(tuple, C.tolist())), tuple(tuple(int(x) for x in row) for row in S.tolist()))


# -- alpha --------------------------------------------------------------------


@pytest.mark.parametrize("name,vol", [("P1", Fraction(1, 2)), ("P2", Fraction(1, 3)), ("P1xP1", Fraction(1, 8))])
def test_alpha_examples(name, vol):
    assert alpha(get_fan(name)) == vol


@pytest.mark.parametrize("name", LIB)
def test_alpha_basis_invariant(name):
    fan = get_fan(name)
    pic = picard_basis(fan)
    assert alpha(fan, sheared(pic)) == alpha(fan, pic)


@pytest.mark.parametrize("name", LIB)
def test_polytope_vertices_feasible(name):
    poly = eff_dual_polytope(get_fan(name))
    assert len(poly.vertices) >= poly.dim + 1
    for v in poly.vertices:
        assert poly.contains(v)
    assert poly.volume() > 0


def test_products_of_lines_multiply():
    """C(P1^k) = C(P1)^k / (k-1)! since #{h1...hk <= B} ~ B (log B)^(k-1) / (k-1)!."""
    K = make_field(1)
    one = symbolic_part(get_fan("P1"), K)
    for k, name in ((2, "P1xP1"), (3, "P1xP1xP1")):
        prod = one
        for _ in range(k - 1):
            prod = prod * one
        assert symbolic_part(get_fan(name), K) == prod * Fraction(1, math.factorial(k - 1))


def test_alpha_peyre_is_rank_times_volume():
    for e in library():
        assert alpha_peyre(e.fan) == e.fan.picard_rank * alpha(e.fan)


def test_unbounded_polytope_rejected():
    fan = get_fan("P1xP1")
    degenerate = PicardData(2, ((1, 1, 0, 0), (0, 0, 0, 0)), ((1, 0), (0, 0), (0, 1), (0, 0)))
    with pytest.raises(PolytopeError):
        eff_dual_polytope(fan, degenerate)


def test_non_gg_rejected():
    with pytest.raises(ConstantError, match="globally generated"):
        alpha(hirzebruch(3))
    with pytest.raises(ConstantError):
        leading_constant(hirzebruch(3), make_field(1), 100)


# -- symbolic constants ---------------------------------------------------------


def test_symbolic_arithmetic():
    a = SymbolicConstant(Fraction(3, 2), 1, 20, 2)
    b = SymbolicConstant(Fraction(4), 2, 20, 1)
    c = a * b
    assert (c.q, c.pi_power, c.disc, c.disc_half_power) == (6, 3, 20, 3)
    assert str(c) == "6 * pi^3 * 20^(-3/2)"
    with pytest.raises(ConstantError):
        a * SymbolicConstant(1, 0, 4, 1)


@pytest.mark.parametrize("name", LIB)
def test_symbolic_numeric_consistency(name):
    K = make_field(5)
    first, second, third = peyre_components(get_fan(name), K)
    sym = first * second * third
    with mpmath.workdps(40):
        numeric = first.evaluate(30) * second.evaluate(30) * third.evaluate(30)
        exact = sym.evaluate(30)
        assert abs(numeric / exact - 1) < mpmath.mpf(10) ** -25


@pytest.mark.parametrize("D", [1, 2, 3, 5])
@pytest.mark.parametrize("name", LIB)
def test_component_identity(name, D):
    fan, K = get_fan(name), make_field(D)
    first, second, third = peyre_components(fan, K)
    assert symbolic_part(fan, K) == first * second * third * alpha_peyre(fan)


def test_components_examples(gauss, k5):
    fan = get_fan("P1xP1")
    first, second, _ = peyre_components(fan, k5)
    assert (first.q, first.pi_power) == (4, 2)  # (2 pi * 2/2)^2
    assert (second.q, second.pi_power) == (16, 2)  # (2 pi)^2 * 4
    _, _, third = peyre_components(get_fan("P2"), gauss)
    assert (third.disc, third.disc_half_power) == (4, 3)


def test_omega_and_class_number_factor(gauss, k5):
    """Q(i) -> Q(sqrt -5) multiplies h^r omega^-r by (2/2)^r / (1/4)^r = 4^r."""
    for name in ("P1", "P1xP1", "P1xP1xP1"):
        fan = get_fan(name)
        r = fan.picard_rank
        a, b = symbolic_part(fan, gauss), symbolic_part(fan, k5)
        assert b.q / a.q == Fraction(4) ** r
        assert a.pi_power == b.pi_power == fan.n_rays
        assert (a.disc, b.disc) == (4, 20)


def test_max_cone_factor():
    K = make_field(1)
    assert constant_report(get_fan("P2"), K, 100)["max_cones"] == 3
    assert constant_report(get_fan("P1xP1"), K, 100)["max_cones"] == 4


def test_leading_constant_structure(gauss):
    c = leading_constant(get_fan("P1"), gauss, 10**3)
    lo, hi = c.interval
    assert lo <= c.value <= hi
    assert c.value == pytest.approx(float(c.symbolic.evaluate()) * float(c.kappa.value), rel=1e-12)
    # P1 over Q(i): (1/2) (1/4)^1 (1/4) (2 pi)^2 * 2 = pi^2 / 4
    assert c.symbolic == SymbolicConstant(Fraction(1, 4), 2, 4, 2) * 4


def test_constant_report_keys(k5):
    js = constant_report(get_fan("P2"), k5, 10**3)
    assert {"alpha", "kappa", "h", "omega", "disc", "N", "r", "max_cones", "C_numeric", "C_interval"} <= set(js)
    assert js["alpha"] == "1/3" and js["h"] == 2 and js["omega"] == 2 and js["disc"] == 20
    lo, hi = map(float, js["C_interval"])
    assert lo <= float(js["C_numeric"]) <= hi


# -- predictions ----------------------------------------------------------------


def test_predicted_count_rank_one(gauss):
    c = leading_constant(get_fan("P2"), gauss, 10**3)
    p = predicted_count(get_fan("P2"), gauss, 1000, const=c)
    assert p.value == pytest.approx(float(c.value) * 1000, rel=1e-15)


def test_predicted_count_b_equals_e(gauss):
    fan = get_fan("P1xP1")
    c = leading_constant(fan, gauss, 10**3)
    with mpmath.workdps(40):
        p = predicted_count(fan, gauss, mpmath.e, const=c)
        assert abs(p.value - c.value * mpmath.e) < mpmath.mpf(10) ** -30
    assert p.lo <= p.value <= p.hi


def test_predicted_count_needs_b_above_one(gauss):
    with pytest.raises(ConstantError):
        predicted_count(get_fan("P1"), gauss, 1, P=100)
