from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wgwa import poly as P
from wgwa.errors import InvalidIdeal, NonPrimeModulus, NotAnEdge, NotEssential, ZeroLeadingCoefficient
from wgwa.universe import (
    OUTSIDE,
    ZERO_POINT,
    Affine,
    Angle,
    FinitePoly,
    PolyIdeal,
    PowerMap,
    RationalPoint,
    ResidueElement,
    invert_sigma,
    is_essential_edge,
    make_universe,
    sigma_residue,
    vanishing,
)

U5 = FinitePoly(5, (0, 0, 1), (0, 1))
U7 = FinitePoly(7, (0, 0, 1), (-2, 1))


def I5(*c):
    return PolyIdeal(5, c)


def I7(*c):
    return PolyIdeal(7, c)


def test_construction_and_validation():
    assert U7.f == (0, 0, 1)
    assert U7.t == (5, 1)
    with pytest.raises(NonPrimeModulus):
        FinitePoly(6, (0, 0, 1), (0, 1))
    with pytest.raises(ZeroLeadingCoefficient):
        Affine(0, 1, (0, 1))
    with pytest.raises(InvalidIdeal):
        PolyIdeal(5, (4, 0, 1))  # h^2 - 1 splits
    with pytest.raises(InvalidIdeal):
        PolyIdeal(5, (1, 2))  # not monic
    a = Affine(Fraction(4, 2), 1, (0, 1))
    assert a.a == Fraction(2)
    assert PowerMap(2, OUTSIDE).describe() == {"backend": "power_map", "n": 2, "zdot": "outside"}


@pytest.mark.parametrize("u", [U5, U7, PowerMap(3, Angle(Fraction(1, 3))), Affine(2, 1, (0, 1)),
                               Affine(Fraction(-1, 2), Fraction(3, 7), (Fraction(1, 2), 1))])
def test_describe_round_trip(u):
    assert make_universe(u.describe()) == u


def test_down_examples():
    assert U5.down(I5(3, 1)) == I5(1, 1)  # (h-2) -> (h-4)
    ident = FinitePoly(5, (0, 1), (0, 1))
    for q in list(P.irreducibles(5, 1)) + list(P.irreducibles(5, 2)):
        assert ident.down(PolyIdeal(5, q)) == PolyIdeal(5, q)
    assert PowerMap(2).down(Angle(Fraction(1, 4))) == Angle(Fraction(1, 2))
    assert PowerMap(2).down(ZERO_POINT) == ZERO_POINT
    assert Affine(2, 1).down(RationalPoint(Fraction(3))) == RationalPoint(Fraction(7))


def test_up_examples():
    assert U5.up(I5(1, 1)) == (I5(3, 1), I5(2, 1))  # (h-2), (h-3)
    assert U5.up(I5(3, 1)) == (I5(3, 0, 1),)
    assert PowerMap(2).up(Angle(Fraction(1, 2))) == (Angle(Fraction(1, 4)), Angle(Fraction(3, 4)))
    assert PowerMap(2).up(ZERO_POINT) == (ZERO_POINT,)
    assert Affine(2, 1).up(RationalPoint(Fraction(7))) == (RationalPoint(Fraction(3)),)


def test_rendering():
    assert I5(1, 1).render() == "(h-4)"
    assert I7(1, 3, 1).render() == "(h^2+3h+1)"
    assert Angle(Fraction(1, 4)).render() == "angle:1/4"
    assert ZERO_POINT.render() == "zero"
    assert RationalPoint(Fraction(3, 2)).render() == "chi:3/2"
    assert U5.parse_ideal("(h-4)") == I5(1, 1)
    assert U5.parse_ideal("1,1") == I5(1, 1)


def test_vanishing_examples():
    assert vanishing(U7, I7(5, 1)) == {"t_in": True, "sigma_t_in": False}
    assert vanishing(U7, I7(3, 1)) == {"t_in": False, "sigma_t_in": True}
    pm = PowerMap(2, OUTSIDE)
    for q in (0, Fraction(1, 3), Fraction(5, 8)):
        assert vanishing(pm, Angle(Fraction(q))) == {"t_in": False, "sigma_t_in": False}
    assert vanishing(pm, ZERO_POINT) == {"t_in": False, "sigma_t_in": False}


def test_sigma_residue_examples():
    x = sigma_residue(U5, I5(1, 1), I5(3, 1), ResidueElement(I5(1, 1), (3,)))
    assert x.value == (3,)
    assert sigma_residue(U5, I5(1, 1), I5(3, 1), ResidueElement(I5(1, 1), (0, 1))).value == (4,)
    hh = sigma_residue(U5, I5(3, 1), I5(3, 0, 1), ResidueElement(I5(3, 1), (0, 1)))
    assert hh.value == (2,)
    with pytest.raises(NotAnEdge):
        sigma_residue(U5, I5(3, 1), I5(2, 1), ResidueElement(I5(3, 1), (1,)))


def test_essentiality_examples():
    assert is_essential_edge(U5, I5(1, 1), I5(3, 1))
    assert not is_essential_edge(U5, I5(3, 1), I5(3, 0, 1))
    const = FinitePoly(5, (2,), (0, 1))
    assert const.down(I5(2, 0, 1)) == I5(3, 1)
    assert not is_essential_edge(const, I5(3, 1), I5(2, 0, 1))
    assert is_essential_edge(PowerMap(2), Angle(Fraction(1, 2)), Angle(Fraction(1, 4)))


def test_invert_sigma_examples():
    y = invert_sigma(U5, I5(3, 1), ResidueElement(I5(3, 1), (3,)))
    assert y == ResidueElement(I5(1, 1), (3,))
    pm = PowerMap(2)
    c = Fraction(5, 3)
    assert invert_sigma(pm, Angle(Fraction(1, 4)), ResidueElement(Angle(Fraction(1, 4)), c)) == \
        ResidueElement(Angle(Fraction(1, 2)), c)
    for u, m in ((U5, I5(3, 1)), (pm, Angle(Fraction(1, 4))), (Affine(2, 1), RationalPoint(Fraction(1)))):
        z = invert_sigma(u, m, u.zero_at(m))
        assert u.field(u.down(m)).is_zero(z.value)
    with pytest.raises(NotEssential):
        invert_sigma(U5, I5(3, 0, 1), ResidueElement(I5(3, 0, 1), (1,)))


_IRRED = {p: [q for d in (1, 2) for q in P.irreducibles(p, d)] for p in (3, 5, 7)}
_FS = [(0, 0, 1), (1, 0, 1), (1, 2), (0, 0, 0, 1), (2, 1, 1)]


@st.composite
def finite_point(draw):
    p = draw(st.sampled_from(sorted(_IRRED)))
    f = draw(st.sampled_from(_FS))
    t = draw(st.sampled_from([(0, 1), (1, 1), (2, 0, 1)]))
    u = FinitePoly(p, f, t)
    return u, PolyIdeal(p, draw(st.sampled_from(_IRRED[p])))


@given(finite_point())
def test_down_up_consistency(um):
    u, m = um
    for n in u.up(m):
        assert u.down(n) == m
    # the down-image is the unique irreducible dividing its pull-back
    n = u.down(m)
    assert P.rem(P.compose(n.coeffs, u.f, u.p), m.coeffs, u.p) == ()
    assert m in u.up(n)


@given(finite_point())
def test_vanishing_relation(um):
    u, m = um
    assert u.sigma_t_in(m) == u.t_in(u.down(m))


@given(finite_point(), st.data())
def test_residue_round_trip(um, data):
    u, m = um
    n = u.down(m)
    K = u.field(n)
    x = ResidueElement(n, data.draw(st.sampled_from(list(K.elements()))))
    y = u.sigma_residue(n, m, x)
    if u.is_essential_edge(n, m):
        assert u.invert_sigma(m, y) == x
        Km = u.field(m)
        z = ResidueElement(m, data.draw(st.sampled_from(list(Km.elements()))))
        assert u.sigma_residue(n, m, u.invert_sigma(m, z)) == z
    else:
        assert K.degree < u.field(m).degree


@given(st.integers(1, 5), st.integers(0, 30), st.integers(1, 31))
def test_power_map_branching(n, a, b):
    q = Fraction(a % b, b)
    u = PowerMap(n)
    ups = u.up(Angle(q))
    assert len(ups) == n
    assert all(u.down(x) == Angle(q) for x in ups)


@given(st.fractions(min_value=-5, max_value=5).filter(lambda x: x != 0), st.fractions(-5, 5),
       st.fractions(-20, 20))
def test_affine_down_up(a, b, chi):
    u = Affine(a, b)
    m = RationalPoint(chi)
    (pre,) = u.up(m)
    assert u.down(pre) == m
    assert u.up(u.down(m)) == (m,)
