from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wgwa import linalg as LA
from wgwa.bands import (
    band_act,
    band_iso,
    build_band,
    detect_band_data,
    pmodule,
    pmodule_is_simple,
)
from wgwa.corpus import cycles, gl2_representatives, scalar_classes
from wgwa.errors import FieldMismatch, FieldTooLarge, NotOnCycle
from wgwa.oracle import (
    brute_isomorphic,
    brute_simple,
    check_relations,
    generalized_weight_decomposition,
    to_matrices,
)
from wgwa.universe import Affine, Angle, FinitePoly, PolyIdeal, PowerMap, RationalPoint

U7 = FinitePoly(7, (0, 0, 1), (0, 1))
H2, H4 = PolyIdeal(7, (5, 1)), PolyIdeal(7, (3, 1))


def test_detect_examples():
    band = detect_band_data(U7, H2)
    assert band.cycle == (H2, H4) and band.k == 2
    assert band.sigma_bar_order() == 1
    ident = FinitePoly(7, (0, 1), (0, 1))
    m = PolyIdeal(7, (1, 0, 1))
    b = detect_band_data(ident, m)
    assert b.cycle == (m,) and b.sigma_bar_order() == 1
    u2 = FinitePoly(2, (0, 0, 1), (0, 1))
    frob = detect_band_data(u2, PolyIdeal(2, (1, 1, 1)))
    assert frob.k == 1 and frob.sigma_bar_order() == 2
    K = frob.field
    theta = (0, 1)
    assert frob.sbar(theta) == K.mul(theta, theta)
    with pytest.raises(NotOnCycle):
        detect_band_data(U7, PolyIdeal(7, (4, 1)))


def test_build_example_wrap_entry():
    band = detect_band_data(U7, H2)
    bm = build_band(band, pmodule(band, [[3]]), "M")
    fm = to_matrices(bm)
    assert fm.dim == 2
    assert check_relations(fm)["ok"]
    # Y takes position 0 to position 1 (= k - 1) through alpha^{-1} = 5
    assert band_act(bm, "Y", 0, [(1,)]) == (1, [(5,)])
    assert fm.Y[1][0] == 5
    # X = sigma(t) Y^{-1}: from position 1 back to 0 through the wrap
    assert band_act(bm, "X", 1, [(1,)])[0] == 0


def test_build_rejects_bad_data():
    band = detect_band_data(U7, H2)
    with pytest.raises(ValueError):
        build_band(band, pmodule(band, [[0]]), "M")
    with pytest.raises(ValueError):
        build_band(band, pmodule(band, [[1]]), "Q")
    other = detect_band_data(FinitePoly(2, (0, 0, 1), (0, 1)), PolyIdeal(2, (1, 1, 1)))
    with pytest.raises(FieldMismatch):
        build_band(band, pmodule(other, [[(1,)]]), "M")


def test_pmodule_simplicity_examples():
    band = detect_band_data(U7, H2)
    assert pmodule_is_simple(band, pmodule(band, [[4]]))
    assert not pmodule_is_simple(band, pmodule(band, [[1, 0], [0, 2]]))
    assert pmodule_is_simple(band, pmodule(band, [[0, 6], [1, 0]]))  # x^2 + 1
    bm = build_band(band, pmodule(band, [[1, 0], [0, 1]]), "N")
    assert check_relations(to_matrices(bm))["ok"]
    assert not brute_simple(to_matrices(bm))
    q = detect_band_data(Affine(2, -1), RationalPoint(Fraction(1)))
    assert pmodule_is_simple(q, pmodule(q, [[Fraction(3)]]))
    with pytest.raises(FieldTooLarge):
        pmodule_is_simple(q, pmodule(q, [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(2)]]))


def test_band_iso_examples():
    u = FinitePoly(7, (0, 0, 1), (-2, 1))
    band = detect_band_data(u, H2)
    a = build_band(band, pmodule(band, [[3]]), "M")
    assert band_iso(a, a)
    assert band_iso(a, build_band(band, pmodule(band, [[3]]), "M"))
    assert not band_iso(a, build_band(band, pmodule(band, [[4]]), "M"))
    for c in range(1, 7):
        assert not band_iso(a, build_band(band, pmodule(band, [[c]]), "N"))
    # rotating the base point of the cycle gives the same modules
    rot = detect_band_data(u, H4)
    assert band_iso(a, build_band(rot, pmodule(rot, [[3]]), "M"))


def test_power_map_band_relations_symbolic():
    u = PowerMap(2)
    band = detect_band_data(u, Angle(Fraction(1, 3)))
    assert band.k == 2
    for v in ("M", "N"):
        fm = to_matrices(build_band(band, pmodule(band, [[Fraction(5, 2)]]), v))
        assert check_relations(fm)["ok"]


_BAND_UNIVERSES = [FinitePoly(p, f, t) for p in (2, 3, 5)
                   for f in ((0, 0, 1), (1, 0, 1), (0, 0, 0, 1), (1, 2))
                   for t in ((0, 1), (1, 1))]


def _small_bands(u):
    return [b for b in cycles(u) if b.k * b.degree <= 4]


@settings(max_examples=25)
@given(st.sampled_from(_BAND_UNIVERSES), st.data())
def test_band_properties(u, data):
    bands = _small_bands(u)
    if not bands:
        return
    band = data.draw(st.sampled_from(bands))
    K = band.field
    if band.degree == 1 and band.k <= 2:
        alpha = data.draw(st.sampled_from([A for A in gl2_representatives(K) if LA.is_invertible(K, A)]))
    else:
        alpha = [[data.draw(st.sampled_from(scalar_classes(band)))]]
    L = pmodule(band, alpha)
    for v in ("M", "N"):
        bm = build_band(band, L, v)
        fm = to_matrices(bm)
        assert check_relations(fm)["ok"]
        # Y is bijective on M, X on N
        assert LA.is_invertible(fm.field, fm.Y if v == "M" else fm.X)
        assert brute_simple(fm) == pmodule_is_simple(band, L)
        dec = generalized_weight_decomposition(fm)
        assert sum(d["generalized_dim"] for d in dec.values()) == fm.dim


def test_band_iso_against_intertwiners_two_dimensional():
    u = FinitePoly(3, (0, 0, 1), (1, 1))
    for band in _small_bands(u):
        if band.degree != 1 or band.k > 1:
            continue
        K = band.field
        mats = [A for A in gl2_representatives(K) if LA.is_invertible(K, A)]
        mods = [build_band(band, pmodule(band, A), v) for A in mats for v in ("M", "N")]
        fms = [to_matrices(m) for m in mods]
        for i, a in enumerate(mods):
            for j, b in enumerate(mods):
                assert band_iso(a, b) == brute_isomorphic(fms[i], fms[j]), (a.describe(), b.describe())


def test_frobenius_twisted_classes():
    u = FinitePoly(2, (0, 0, 1), (0, 1))
    band = detect_band_data(u, PolyIdeal(2, (1, 1, 1)))
    reps = scalar_classes(band)
    # c ~ c s / s^2 = c / s: every unit is equivalent when sigma_bar is Frobenius on GF(4)
    assert len(reps) == 1
    K = band.field
    units = [c for c in K.elements() if not K.is_zero(c)]
    ms = [build_band(band, pmodule(band, [[c]]), "M") for c in units]
    for a in ms:
        for b in ms:
            assert band_iso(a, b)
            assert brute_isomorphic(to_matrices(a), to_matrices(b))
