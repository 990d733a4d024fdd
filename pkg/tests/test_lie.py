"""Tests for the finite-dimensional Lie algebra layer: sl(n) structure
constants, Killing form, Casimir calibration, and distinguished subalgebras."""

import random
from fractions import Fraction as F

import pytest

from yangbaxter.lie import (
    CalibrationError,
    GPoly,
    Subspace,
    borel_minus,
    borel_plus,
    bracket_poly,
    calibrate_casimir,
    cartan,
    casimir,
    dj_rmatrix,
    make_sl,
    orthogonal_complement_g,
    parabolic,
    span,
)


def test_sl2_structure_constants():
    t = make_sl(2)
    e = t.basis_element("e")
    f = t.basis_element("f")
    h = t.basis_element("h")
    assert h.bracket(e) == e.scale(2)
    assert h.bracket(f) == f.scale(-2)
    assert e.bracket(f) == h
    assert e.bracket(e).is_zero()


def test_jacobi_identity():
    assert make_sl(2).check_jacobi()
    assert make_sl(3).check_jacobi()


def test_killing_form_sl2():
    t = make_sl(2)
    e = t.basis_element("e")
    f = t.basis_element("f")
    h = t.basis_element("h")
    assert e.killing(f) == F(4)
    assert f.killing(e) == F(4)
    assert h.killing(h) == F(8)
    assert e.killing(e) == 0
    assert e.killing(h) == 0


def test_killing_is_trace_multiple():
    # K(x, y) = 2n * tr(xy) in the defining representation of sl(n).
    for n in (2, 3):
        t = make_sl(n)
        rng = random.Random(n)
        for _ in range(5):
            x = t.element({i: F(rng.randint(-3, 3)) for i in range(t.dim)})
            y = t.element({i: F(rng.randint(-3, 3)) for i in range(t.dim)})
            mx, my = x.to_matrix(), y.to_matrix()
            tr = sum(
                mx[i][j] * my[j][i] for i in range(n) for j in range(n)
            )
            assert x.killing(y) == 2 * n * tr


def test_killing_invariance_seeded():
    # K([x, y], z) == K(x, [y, z]) exactly.
    t = make_sl(3)
    rng = random.Random(7)
    for _ in range(10):
        x, y, z = (
            t.element({i: F(rng.randint(-2, 2)) for i in range(t.dim)})
            for _ in range(3)
        )
        assert x.bracket(y).killing(z) == x.killing(y.bracket(z))


def test_coords_of_matrix_round_trip():
    t = make_sl(3)
    for x in t.basis():
        assert tuple(t.coords_of_matrix(x.to_matrix())) == x.coords
    mixed = t.element({"E(1,3)": F(2), "E(3,1)": F(-1, 2), "H(2)": 3})
    assert tuple(t.coords_of_matrix(mixed.to_matrix())) == mixed.coords
    with pytest.raises(AssertionError):
        t.coords_of_matrix([[F(1), F(0), F(0)]] * 3)  # not traceless


def test_bracket_bilinearity_seeded():
    t = make_sl(2)
    rng = random.Random(3)
    for _ in range(10):
        x, y, z = (
            t.element({i: F(rng.randint(-4, 4)) for i in range(t.dim)})
            for _ in range(3)
        )
        assert x.bracket(y) == y.bracket(x).scale(-1)
        assert (x + y).bracket(z) == x.bracket(z) + y.bracket(z)
        c = F(rng.randint(1, 5), rng.randint(1, 5))
        assert x.scale(c).bracket(y) == x.bracket(y).scale(c)


def test_calibrated_casimir_sl2():
    om = calibrate_casimir(make_sl(2))
    assert om.scale == F(4)
    t = make_sl(2)
    e, f, h = t.index["e"], t.index["f"], t.index["h"]
    entries = om.tensor().entries
    assert entries[(e, f)] * 1 == 1
    assert entries[(f, e)] * 1 == 1
    assert entries[(h, h)] * 2 == 1
    assert len(entries) == 3


def test_calibration_needs_sl2():
    with pytest.raises(ValueError):
        calibrate_casimir(make_sl(3))


def test_casimir_is_ad_invariant():
    # [x (x) 1 + 1 (x) x, Omega] = 0 for every basis x, any scale.
    from yangbaxter.tensors import ad2_action

    for n in (2, 3):
        t = make_sl(n)
        om = casimir(t, 2 * n).tensor()
        for x in t.basis():
            assert ad2_action(GPoly.monomial(x), om).is_zero()


def test_dj_constant_rmatrix():
    t = make_sl(2)
    om = calibrate_casimir(t)
    r, meta = dj_rmatrix(t, om, with_convention=True)
    assert meta == {"sign": -1, "orientation": "ef"}
    e, f, h = t.index["e"], t.index["f"], t.index["h"]
    assert r.entries[(e, f)] * 1 == -1
    assert r.entries[(h, h)] * 4 == -1
    assert len(r.entries) == 2
    from yangbaxter.tensors import swap

    assert (r + swap(r) + om.tensor()).is_zero()


def test_cartan_and_borel():
    t = make_sl(3)
    assert cartan(t).dim == 2
    bp = borel_plus(t)
    bm = borel_minus(t)
    assert bp.dim == 5 and bm.dim == 5
    assert bp.is_subalgebra() and bm.is_subalgebra()
    assert bp.contains(t.basis_element("E(1,3)"))
    assert not bp.contains(t.basis_element("E(3,1)"))


def test_parabolic_subalgebras():
    t = make_sl(3)
    p1 = parabolic(t, 1)
    assert p1.dim == 6
    assert p1.contains(t.basis_element("E(3,2)"))
    assert not p1.contains(t.basis_element("E(2,1)"))
    assert not p1.contains(t.basis_element("E(3,1)"))
    p2 = parabolic(t, 2)
    assert p2.dim == 6
    assert p2.contains(t.basis_element("E(2,1)"))
    assert not p2.contains(t.basis_element("E(3,1)"))
    with pytest.raises(ValueError):
        parabolic(t, 3)
    with pytest.raises(ValueError):
        parabolic(t, 0)


def test_orthogonal_complement_of_parabolic():
    # The Killing-orthogonal complement of P_k is its nilradical.
    t = make_sl(3)
    comp = orthogonal_complement_g(parabolic(t, 1), t)
    expected = span(t, [t.basis_element("E(1,2)"), t.basis_element("E(1,3)")])
    assert comp.dim == 2
    assert comp.equals(expected)
    comp2 = orthogonal_complement_g(parabolic(t, 2), t)
    expected2 = span(t, [t.basis_element("E(1,3)"), t.basis_element("E(2,3)")])
    assert comp2.equals(expected2)


def test_subspace_validation():
    t = make_sl(2)
    e = t.basis_element("e")
    with pytest.raises(ValueError):
        Subspace(t, [e, e.scale(2)])  # dependent spanning set
    s = span(t, [e, e.scale(2), t.basis_element("h")])
    assert s.dim == 2


def test_make_sl_validation_and_sharing():
    with pytest.raises(ValueError):
        make_sl(1)
    with pytest.raises(ValueError):
        make_sl("2")
    assert make_sl(2) is make_sl(2)
    assert make_sl(3) is make_sl(3)


def test_gpoly_shift_and_bracket():
    t = make_sl(2)
    e = t.basis_element("e")
    f = t.basis_element("f")
    h = t.basis_element("h")
    p = GPoly.monomial(e, 1)
    q = GPoly.monomial(f, 2)
    assert bracket_poly(p, q) == GPoly.monomial(h, 3)
    assert bracket_poly(p, p).is_zero()
    assert p.shift(3) == GPoly.monomial(e, 4)
    combo = p + GPoly.monomial(h, 1)
    assert combo.coeff(1) == e + h
    assert combo.degrees() == [1]
    assert (combo - combo).is_zero()


def test_gpoly_bracket_collects_degrees():
    t = make_sl(2)
    e = t.basis_element("e")
    f = t.basis_element("f")
    h = t.basis_element("h")
    p = GPoly(t, {0: e, 1: f})
    q = GPoly(t, {1: h})
    out = bracket_poly(p, q)
    assert out.coeff(1) == e.scale(-2)
    assert out.coeff(2) == f.scale(2)
