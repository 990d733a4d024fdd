"""Tests for the truncated double: bracket and invariant form, polynomial
embedding, dual pair bases, twist spaces, quotient images, and Lagrangian
constructions — all in exact rational arithmetic."""

import random
from fractions import Fraction as F

import pytest

from yangbaxter.doubles import (
    DoubleElement,
    DoubleSubspace,
    DualSumMismatch,
    Window,
    WindowOverflow,
    ambient_dim,
    ambient_radical_dim,
    check_transversality,
    diagonal_twist_space,
    double_bracket,
    dual_basis_check,
    dual_sum_projection,
    embed_polynomial,
    embedded_polynomials,
    evaluation_dual_space,
    evaluation_embed,
    evaluation_form,
    invariant_form,
    is_isotropic,
    is_lagrangian_truncated,
    is_subalgebra,
    lagrangian_from_pair,
    line_shift,
    loop_part,
    orth_complement_truncated,
    quotient_image_of_polynomials,
    residue_form,
    standard_complement,
)
from yangbaxter.lie import GPoly, casimir, make_sl


def _rand_gpoly(t, rng, lo, hi):
    terms = {}
    for d in range(lo, hi + 1):
        if rng.random() < 0.5:
            x = t.element({i: F(rng.randint(-2, 2)) for i in range(t.dim)})
            if not x.is_zero():
                terms[d] = x
    return GPoly(t, terms)


def _rand_double(t, rng, window):
    return DoubleElement.of(
        t,
        loop=_rand_gpoly(t, rng, window.lo // 2, window.hi // 2),
        a0=t.element({i: F(rng.randint(-2, 2)) for i in range(t.dim)}),
        a1=t.element({i: F(rng.randint(-2, 2)) for i in range(t.dim)}),
    )


def test_window_basics():
    w = Window.default(4)
    assert w == Window(-8, 4)
    assert 0 in w and 4 in w and -8 in w
    assert 5 not in w and -9 not in w
    assert list(Window(-1, 1).exponents()) == [-1, 0, 1]
    with pytest.raises(AssertionError):
        Window(1, 2)
    with pytest.raises(AssertionError):
        Window(-2, -1)


def test_coords_round_trip():
    t = make_sl(2)
    w = Window(-4, 2)
    rng = random.Random(23)
    for _ in range(5):
        el = _rand_double(t, rng, w)
        back = DoubleElement.from_coords(t, el.coords(w))
        assert back == el
    deep = DoubleElement.of(t, loop=GPoly.monomial(t.basis_element("e"), -9))
    with pytest.raises(WindowOverflow):
        deep.coords(w)


def test_embed_polynomial_and_errors():
    t = make_sl(2)
    w = Window(-4, 2)
    e = t.basis_element("e")
    p = GPoly(t, {0: e, 1: e.scale(2)})
    el = embed_polynomial(p, w)
    assert el.loop == p and el.a0 == e and el.a1 == e.scale(2)
    with pytest.raises(ValueError):
        embed_polynomial(GPoly.monomial(e, -1), w)
    with pytest.raises(WindowOverflow) as exc:
        embed_polynomial(GPoly.monomial(e, 3), w)
    assert "window hi" in str(exc.value)


def test_double_bracket_is_componentwise_with_nilpotent_jet():
    t = make_sl(2)
    e = t.basis_element("e")
    f = t.basis_element("f")
    # eps^2 = 0: two pure-eps elements commute.
    x = DoubleElement.of(t, a1=e)
    y = DoubleElement.of(t, a1=f)
    assert double_bracket(x, y).is_zero()
    # [a0, b1*eps] lands in the eps slot.
    z = double_bracket(DoubleElement.of(t, a0=e), y)
    assert z.loop.is_zero() and z.a0.is_zero()
    assert z.a1 == t.basis_element("h")


def test_double_bracket_window_guard():
    t = make_sl(2)
    w = Window(-4, 4)
    x = embed_polynomial(GPoly.monomial(t.basis_element("e"), 2), w)
    y = embed_polynomial(GPoly.monomial(t.basis_element("f"), 3), w)
    with pytest.raises(WindowOverflow) as exc:
        double_bracket(x, y, w)
    assert "needs window" in str(exc.value)
    assert double_bracket(x, y).loop == GPoly.monomial(t.basis_element("h"), 5)


def test_embedding_is_a_homomorphism_seeded():
    t = make_sl(2)
    w = Window.default(4)
    rng = random.Random(31)
    for _ in range(6):
        p = _rand_gpoly(t, rng, 0, 2)
        q = _rand_gpoly(t, rng, 0, 2)
        from yangbaxter.lie import bracket_poly

        lhs = double_bracket(embed_polynomial(p, w), embed_polynomial(q, w))
        rhs = embed_polynomial(bracket_poly(p, q), w)
        assert lhs == rhs


def test_invariant_form_values():
    t = make_sl(2)
    e = t.basis_element("e")
    f = t.basis_element("f")
    # Loop pairing picks complementary degrees d and 1-d.
    x = DoubleElement.of(t, loop=GPoly.monomial(e, 2))
    y = DoubleElement.of(t, loop=GPoly.monomial(f, -1))
    assert invariant_form(x, y) == F(4)
    assert invariant_form(y, x) == F(4)
    assert invariant_form(x, DoubleElement.of(t, loop=GPoly.monomial(f, 0))) == 0
    # Jet pairing is the crossed Killing pairing, negated.
    assert invariant_form(
        DoubleElement.of(t, a0=e), DoubleElement.of(t, a1=f)
    ) == F(-4)
    assert invariant_form(
        DoubleElement.of(t, a1=f), DoubleElement.of(t, a0=e)
    ) == F(-4)
    assert invariant_form(
        DoubleElement.of(t, a0=e), DoubleElement.of(t, a0=f)
    ) == 0


def test_invariant_form_is_ad_invariant_seeded():
    t = make_sl(2)
    w = Window(-4, 2)
    rng = random.Random(41)
    for _ in range(6):
        x, y, z = (_rand_double(t, rng, w) for _ in range(3))
        lhs = invariant_form(double_bracket(x, y), z)
        rhs = invariant_form(y, double_bracket(x, z))
        assert lhs + rhs == 0


def test_embedded_polynomials_isotropic():
    for n in (2, 3):
        t = make_sl(n)
        w = Window(-4, 2)
        ip = embedded_polynomials(t, w)
        assert ip.dim == t.dim * 3
        assert is_isotropic(ip)
        assert is_subalgebra(ip)


def test_ambient_radical_dimension():
    t = make_sl(2)
    # Loop degrees -2, -3, -4 have pairing partners outside [-4, 2].
    assert ambient_radical_dim(t, Window(-4, 2)) == 9
    assert ambient_dim(t, Window(-4, 2)) == 3 * 7 + 6


def test_transversality_of_standard_complement():
    t = make_sl(2)
    w = Window(-4, 2)
    rep = check_transversality(standard_complement(t, w), w)
    assert rep["trivial_intersection"]
    assert rep["spans_with_polynomials"]
    assert rep["contains_tail"]
    assert rep["window"] == (-4, 2)
    # The polynomial part itself fails the trivial-intersection condition.
    rep_bad = check_transversality(embedded_polynomials(t, w), w)
    assert not rep_bad["trivial_intersection"]


def test_dual_pair_bases():
    assert dual_basis_check(make_sl(2), 4)
    assert dual_basis_check(make_sl(3), 2)


def test_dual_sum_projection_matches_series():
    t = make_sl(2)
    result = dual_sum_projection(t, 3)
    e, f = t.index["e"], t.index["f"]
    # The (e, f) slot truncates to u*1 + u^2*v^-1 + u^3*v^-2 + u^4*v^-3.
    lp = result[(e, f)]
    for k in range(0, -4, -1):
        assert not lp.coeff(k).is_zero(), k
    with pytest.raises(DualSumMismatch) as exc:
        dual_sum_projection(t, 3, omega=casimir(t, 2))
    assert "series expansion" in str(exc.value)


def test_line_shift_and_twist_space_dims():
    t2 = make_sl(2)
    assert [line_shift(t2, a, 1) for a in range(t2.dim)] == [1, -1, 0]
    assert [line_shift(t2, a, 0) for a in range(t2.dim)] == [0, 0, 0]
    w = Window(-4, 2)
    assert diagonal_twist_space(t2, 0, w).dim == 21
    assert diagonal_twist_space(t2, 1, w).dim == 21
    t3 = make_sl(3)
    assert diagonal_twist_space(t3, 2, Window.default(4)).dim == 88
    with pytest.raises(ValueError):
        diagonal_twist_space(t2, 2, w)


def test_twist_spaces_are_subalgebras():
    t = make_sl(2)
    w = Window(-4, 2)
    for k in (0, 1):
        assert is_subalgebra(diagonal_twist_space(t, k, w))


def test_twist_space_complement_is_its_loop_part():
    for n, ks in ((2, (0, 1)), (3, (0, 1, 2))):
        t = make_sl(n)
        w = Window(-4, 2)
        for k in ks:
            wk = diagonal_twist_space(t, k, w)
            comp = orth_complement_truncated(wk, w)
            assert comp.equals(loop_part(wk)), (n, k)
            assert wk.dim - comp.dim == 2 * t.dim, (n, k)


def test_quotient_image_of_polynomials():
    t = make_sl(2)
    image = quotient_image_of_polynomials(t, 1, Window(-4, 2))
    assert [str(el) for el in image] == [
        "(E(1,2))_0",
        "(H(1))_0",
        "(E(1,2))*eps",
    ]
    with pytest.raises(ValueError):
        quotient_image_of_polynomials(t, 0, Window(-4, 2))
    # sl(3), both parabolics: dim = dim P_k + dim complement = 6 + 2.
    t3 = make_sl(3)
    for k in (1, 2):
        image = quotient_image_of_polynomials(t3, k, Window(-4, 2))
        assert len(image) == 8


def test_lagrangian_from_pair():
    t = make_sl(2)
    w = Window(-4, 2)
    e = t.basis_element("e")
    f = t.basis_element("f")
    h = t.basis_element("h")

    def form_eh(i, j):
        return {(0, 1): F(1), (1, 0): F(-1)}.get((i, j), F(0))

    lag = lagrangian_from_pair(t, 0, [e, h], form_eh, w)
    assert lag.dim == 18
    assert is_lagrangian_truncated(lag, w)
    assert is_subalgebra(lag)

    def form_cob(i, j):
        basis = [e, f, h]
        return f.killing(basis[i].bracket(basis[j]))

    lag2 = lagrangian_from_pair(t, 1, [e, f, h], form_cob, w)
    assert lag2.dim == 18
    assert is_lagrangian_truncated(lag2, w)
    assert is_subalgebra(lag2)


def test_lagrangian_fails_on_nonisotropic_space():
    t = make_sl(2)
    w = Window(-2, 1)
    els = [
        DoubleElement.of(t, loop=GPoly.monomial(t.basis_element("e"), 1)),
        DoubleElement.of(t, loop=GPoly.monomial(t.basis_element("f"), 0)),
    ]
    sub = DoubleSubspace(t, w, els)
    assert not is_isotropic(sub)
    assert not is_lagrangian_truncated(sub, w)


def test_residue_and_evaluation_models():
    t = make_sl(2)
    rng = random.Random(53)
    # Polynomial loops are residue-isotropic (no u^-1 can appear).
    for _ in range(5):
        p = _rand_gpoly(t, rng, 0, 3)
        q = _rand_gpoly(t, rng, 0, 3)
        assert residue_form(p, q) == 0
    # Evaluation model: i(p) = (p, p(0)) is isotropic for the split pairing.
    for _ in range(5):
        p = _rand_gpoly(t, rng, 0, 3)
        q = _rand_gpoly(t, rng, 0, 3)
        assert evaluation_form(evaluation_embed(p), evaluation_embed(q)) == 0
    # The dual-side model is itself isotropic.
    els = evaluation_dual_space(t, Window(-2, 1))
    for x in els:
        for y in els:
            assert evaluation_form(x, y) == 0
