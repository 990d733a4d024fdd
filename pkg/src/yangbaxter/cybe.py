"""Classical Yang-Baxter residuals, quasi-rationality, co-brackets.

The residual of a two-leg tensor r is

    cyb(r) = [r12, r13] + [r12, r23] + [r13, r23]

as a three-leg tensor in (u1, u2, u3); r solves the classical Yang-Baxter
equation iff the residual is the zero tensor.  The co-bracket attached to a
kernel Gamma is delta(p) = [Gamma, p(u)(x)1 + 1(x)p(v)]; for the built-in
kernels the pole of Gamma on the diagonal must cancel, making delta(p) a
polynomial tensor.

The built-in catalog over the calibrated Casimir:

    gamma1 = 0
    gamma2 = Omega/(u-v)
    gamma3 = v*Omega/(v-u) + r_const        (constant part from dj_rmatrix)
    gamma4 = u*v*Omega/(v-u)
    q0     = gamma4
    q1     = gamma4 + e(x)h - h(x)e                      (sl(2) only)
    q2     = gamma4 + (1/2)h(x)e - (1/2)e(x)h
                    - u*(e(x)f) + v*(f(x)e)              (sl(2) only)
    rational_eh = Omega/(u-v) + u*(e(x)h) - v*(h(x)e)    (sl(2) only)

rational_eh is a Yang-Baxter solution but NOT quasi-rational: its difference
from the leading term u*v*Omega/(v-u) has a pole.
"""

from __future__ import annotations

from .lie import GPoly, bracket_poly
from .ratfun import RatFun
from .tensors import (
    Tensor2,
    Tensor3,
    ad2_action,
    is_polynomial,
    is_skew,
    leg_bracket,
)


def cyb(r):
    """The Yang-Baxter residual [r12,r13] + [r12,r23] + [r13,r23]."""
    assert isinstance(r, Tensor2), r
    total = leg_bracket(r, r, "12^13")
    total = total + leg_bracket(r, r, "12^23")
    total = total + leg_bracket(r, r, "13^23")
    return total


def leading_term(omega):
    """The quasi-rational leading term u*v*Omega/(v-u) as a Tensor2."""
    u = RatFun.var("u")
    v = RatFun.var("v")
    return omega.tensor().scale(u * v / (v - u))


def is_quasi_rational(r, omega):
    """True iff r solves Yang-Baxter and r - u*v*Omega/(v-u) is a skew polynomial."""
    diff = r - leading_term(omega)
    if not is_polynomial(diff):
        return False
    if not is_skew(diff):
        return False
    return cyb(r).is_zero()


def catalog(table, omega):
    """The built-in kernels/solutions over the given Casimir; dict by name.

    Entries gamma1..gamma4 and q0 exist for every sl(n); q1, q2 and
    rational_eh use the e/f/h aliases and exist only for sl(2).
    """
    from .lie import dj_rmatrix

    u = RatFun.var("u")
    v = RatFun.var("v")
    om = omega.tensor()
    out = {
        "gamma1": Tensor2.zero(table),
        "gamma2": om.scale((u - v) ** -1),
        "gamma3": om.scale(v / (v - u)) + dj_rmatrix(table, omega),
        "gamma4": om.scale(u * v / (v - u)),
    }
    out["q0"] = out["gamma4"]
    if table.n == 2:
        half = RatFun.from_frac(1) / 2
        out["q1"] = out["gamma4"] + Tensor2.make(
            table, {(table.index["e"], table.index["h"]): 1,
                    (table.index["h"], table.index["e"]): -1}
        )
        out["q2"] = out["gamma4"] + Tensor2.make(
            table,
            {
                (table.index["h"], table.index["e"]): half,
                (table.index["e"], table.index["h"]): -half,
                (table.index["e"], table.index["f"]): -u,
                (table.index["f"], table.index["e"]): v,
            },
        )
        out["rational_eh"] = om.scale((u - v) ** -1) + Tensor2.make(
            table, {(table.index["e"], table.index["h"]): u,
                    (table.index["h"], table.index["e"]): -v}
        )
    return out


class PoleCancellationError(ArithmeticError):
    """The co-bracket of p is not polynomial: the diagonal pole survives."""


def cobracket(gamma, p):
    """delta(p) = [Gamma, p(u)(x)1 + 1(x)p(v)], asserted polynomial.

    Raises PoleCancellationError when the pole of Gamma does not cancel,
    which signals that Gamma is not a valid co-bracket kernel for the
    polynomial current algebra.
    """
    assert isinstance(gamma, Tensor2), gamma
    result = ad2_action(p, gamma).scale(-1)
    if not is_polynomial(result):
        bad = [f for f in result.entries.values() if not f.is_poly()]
        raise PoleCancellationError(
            f"pole does not cancel: {len(bad)} non-polynomial coefficients, "
            f"e.g. {bad[0]}"
        )
    return result


def cocycle_check(gamma, p, q):
    """delta([p,q]) = ad2(p, delta(q)) - ad2(q, delta(p)), exactly."""
    lhs = cobracket(gamma, bracket_poly(p, q))
    rhs = ad2_action(p, cobracket(gamma, q)) - ad2_action(q, cobracket(gamma, p))
    return lhs == rhs


def _delta_on_first_leg(gamma, dp):
    """(delta (x) id) applied to a polynomial two-leg tensor dp.

    Decomposes each coefficient over monomials u^k in the first variable,
    applies the co-bracket to the corresponding g-valued monomial on leg 1
    (fresh variables u1, u2), and carries the old leg 2 to slot 3 with u3.
    """
    table = dp.table
    to12 = {"u": "u1", "v": "u2"}
    out = Tensor3.zero(table)
    cache = {}
    for (a, b), f in dp.entries.items():
        assert f.is_poly(), f
        for k, g_k in f.num.as_univariate("u").items():
            key = (a, k)
            inner = cache.get(key)
            if inner is None:
                inner = cobracket(gamma, GPoly.monomial(table.basis_element(a), k))
                cache[key] = inner
            weight = RatFun.from_poly(g_k).rename({"v": "u3"})
            add = {}
            for (c, d), h in inner.entries.items():
                add[(c, d, b)] = h.rename(to12) * weight
            out = out + Tensor3.make(table, add)
    return out


def cojacobi_check(gamma, p):
    """Co-Jacobi for delta at p: the cyclic sum of (delta (x) id) delta(p) is 0."""
    dp = cobracket(gamma, p)
    w = _delta_on_first_leg(gamma, dp)
    w1 = w.rotate()
    w2 = w1.rotate()
    return (w + w1 + w2).is_zero()
