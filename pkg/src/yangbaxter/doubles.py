"""Truncated model of the classical double of the polynomial current algebra.

Elements are pairs (loop, jet): a g-valued Laurent polynomial plus a 1-jet
A0 + A1*eps with eps^2 = 0.  The invariant pairing is

    Q(x, y) = [coefficient of u^1 in K(loop_x, loop_y)]
              - K(A0_x, A1_y) - K(A1_x, A0_y)

and the polynomial current algebra embeds by

    i(sum c_k u^k) = (sum c_k u^k, c_0, c_1),

which is exactly isotropic: the u^1 coefficient of K(p, q) equals
K(p_0, q_1) + K(p_1, q_0).

All subspace computations happen inside a truncation Window [lo, hi] on
loop exponents.  Truncation is an approximation of the full topological
double; every check states its window, and the default windows are chosen
as [-2*hi, hi] so that the pairing (which couples degree t against 1-t)
never silently loses partners for in-window elements.

The alternate doubles used in the tests: the residue model on plain loops
(form = coefficient of u^-1 in K) and the evaluation model loops (+) g
(form = coefficient of u^0 in K(f,g) minus K(a,b), embedding p -> (p, p(0))).
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .lie import GElement, GPoly, Subspace, orthogonal_complement_g, parabolic


class Window:
    """Allowed loop-exponent range [lo, hi], lo <= 0 <= hi."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        assert lo <= 0 <= hi, (lo, hi)
        self.lo = lo
        self.hi = hi

    @staticmethod
    def default(hi=4):
        """[-2*hi, hi]: deep enough that in-window pairings are never cut."""
        return Window(-2 * hi, hi)

    def exponents(self):
        return range(self.lo, self.hi + 1)

    def __contains__(self, t):
        return self.lo <= t <= self.hi

    def __eq__(self, other):
        return (
            isinstance(other, Window) and self.lo == other.lo and self.hi == other.hi
        )

    def __repr__(self):
        return f"Window({self.lo}, {self.hi})"


class WindowOverflow(ValueError):
    """An exponent left the truncation window; the message names the fix."""


class DoubleElement:
    """loop + (A0 + A1*eps): one element of the truncated double."""

    __slots__ = ("table", "loop", "a0", "a1")

    def __init__(self, loop, a0, a1):
        assert isinstance(loop, GPoly), loop
        assert isinstance(a0, GElement) and isinstance(a1, GElement), (a0, a1)
        assert loop.table is a0.table is a1.table
        self.table = loop.table
        self.loop = loop
        self.a0 = a0
        self.a1 = a1

    @staticmethod
    def zero(table):
        return DoubleElement(GPoly(table, {}), table.zero(), table.zero())

    @staticmethod
    def of(table, loop=None, a0=None, a1=None):
        return DoubleElement(
            loop if loop is not None else GPoly(table, {}),
            a0 if a0 is not None else table.zero(),
            a1 if a1 is not None else table.zero(),
        )

    def is_zero(self):
        return self.loop.is_zero() and self.a0.is_zero() and self.a1.is_zero()

    def __eq__(self, other):
        if not isinstance(other, DoubleElement):
            return NotImplemented
        return (
            self.loop == other.loop and self.a0 == other.a0 and self.a1 == other.a1
        )

    def __add__(self, other):
        return DoubleElement(
            self.loop + other.loop, self.a0 + other.a0, self.a1 + other.a1
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return DoubleElement(self.loop.scale(c), self.a0.scale(c), self.a1.scale(c))

    def coords(self, window):
        """Sparse coordinates over the ambient window basis."""
        out = {}
        for d, x in self.loop.terms.items():
            if d not in window:
                raise WindowOverflow(
                    f"loop exponent {d} outside window [{window.lo}, {window.hi}]"
                )
            for i, c in enumerate(x.coords):
                if c:
                    out[("loop", d, i)] = c
        for i, c in enumerate(self.a0.coords):
            if c:
                out[("a0", i)] = c
        for i, c in enumerate(self.a1.coords):
            if c:
                out[("a1", i)] = c
        return out

    @staticmethod
    def from_coords(table, vec):
        loop = {}
        a0 = [Fraction(0)] * table.dim
        a1 = [Fraction(0)] * table.dim
        for key, c in vec.items():
            if key[0] == "loop":
                _, d, i = key
                loop.setdefault(d, [Fraction(0)] * table.dim)[i] = c
            elif key[0] == "a0":
                a0[key[1]] = c
            else:
                a1[key[1]] = c
        gp = GPoly(table, {d: GElement(table, tuple(v)) for d, v in loop.items()})
        return DoubleElement(gp, GElement(table, tuple(a0)), GElement(table, tuple(a1)))

    def __str__(self):
        parts = []
        if not self.loop.is_zero():
            parts.append(str(self.loop))
        if not self.a0.is_zero():
            parts.append(f"({self.a0})_0")
        if not self.a1.is_zero():
            parts.append(f"({self.a1})*eps")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"DoubleElement({self})"


def double_bracket(x, y, window=None):
    """Componentwise bracket; the jet part obeys eps^2 = 0.

    [A0 + A1 eps, B0 + B1 eps] = [A0,B0] + ([A0,B1] + [A1,B0]) eps.
    With a window supplied, a loop overflow raises WindowOverflow naming
    the window that would hold the result.
    """
    assert x.table is y.table, "mismatched algebras"
    from .lie import bracket_poly

    loop = bracket_poly(x.loop, y.loop)
    if window is not None and loop.terms:
        degs = loop.degrees()
        if degs[0] < window.lo or degs[-1] > window.hi:
            raise WindowOverflow(
                f"bracket needs window [{min(window.lo, degs[0])}, "
                f"{max(window.hi, degs[-1])}], have [{window.lo}, {window.hi}]"
            )
    a0 = x.a0.bracket(y.a0)
    a1 = x.a0.bracket(y.a1) + x.a1.bracket(y.a0)
    return DoubleElement(loop, a0, a1)


def invariant_form(x, y):
    """Q(x, y): u^1-coefficient of K(loops) minus the crossed jet pairings."""
    assert x.table is y.table, "mismatched algebras"
    table = x.table
    total = Fraction(0)
    for d1, xe in x.loop.terms.items():
        ye = y.loop.terms.get(1 - d1)
        if ye is not None:
            total += table.killing_pair(xe.coords, ye.coords)
    total -= table.killing_pair(x.a0.coords, y.a1.coords)
    total -= table.killing_pair(x.a1.coords, y.a0.coords)
    return total


def embed_polynomial(p, window):
    """i(p) = (p, p_0, p_1) for a polynomial loop fitting the window."""
    assert isinstance(p, GPoly), p
    if p.terms:
        degs = p.degrees()
        if degs[0] < 0:
            raise ValueError(f"embedding needs a polynomial, found degree {degs[0]}")
        if degs[-1] > window.hi:
            raise WindowOverflow(
                f"degree {degs[-1]} needs window hi >= {degs[-1]}, have {window.hi}"
            )
    return DoubleElement(p, p.coeff(0), p.coeff(1))


def ambient_coords(table, window):
    keys = []
    for d in window.exponents():
        for i in range(table.dim):
            keys.append(("loop", d, i))
    for i in range(table.dim):
        keys.append(("a0", i))
    for i in range(table.dim):
        keys.append(("a1", i))
    return keys


def ambient_dim(table, window):
    return table.dim * (window.hi - window.lo + 1) + 2 * table.dim


class DoubleSubspace:
    """Finite-rank subspace of the truncated double, hand-checked independent."""

    def __init__(self, table, window, elements):
        self.table = table
        self.window = window
        self.elements = list(elements)
        self._ech = linalg.Echelon()
        for el in self.elements:
            assert el.table is table
            ok = self._ech.add(el.coords(window))
            assert ok, f"dependent spanning element {el}"

    @property
    def dim(self):
        return len(self.elements)

    def contains(self, el):
        return self._ech.contains(el.coords(self.window))

    def span_rows(self):
        return [el.coords(self.window) for el in self.elements]

    def equals(self, other):
        return self._ech.rows == other._ech.rows

    def __repr__(self):
        return (
            f"DoubleSubspace(dim={self.dim}, window=[{self.window.lo}, "
            f"{self.window.hi}], sl({self.table.n}))"
        )


def embedded_polynomials(table, window):
    """i(g[u]) at the window: the embeddings of x * u^m, 0 <= m <= hi."""
    els = []
    for m in range(window.hi + 1):
        for x in table.basis():
            els.append(embed_polynomial(GPoly.monomial(x, m), window))
    return DoubleSubspace(table, window, els)


def standard_complement(table, window):
    """The model of the dual side: loops in non-positive degrees plus g*eps."""
    els = []
    for d in range(window.lo, 1):
        for x in table.basis():
            els.append(DoubleElement.of(table, loop=GPoly.monomial(x, d)))
    for x in table.basis():
        els.append(DoubleElement.of(table, a1=x))
    return DoubleSubspace(table, window, els)


def _pairing_row(el, window):
    """Sparse row c -> Q(unit_c, el) over the ambient coordinates."""
    table = el.table
    row = {}
    for d, y in el.loop.terms.items():
        t = 1 - d
        if t in window:
            for i in range(table.dim):
                c = table.killing_pair(table.basis_element(i).coords, y.coords)
                if c:
                    row[("loop", t, i)] = row.get(("loop", t, i), Fraction(0)) + c
    for i in range(table.dim):
        c = table.killing_pair(table.basis_element(i).coords, el.a0.coords)
        if c:
            row[("a1", i)] = row.get(("a1", i), Fraction(0)) - c
        c = table.killing_pair(table.basis_element(i).coords, el.a1.coords)
        if c:
            row[("a0", i)] = row.get(("a0", i), Fraction(0)) - c
    return row


def orth_complement_truncated(sub, window):
    """Exact Q-orthogonal complement of a subspace within the window ambient."""
    table = sub.table
    rows = [_pairing_row(el, window) for el in sub.elements]
    vecs = linalg.nullspace(rows, ambient_coords(table, window))
    els = [DoubleElement.from_coords(table, v) for v in vecs]
    return DoubleSubspace(table, window, els)


def ambient_radical_dim(table, window):
    """Rank defect of Q on the whole window ambient (truncation artifact)."""
    # Loop degrees t with no partner 1-t inside the window are radical;
    # the jet block is nondegenerate.  Computed exactly from the Gram kernel.
    unit_elements = []
    for d in window.exponents():
        for x in table.basis():
            unit_elements.append(DoubleElement.of(table, loop=GPoly.monomial(x, d)))
    for x in table.basis():
        unit_elements.append(DoubleElement.of(table, a0=x))
    for x in table.basis():
        unit_elements.append(DoubleElement.of(table, a1=x))
    rows = [_pairing_row(el, window) for el in unit_elements]
    return len(linalg.nullspace(rows, ambient_coords(table, window)))


def is_isotropic(sub):
    els = sub.elements
    for i, x in enumerate(els):
        for y in els[i:]:
            if invariant_form(x, y) != 0:
                return False
    return True


def is_lagrangian_truncated(sub, window):
    """Isotropy plus dimensional maximality at the truncation window.

    Maximality accounts for the radical of Q on the truncated ambient
    (deep loop degrees whose pairing partners fall outside the window):
    a maximal isotropic subspace has dimension (ambient + radical) / 2.
    This is the window-level approximation of the untruncated condition.
    """
    if not is_isotropic(sub):
        return False
    total = ambient_dim(sub.table, window) + ambient_radical_dim(sub.table, window)
    assert total % 2 == 0, total
    return sub.dim == total // 2


def is_subalgebra(sub, window=None):
    """Closure under double_bracket, checked for in-window results.

    Pairs whose bracket leaves the window are skipped: truncation cannot
    decide them.  With the default deep windows every decidable pair of
    the built-in spaces is checked.
    """
    window = window or sub.window
    for x in sub.elements:
        for y in sub.elements:
            z = double_bracket(x, y)
            if z.loop.terms:
                degs = z.loop.degrees()
                if degs[0] < window.lo or degs[-1] > window.hi:
                    continue
            if not sub.contains(z):
                return False
    return True


def check_transversality(w, window, tail_depth=1):
    """The three complement conditions for a candidate W.

    1. W intersects the embedded polynomial part trivially.
    2. W + i(g[u]) spans the whole window ambient.
    3. W contains the deep tail x * u^t, lo <= t <= -tail_depth.
    Returns a report dict; window and tail depth are echoed for the caller.
    """
    table = w.table
    ip = embedded_polynomials(table, window)
    inter = linalg.intersect_spans(w.span_rows(), ip.span_rows())
    ech = linalg.Echelon()
    for row in w.span_rows():
        ech.add(row)
    for row in ip.span_rows():
        ech.add(row)
    spans = ech.rank == ambient_dim(table, window)
    tail = True
    for t in range(window.lo, -tail_depth + 1):
        for x in table.basis():
            el = DoubleElement.of(table, loop=GPoly.monomial(x, t))
            if not w.contains(el):
                tail = False
                break
        if not tail:
            break
    return {
        "trivial_intersection": len(inter) == 0,
        "spans_with_polynomials": spans,
        "contains_tail": tail,
        "window": (window.lo, window.hi),
        "tail_depth": tail_depth,
    }


def _dual_pair_bases(table, order):
    """Primal embeddings and their claimed Q-duals, up to loop degree `order`.

    Primal: i(x_i u^k) for 2 <= k <= order, i(x_i u), i(x_i).
    Dual:   x^i u^(1-k),  x^i u^0,  -x^i eps,   with x^i the Killing-dual
    basis (K(x_i, x^j) = delta).  Over the rationals no Killing-orthonormal
    basis of sl(n) exists, so dual pairs replace orthonormal expansions.
    """
    assert order >= 2, order
    window = Window(-(order + 2), order + 1)
    dual_basis = []
    for j in range(table.dim):
        coords = tuple(table.killing_inv[i][j] for i in range(table.dim))
        dual_basis.append(GElement(table, coords))
    primal = []
    dual = []
    for k in range(2, order + 1):
        for i, x in enumerate(table.basis()):
            primal.append(embed_polynomial(GPoly.monomial(x, k), window))
            dual.append(
                DoubleElement.of(table, loop=GPoly.monomial(dual_basis[i], 1 - k))
            )
    for i, x in enumerate(table.basis()):
        primal.append(embed_polynomial(GPoly.monomial(x, 1), window))
        dual.append(DoubleElement.of(table, loop=GPoly.monomial(dual_basis[i], 0)))
    for i, x in enumerate(table.basis()):
        primal.append(embed_polynomial(GPoly.monomial(x, 0), window))
        dual.append(DoubleElement.of(table, a1=dual_basis[i].scale(-1)))
    return primal, dual


def dual_basis_check(table, order):
    """Q(primal_a, dual_b) = delta_ab for the dual pair bases up to `order`."""
    primal, dual = _dual_pair_bases(table, order)
    for a, x in enumerate(primal):
        for b, y in enumerate(dual):
            expect = Fraction(1 if a == b else 0)
            if invariant_form(x, y) != expect:
                return False
    return True


class DualSumMismatch(RuntimeError):
    """The dual-sum projection disagrees with the series expansion."""

    def __init__(self, pair, exponent, got, expected):
        self.pair = pair
        self.exponent = exponent
        super().__init__(
            f"dual-sum term at basis pair {pair}, v-exponent {exponent}: "
            f"got {got}, series expansion gives {expected}"
        )


def dual_sum_projection(table, order, omega=None):
    """Loop-leg projection of the dual-pair sum vs the geometric series.

    sum_i [ x_i u (x) x^i  +  sum_{k>=2} x_i u^k (x) x^i v^(1-k) ]
    truncated to v-exponents >= -order must match, term by term,
    expand_at_infinity(u*v*Omega/(v-u), v, order) with Omega the
    Killing-normalized Casimir (dual-basis scale).  Passing a different
    omega substitutes the reference side; a mismatch raises
    DualSumMismatch carrying the first differing term.
    """
    from .lie import casimir
    from .ratfun import LaurentPoly, Poly, RatFun, expand_at_infinity

    assert order >= 1, order
    if omega is None:
        omega = casimir(table, 1)
    u = RatFun.var("u")
    v = RatFun.var("v")
    dual_coeff = table.killing_inv  # x^i = sum_j K^-1[j][i] x_j
    truncation = {}
    for k in range(1, order + 2):
        # primal x_i u^k pairs with dual x^i v^(1-k); v-exponent 1-k >= -order
        u_pow = RatFun.from_poly(Poly.var("u", k))
        for i in range(table.dim):
            for j in range(table.dim):
                c = dual_coeff[j][i]
                if not c:
                    continue
                coeffs = truncation.setdefault((i, j), {})
                cur = coeffs.get(1 - k)
                add = u_pow * c
                coeffs[1 - k] = add if cur is None else cur + add
    result = {
        pair: LaurentPoly("v", coeffs, floor=-order)
        for pair, coeffs in truncation.items()
    }
    reference = omega.tensor().scale(u * v / (v - u))
    ref_pairs = dict(reference.entries)
    for pair in set(result) | set(ref_pairs):
        got = result.get(pair, LaurentPoly("v", {}, floor=-order))
        f = ref_pairs.get(pair)
        expect = (
            expand_at_infinity(f, "v", order)
            if f is not None
            else LaurentPoly("v", {}, floor=-order)
        )
        if got != expect:
            ks = sorted(set(got.coeffs) | set(expect.coeffs))
            for k in ks:
                if got.coeff(k) != expect.coeff(k):
                    raise DualSumMismatch(pair, k, got.coeff(k), expect.coeff(k))
    return result


def line_shift(table, line_index, k):
    """Degree shift of a basis line under conjugation by diag(1..1, u..u).

    The first k diagonal entries are 1, the rest u; E(i,j) picks up
    u^(s_j - s_i) with s_m = 0 for m <= k, else 1; Cartan lines are fixed.
    """
    if line_index >= len(table.root_pairs):
        return 0
    i, j = table.root_pairs[line_index]
    s_i = 0 if i <= k else 1
    s_j = 0 if j <= k else 1
    return s_j - s_i


def diagonal_twist_space(table, k, window):
    """Loops conjugated by diag(1,..,1,u,..,u) (k ones) plus the full jet part.

    Loop line `a` appears in degrees lo..min(hi, shift_a); the jet part is
    all of sl(n) + sl(n)*eps.  k = 0 gives the plain non-positive loops.
    """
    if not (0 <= k <= table.n - 1):
        raise ValueError(f"k must be in 0..{table.n - 1}, got {k}")
    els = []
    for a in range(table.dim):
        x = table.basis_element(a)
        top = min(window.hi, line_shift(table, a, k))
        for d in range(window.lo, top + 1):
            els.append(DoubleElement.of(table, loop=GPoly.monomial(x, d)))
    for x in table.basis():
        els.append(DoubleElement.of(table, a0=x))
    for x in table.basis():
        els.append(DoubleElement.of(table, a1=x))
    return DoubleSubspace(table, window, els)


def loop_part(sub):
    """The loop-only elements of a subspace basis, as a new subspace."""
    els = [el for el in sub.elements if el.a0.is_zero() and el.a1.is_zero()]
    assert all(not el.loop.is_zero() for el in els)
    return DoubleSubspace(sub.table, sub.window, els)


class QuotientMismatch(RuntimeError):
    """The quotient image disagrees with the parabolic prediction."""


def quotient_image_of_polynomials(table, k, window):
    """Image of i(g[u]) ∩ twist-space in the jet quotient, exactly.

    The quotient of the twist space by its orthogonal complement (its loop
    part) is coordinatized by (a0, a1).  The image must equal
    parabolic(k) + eps * (Killing complement of parabolic(k)); any
    disagreement raises QuotientMismatch instead of being projected away.
    Returns the image as jet-only DoubleElements.
    """
    if not (1 <= k <= table.n - 1):
        raise ValueError(f"k must be in 1..{table.n - 1}, got {k}")
    wk = diagonal_twist_space(table, k, window)
    ip = embedded_polynomials(table, window)
    inter = linalg.intersect_spans(ip.span_rows(), wk.span_rows())
    image_ech = linalg.Echelon()
    image = []
    for vec in inter:
        jet = {key: c for key, c in vec.items() if key[0] != "loop"}
        if image_ech.add(jet):
            image.append(DoubleElement.from_coords(table, jet))
    expected_ech = linalg.Echelon()
    par = parabolic(table, k)
    for x in par.elements:
        expected_ech.add(DoubleElement.of(table, a0=x).coords(window))
    for x in orthogonal_complement_g(par, table).elements:
        expected_ech.add(DoubleElement.of(table, a1=x).coords(window))
    if image_ech.rows != expected_ech.rows:
        raise QuotientMismatch(
            f"jet image of the polynomial part (dim {image_ech.rank}) differs "
            f"from parabolic({k}) + eps*complement (dim {expected_ech.rank}) "
            f"at window [{window.lo}, {window.hi}]"
        )
    return image


def lagrangian_from_pair(table, k, subalg, form, window):
    """Lagrangian from (subalgebra L, skew 2-form B): twisted loops + graph.

    Elements: the loop part of the twist space, the graph {(0, x, xi_x)}
    with K(xi_x, y) = B(x, y) for all y in L, and {(0, 0, eta)} for eta in
    the Killing complement of L.  `form` maps (index_x, index_y) over the
    basis list `subalg` to rationals.
    """
    els = list(loop_part(diagonal_twist_space(table, k, window)).elements)
    basis = list(subalg)
    for i, x in enumerate(basis):
        rows = []
        rhs = []
        for j, y in enumerate(basis):
            row = {}
            for b in range(table.dim):
                c = table.killing_pair(
                    y.coords, table.basis_element(b).coords
                )
                if c:
                    row[b] = c
            rows.append(row)
            rhs.append(Fraction(form(i, j)))
        sol = linalg.solve(rows, rhs)
        assert sol is not None, "form not realizable against the Killing pairing"
        coords = [Fraction(0)] * table.dim
        for b, c in sol.items():
            coords[b] = c
        xi = GElement(table, tuple(coords))
        els.append(DoubleElement.of(table, a0=x, a1=xi))
    comp = orthogonal_complement_g(Subspace(table, basis), table)
    for eta in comp.elements:
        els.append(DoubleElement.of(table, a1=eta))
    return DoubleSubspace(table, window, els)


# ---------------------------------------------------------------------------
# Alternate double models (exercised by the tests): the residue pairing on
# plain loops and the evaluation pairing on loops (+) g.


def residue_form(p, q):
    """Coefficient of u^-1 in K(p, q) for plain loops."""
    assert p.table is q.table
    total = Fraction(0)
    for d, x in p.terms.items():
        y = q.terms.get(-1 - d)
        if y is not None:
            total += p.table.killing_pair(x.coords, y.coords)
    return total


def evaluation_form(x, y):
    """Coefficient of u^0 in K(loops) minus K(marked values)."""
    (p, a) = x
    (q, b) = y
    assert p.table is q.table is a.table is b.table
    total = Fraction(0)
    for d, xe in p.terms.items():
        ye = q.terms.get(-d)
        if ye is not None:
            total += p.table.killing_pair(xe.coords, ye.coords)
    return total - a.table.killing_pair(a.coords, b.coords)


def evaluation_embed(p):
    """p -> (p, p(0)): the loop together with its value at zero."""
    return (p, p.coeff(0))


def evaluation_dual_space(table, window):
    """The isotropic complement model for the evaluation double.

    Strictly negative loops, plus the Borel-matching constants: raising
    root vectors as loops, lowering root vectors in the marked copy, and
    Cartan elements delta-embedded with opposite signs.
    """
    zero = table.zero()
    els = []
    for d in range(window.lo, 0):
        for x in table.basis():
            els.append((GPoly.monomial(x, d), zero))
    for (i, j) in table.root_pairs:
        x = table.basis_element(f"E({i},{j})")
        if i < j:
            els.append((GPoly.monomial(x, 0), zero))
        else:
            els.append((GPoly(table, {}), x))
    for m in range(1, table.n):
        hm = table.basis_element(f"H({m})")
        els.append((GPoly.monomial(hm, 0), hm.scale(-1)))
    return els
