"""Structure constants, Killing form and Casimir data for sl(n).

Basis convention: the matrix units E(i,j), i != j, in row-major order,
followed by H(i) = E(i,i) - E(i+1,i+1) for i = 1..n-1.  For sl(2) the
aliases e = E(1,2), f = E(2,1), h = H(1) are registered.

Everything is built from the defining representation by exact matrix
arithmetic; the Killing form is the trace form of the adjoint
representation, computed from the structure constants (K(e,f) = 4 and
K(h,h) = 8 for sl(2), i.e. K = 2n * trace-form for sl(n)).
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .ratfun import RatFun


class LieTable:
    """Basis, structure constants and Killing form of sl(n)."""

    def __init__(self, n):
        if not (isinstance(n, int) and n >= 2):
            raise ValueError(f"sl(n) needs an integer n >= 2, got {n!r}")
        self.n = n
        self.dim = n * n - 1
        self.labels = []
        self.index = {}
        self.root_pairs = []  # (i, j) with i != j, matching E(i,j) labels
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    self._register(f"E({i},{j})")
                    self.root_pairs.append((i, j))
        for i in range(1, n):
            self._register(f"H({i})")
        if n == 2:
            self.index["e"] = self.index["E(1,2)"]
            self.index["f"] = self.index["E(2,1)"]
            self.index["h"] = self.index["H(1)"]
        self.mats = [self._defining_matrix(lbl) for lbl in self.labels]
        self.structure = {}
        for a in range(self.dim):
            for b in range(self.dim):
                if a == b:
                    continue
                m = _mat_comm(self.mats[a], self.mats[b])
                entry = self.coords_of_matrix(m)
                tup = tuple((k, c) for k, c in enumerate(entry) if c)
                if tup:
                    self.structure[(a, b)] = tup
        self._ad = [self._ad_matrix(a) for a in range(self.dim)]
        self.killing = [
            [_trace_prod(self._ad[a], self._ad[b]) for b in range(self.dim)]
            for a in range(self.dim)
        ]
        self.killing_inv = linalg.inverse_dense(self.killing)

    def _register(self, label):
        self.index[label] = len(self.labels)
        self.labels.append(label)

    def _defining_matrix(self, label):
        n = self.n
        m = [[Fraction(0)] * n for _ in range(n)]
        if label.startswith("E"):
            i, j = label[2:-1].split(",")
            m[int(i) - 1][int(j) - 1] = Fraction(1)
        else:
            i = int(label[2:-1])
            m[i - 1][i - 1] = Fraction(1)
            m[i][i] = Fraction(-1)
        return m

    def coords_of_matrix(self, m):
        """Coordinates over the basis of a traceless n x n matrix."""
        n = self.n
        assert sum(m[i][i] for i in range(n)) == 0, "matrix is not traceless"
        coords = [Fraction(0)] * self.dim
        pos = 0
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    coords[pos] = Fraction(m[i - 1][j - 1])
                    pos += 1
        partial = Fraction(0)
        for i in range(1, n):
            partial += m[i - 1][i - 1]
            coords[pos] = partial
            pos += 1
        return coords

    def _ad_matrix(self, a):
        ad = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for b in range(self.dim):
            for k, c in self.structure.get((a, b), ()):
                ad[k][b] = c
        return ad

    def basis_element(self, key):
        """Unit basis GElement from an index or a label (aliases allowed)."""
        if isinstance(key, str):
            if key not in self.index:
                raise KeyError(f"unknown basis symbol {key!r} for sl({self.n})")
            key = self.index[key]
        coords = [Fraction(0)] * self.dim
        coords[key] = Fraction(1)
        return GElement(self, tuple(coords))

    def element(self, coeffs):
        """GElement from {label or index: rational coefficient}."""
        coords = [Fraction(0)] * self.dim
        for key, c in coeffs.items():
            idx = self.index[key] if isinstance(key, str) else key
            coords[idx] += Fraction(c)
        return GElement(self, tuple(coords))

    def zero(self):
        return GElement(self, tuple([Fraction(0)] * self.dim))

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def ad_on_basis(self, coords, b):
        """[x, x_b] for x with the given coordinates, as (index, coeff) pairs."""
        out = {}
        for a, xa in enumerate(coords):
            if not xa:
                continue
            for k, c in self.structure.get((a, b), ()):
                out[k] = out.get(k, Fraction(0)) + xa * c
        return [(k, c) for k, c in out.items() if c]

    def bracket_coords(self, x, y):
        out = [Fraction(0)] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if not yb:
                    continue
                for k, c in self.structure.get((a, b), ()):
                    out[k] += xa * yb * c
        return out

    def killing_pair(self, x, y):
        """K(x, y) for coordinate vectors."""
        out = Fraction(0)
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.killing[a]
            for b, yb in enumerate(y):
                if yb:
                    out += xa * yb * row[b]
        return out

    def check_jacobi(self):
        """Exact Jacobi identity on all basis triples."""
        basis = self.basis()
        for x in basis:
            for y in basis:
                for z in basis:
                    s = x.bracket(y).bracket(z)
                    s = s + y.bracket(z).bracket(x)
                    s = s + z.bracket(x).bracket(y)
                    if not s.is_zero():
                        return False
        return True

    def __repr__(self):
        return f"LieTable(sl({self.n}))"


def _mat_comm(a, b):
    n = len(a)
    ab = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    ba = [[sum(b[i][k] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]


def _trace_prod(a, b):
    n = len(a)
    return sum(a[i][k] * b[k][i] for i in range(n) for k in range(n))


_SL_TABLES = {}


def make_sl(n):
    """LieTable for sl(n), n >= 2.  Tables are shared: the same n always
    returns the same instance, so elements built independently compare."""
    if n not in _SL_TABLES:
        _SL_TABLES[n] = LieTable(n)
    return _SL_TABLES[n]


class GElement:
    """Element of sl(n) as a coordinate vector over the LieTable basis."""

    __slots__ = ("table", "coords")

    def __init__(self, table, coords):
        assert len(coords) == table.dim, (len(coords), table.dim)
        self.table = table
        self.coords = tuple(Fraction(c) for c in coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, GElement):
            return NotImplemented
        return self.table is other.table and self.coords == other.coords

    def __add__(self, other):
        assert self.table is other.table
        return GElement(self.table, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        assert self.table is other.table
        return GElement(self.table, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return GElement(self.table, tuple(-a for a in self.coords))

    def scale(self, c):
        c = Fraction(c)
        return GElement(self.table, tuple(a * c for a in self.coords))

    def bracket(self, other):
        assert self.table is other.table, "mismatched algebras"
        return GElement(self.table, tuple(self.table.bracket_coords(self.coords, other.coords)))

    def killing(self, other):
        assert self.table is other.table, "mismatched algebras"
        return self.table.killing_pair(self.coords, other.coords)

    def as_vector(self):
        """Sparse dict view for the linalg routines."""
        return {i: c for i, c in enumerate(self.coords) if c}

    def to_matrix(self):
        """The element in the defining representation."""
        n = self.table.n
        m = [[Fraction(0)] * n for _ in range(n)]
        for idx, c in enumerate(self.coords):
            if c:
                mat = self.table.mats[idx]
                for i in range(n):
                    for j in range(n):
                        if mat[i][j]:
                            m[i][j] += c * mat[i][j]
        return m

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coords):
            if c:
                lbl = self.table.labels[i]
                parts.append(lbl if c == 1 else f"{c}*{lbl}")
        return " + ".join(parts)

    def __repr__(self):
        return f"GElement({self})"


def bracket(x, y):
    return x.bracket(y)


class GPoly:
    """g-valued Laurent polynomial: {integer degree: nonzero GElement}."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms):
        self.table = table
        self.terms = {d: x for d, x in terms.items() if not x.is_zero()}

    @staticmethod
    def monomial(x, d=0):
        return GPoly(x.table, {d: x})

    def is_zero(self):
        return not self.terms

    def coeff(self, d):
        return self.terms.get(d, self.table.zero())

    def degrees(self):
        return sorted(self.terms)

    def __add__(self, other):
        assert self.table is other.table
        terms = dict(self.terms)
        for d, x in other.terms.items():
            terms[d] = terms.get(d, self.table.zero()) + x
        return GPoly(self.table, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return GPoly(self.table, {d: x.scale(c) for d, x in self.terms.items()})

    def shift(self, d):
        return GPoly(self.table, {k + d: x for k, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GPoly):
            return NotImplemented
        return self.table is other.table and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({self.terms[d]})*u^{d}" if d else f"({self.terms[d]})"
            for d in sorted(self.terms)
        )

    def __repr__(self):
        return f"GPoly({self})"


def bracket_poly(p, q):
    """Degreewise bracket of g-valued (Laurent) polynomials."""
    assert p.table is q.table, "mismatched algebras"
    out = {}
    for d1, x in p.terms.items():
        for d2, y in q.terms.items():
            z = x.bracket(y)
            if not z.is_zero():
                d = d1 + d2
                out[d] = out.get(d, p.table.zero()) + z
    return GPoly(p.table, out)


class CasimirSpec:
    """Symmetric invariant 2-tensor: scale * sum_i x^i (x) x_i.

    The coefficient matrix is scale * K^-1 over the basis; `tensor()`
    realizes it as a constant Tensor2.
    """

    __slots__ = ("table", "scale", "matrix")

    def __init__(self, table, scale, matrix):
        self.table = table
        self.scale = Fraction(scale)
        self.matrix = matrix

    def tensor(self):
        from .tensors import Tensor2

        entries = {}
        for a in range(self.table.dim):
            for b in range(self.table.dim):
                c = self.matrix[a][b]
                if c:
                    entries[(a, b)] = RatFun.from_frac(c)
        return Tensor2.make(self.table, entries)

    def __repr__(self):
        return f"CasimirSpec(sl({self.table.n}), scale={self.scale})"


def casimir(table, scale=1):
    """CasimirSpec with coefficient matrix scale * K^-1 (dual-basis sum)."""
    scale = Fraction(scale)
    matrix = [
        [scale * table.killing_inv[a][b] for b in range(table.dim)]
        for a in range(table.dim)
    ]
    return CasimirSpec(table, scale, matrix)


class Subspace:
    """Subspace of sl(n), held as a list of linearly independent GElements."""

    def __init__(self, table, elements):
        self.table = table
        self.elements = []
        self._ech = linalg.Echelon()
        for x in elements:
            assert x.table is table
            if self._ech.add(x.as_vector()):
                self.elements.append(x)
            else:
                raise ValueError("dependent spanning set for Subspace")

    @property
    def dim(self):
        return len(self.elements)

    def contains(self, x):
        return self._ech.contains(x.as_vector())

    def equals(self, other):
        return self._ech.rows == other._ech.rows

    def is_subalgebra(self):
        for x in self.elements:
            for y in self.elements:
                if not self.contains(x.bracket(y)):
                    return False
        return True

    def __repr__(self):
        return f"Subspace(dim={self.dim} of sl({self.table.n}))"


def span(table, elements):
    """Subspace from a (possibly dependent) spanning list."""
    ech = linalg.Echelon()
    picked = []
    for x in elements:
        if ech.add(x.as_vector()):
            picked.append(x)
    return Subspace(table, picked)


def cartan(table):
    return Subspace(table, [table.basis_element(f"H({i})") for i in range(1, table.n)])


def borel_plus(table):
    els = [
        table.basis_element(f"E({i},{j})")
        for (i, j) in table.root_pairs
        if i < j
    ]
    els += [table.basis_element(f"H({i})") for i in range(1, table.n)]
    return Subspace(table, els)


def borel_minus(table):
    els = [
        table.basis_element(f"E({i},{j})")
        for (i, j) in table.root_pairs
        if i > j
    ]
    els += [table.basis_element(f"H({i})") for i in range(1, table.n)]
    return Subspace(table, els)


def parabolic(table, k):
    """Maximal parabolic P_k: block upper-triangular for blocks (k, n-k).

    Contains the positive Borel and every negative root vector E(i,j)
    (i > j) except those with j <= k < i.  Closed under the bracket.
    """
    if not (1 <= k <= table.n - 1):
        raise ValueError(f"k must be in 1..{table.n - 1}, got {k}")
    els = []
    for (i, j) in table.root_pairs:
        if i < j or not (j <= k < i):
            els.append(table.basis_element(f"E({i},{j})"))
    els += [table.basis_element(f"H({i})") for i in range(1, table.n)]
    sub = Subspace(table, els)
    assert sub.is_subalgebra(), "parabolic construction must close under bracket"
    return sub


def orthogonal_complement_g(sub, table):
    """Killing-orthogonal complement of a subspace of sl(n), exact."""
    rows = []
    for x in sub.elements:
        row = {}
        for b in range(table.dim):
            c = sum(xa * table.killing[a][b] for a, xa in enumerate(x.coords) if xa)
            if c:
                row[b] = c
        rows.append(row)
    vecs = linalg.nullspace(rows, range(table.dim))
    els = []
    for v in vecs:
        coords = [Fraction(0)] * table.dim
        for i, c in v.items():
            coords[i] = c
        els.append(GElement(table, tuple(coords)))
    return Subspace(table, els)


CANDIDATE_SCALES = (
    Fraction(1, 8),
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
    Fraction(4),
    Fraction(8),
)


class CalibrationError(RuntimeError):
    """Raised when the Casimir scale search has no unique survivor."""

    def __init__(self, residuals):
        self.residuals = residuals
        lines = [
            f"  scale {c}: residual terms {r1} (rational probe), {r2} (polynomial-tail probe)"
            for c, (r1, r2) in residuals.items()
        ]
        super().__init__(
            "Casimir calibration did not single out one scale:\n" + "\n".join(lines)
        )


def calibrate_casimir(table):
    """Fix the Casimir scale operationally for the sl(2) catalog.

    Candidate scales multiply the Killing-dual Casimir.  A candidate
    survives when two exact Yang-Baxter probes both vanish:

    * the rational probe  Omega_c/(u-v) + u*(e(x)h) - v*(h(x)e),
    * the polynomial-tail probe  u*v*Omega_c/(v-u) + (1/2)h(x)e
      - (1/2)e(x)h - u*(e(x)f) + v*(f(x)e).

    The rational probe alone is scale-insensitive (its cross terms with
    the symmetric part vanish for every invariant tensor), so the
    second, scale-sensitive probe is required to discriminate; exactly
    one candidate must survive, otherwise CalibrationError carries the
    per-candidate residual report.
    """
    from . import cybe
    from .tensors import Tensor2

    if table.n != 2:
        raise ValueError("calibration is defined over sl(2)")
    u = RatFun.var("u")
    v = RatFun.var("v")
    e = table.index["e"]
    f = table.index["f"]
    h = table.index["h"]
    residuals = {}
    survivors = []
    for c in CANDIDATE_SCALES:
        om = casimir(table, c).tensor()
        probe1 = om.scale((u - v) ** -1) + Tensor2.make(
            table, {(e, h): u, (h, e): -v}
        )
        probe2 = om.scale(u * v / (v - u)) + Tensor2.make(
            table,
            {
                (h, e): RatFun.from_frac(Fraction(1, 2)),
                (e, h): RatFun.from_frac(Fraction(-1, 2)),
                (e, f): -u,
                (f, e): v,
            },
        )
        r1 = cybe.cyb(probe1)
        r2 = cybe.cyb(probe2)
        residuals[c] = (len(r1.entries), len(r2.entries))
        if r1.is_zero() and r2.is_zero():
            survivors.append(c)
    if len(survivors) != 1:
        raise CalibrationError(residuals)
    return casimir(table, survivors[0])


class ConventionError(RuntimeError):
    """Raised when no sign/orientation of the constant r-matrix works."""


def dj_rmatrix(table, omega, with_convention=False):
    """Constant Drinfeld-Jimbo-type r-matrix compatible with v*Omega/(v-u).

    Construction: half the Cartan block of Omega plus, for every positive
    root, the dual pair with the scaling inherited from Omega.  The sign
    and the orientation of the root-vector pairing are fixed by a
    deterministic search over (+1, e(x)f), (+1, f(x)e), (-1, e(x)f),
    (-1, f(x)e): the first candidate r making v*Omega/(v-u) + r an exact
    Yang-Baxter solution wins, and the winning convention is recorded.
    The winner satisfies r + swap(r) = -Omega.
    """
    from . import cybe
    from .tensors import Tensor2

    u = RatFun.var("u")
    v = RatFun.var("v")
    n = table.n
    cartan_idx = [table.index[f"H({i})"] for i in range(1, n)]
    omega_t = omega.tensor()
    base = {}
    for a in cartan_idx:
        for b in cartan_idx:
            c = omega.matrix[a][b]
            if c:
                base[(a, b)] = RatFun.from_frac(c / 2)
    attempts = []
    for sign, orient in ((1, "ef"), (1, "fe"), (-1, "ef"), (-1, "fe")):
        entries = dict(base)
        for (i, j) in table.root_pairs:
            if i < j:
                p = table.index[f"E({i},{j})"]
                m = table.index[f"E({j},{i})"]
                coeff = RatFun.from_frac(omega.matrix[p][m])
                key = (p, m) if orient == "ef" else (m, p)
                entries[key] = entries.get(key, RatFun.from_frac(0)) + coeff
        r = Tensor2.make(table, entries).scale(RatFun.from_frac(sign))
        candidate = omega_t.scale(v / (v - u)) + r
        residual = cybe.cyb(candidate)
        if residual.is_zero():
            if with_convention:
                return r, {"sign": sign, "orientation": orient}
            return r
        attempts.append((sign, orient, len(residual.entries)))
    raise ConventionError(
        "no sign/orientation makes the constant r-matrix compatible: "
        + ", ".join(f"(sign {s}, {o}): {k} residual terms" for s, o, k in attempts)
    )
