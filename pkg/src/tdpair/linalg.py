"""Exact dense linear algebra over a ``Field``.

Vectors are plain lists of raw field values.  A ``Subspace`` is stored as
its reduced row-echelon basis, so two subspaces are equal exactly when
their stored bases are identical.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from operator import mul

from .errors import DimensionMismatch, FieldMismatch, SingularMatrix


def _rref_rows(field, rows, ncols):
    """In-place RREF of a list of row lists.  Returns the pivot columns."""
    p = field.p
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = field.inv(prow[c])
        if p is None:
            prow = [x * inv for x in prow]
        else:
            prow = [x * inv % p for x in prow]
        rows[r] = prow
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    row = rows[i]
                    if p is None:
                        rows[i] = [a - f * b for a, b in zip(row, prow)]
                    else:
                        rows[i] = [(a - f * b) % p for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    del rows[r:]
    return pivots


class Matrix:
    """Dense matrix of raw field values, treated as immutable."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else (ncols or 0)

    @classmethod
    def from_values(cls, field, rows):
        rows = [[field(x) for x in row] for row in rows]
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have positive dimensions")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        return cls(field, rows)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, nrows, ncols=None):
        ncols = nrows if ncols is None else ncols
        return cls(field, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, field, values):
        n = len(values)
        return cls(field, [[field(values[i]) if i == j else 0 for j in range(n)]
                           for i in range(n)])

    @classmethod
    def from_columns(cls, field, columns):
        return cls(field, [list(r) for r in zip(*columns)])

    @classmethod
    def random(cls, field, nrows, ncols, rng):
        return cls(field, [[field.random_element(rng) for _ in range(ncols)]
                           for _ in range(nrows)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    __hash__ = None

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"Matrix({self.field}, [{body}])"

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} matrix combined with {other.field} matrix")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        red = self.field.reduce
        return Matrix(self.field, [[red(a + b) for a, b in zip(r, s)]
                                   for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {other.shape} from {self.shape}")
        red = self.field.reduce
        return Matrix(self.field, [[red(a - b) for a, b in zip(r, s)]
                                   for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        red = self.field.reduce
        return Matrix(self.field, [[red(c * a) for a in r] for r in self.rows])

    def shift(self, c):
        """Return ``self - c*I``."""
        red = self.field.reduce
        return Matrix(self.field, [[red(a - c) if i == j else a for j, a in enumerate(r)]
                                   for i, r in enumerate(self.rows)])

    def __matmul__(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        p = self.field.p
        if p is None:
            rows = [[sum(map(mul, r, c)) for c in cols] for r in self.rows]
        else:
            rows = [[sum(map(mul, r, c)) % p for c in cols] for r in self.rows]
        return Matrix(self.field, rows)

    def apply(self, v):
        """Matrix-vector product ``self @ v`` for a column vector given as a list."""
        p = self.field.p
        if p is None:
            return [sum(map(mul, r, v)) for r in self.rows]
        return [sum(map(mul, r, v)) % p for r in self.rows]

    def transpose(self):
        return Matrix(self.field, [list(c) for c in zip(*self.rows)])

    T = property(transpose)

    def power(self, k):
        result = Matrix.identity(self.field, self.nrows)
        for _ in range(k):
            result = result @ self
        return result

    def powers(self, k):
        """``[I, M, M^2, ..., M^k]``."""
        out = [Matrix.identity(self.field, self.nrows)]
        for _ in range(k):
            out.append(out[-1] @ self)
        return out

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def is_symmetric(self):
        return self.is_square and self == self.transpose()

    def commutes_with(self, other):
        return self @ other == other @ self

    def vec(self):
        """Row-major flattening."""
        return [x for r in self.rows for x in r]

    @classmethod
    def unvec(cls, field, v, n, m=None):
        m = n if m is None else m
        return cls(field, [list(v[i * m:(i + 1) * m]) for i in range(n)])

    def rref(self):
        rows = [list(r) for r in self.rows]
        pivots = _rref_rows(self.field, rows, self.ncols)
        rank = len(pivots)
        rows.extend([0] * self.ncols for _ in range(self.nrows - rank))
        return Matrix(self.field, rows), rank

    def rank(self):
        rows = [list(r) for r in self.rows]
        return len(_rref_rows(self.field, rows, self.ncols))

    def kernel(self):
        return kernel_basis(self)

    def row_space(self):
        return Subspace.span(self.field, self.ncols, self.rows)

    def column_space(self):
        return Subspace.span(self.field, self.nrows, [list(c) for c in zip(*self.rows)])

    def inverse(self):
        if not self.is_square:
            raise DimensionMismatch("only square matrices have inverses")
        n = self.nrows
        rows = [list(r) + [1 if i == j else 0 for j in range(n)]
                for i, r in enumerate(self.rows)]
        pivots = _rref_rows(self.field, rows, n)
        if len(pivots) < n or pivots[-1] != n - 1:
            raise SingularMatrix("matrix is singular")
        return Matrix(self.field, [r[n:] for r in rows])

    def is_invertible(self):
        return self.is_square and self.rank() == self.nrows

    def normalized(self):
        """Scale so the first nonzero entry (row-major) is 1."""
        for x in self.vec():
            if x != 0:
                return self.scale(self.field.inv(x))
        return self

    def to_json(self):
        fmt = self.field.format
        return {"rows": self.nrows, "cols": self.ncols,
                "entries": [[fmt(x) for x in r] for r in self.rows]}

    def entry_strings(self):
        fmt = self.field.format
        return [[fmt(x) for x in r] for r in self.rows]


def rref(M):
    """Reduced row-echelon form and rank."""
    return M.rref()


class EchelonBasis:
    """Incrementally grown basis used for spans and spinning.

    Rows are each reduced against all earlier rows before insertion, so
    sequential elimination in insertion order fully reduces a new vector.
    """

    __slots__ = ("field", "n", "rows", "pivots")

    def __init__(self, field, n):
        self.field = field
        self.n = n
        self.rows = []
        self.pivots = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        p = self.field.p
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f != 0:
                if p is None:
                    v = [a - f * b for a, b in zip(v, row)]
                else:
                    v = [(a - f * b) % p for a, b in zip(v, row)]
        return v

    def add(self, v):
        """Add ``v`` to the span; return the reduced new row or ``None``."""
        v = self.reduce(v)
        for c, x in enumerate(v):
            if x != 0:
                inv = self.field.inv(x)
                p = self.field.p
                v = [a * inv for a in v] if p is None else [a * inv % p for a in v]
                self.rows.append(v)
                self.pivots.append(c)
                return v
        return None

    def contains(self, v):
        return not any(self.reduce(v))

    def subspace(self):
        return Subspace.span(self.field, self.n, self.rows)


class Subspace:
    """Subspace of K^n with its canonical RREF basis (zero rows dropped)."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def span(cls, field, ambient_dim, vectors):
        rows = [list(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(r)} in K^{ambient_dim}")
        pivots = _rref_rows(field, rows, ambient_dim)
        return cls(field, ambient_dim, tuple(tuple(r) for r in rows), tuple(pivots))

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field, n):
        return cls.span(field, n, Matrix.identity(field, n).rows)

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def is_full(self):
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.field}^{self.ambient_dim})"

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} subspace combined with {other.field} subspace")
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return subspace_intersect(self, other)

    def coordinates(self, v):
        """Coefficients of ``v`` in the stored basis, or ``None`` if ``v`` is outside."""
        p = self.field.p
        v = list(v)
        coeffs = []
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            coeffs.append(f)
            if f != 0:
                if p is None:
                    v = [a - f * b for a, b in zip(v, row)]
                else:
                    v = [(a - f * b) % p for a, b in zip(v, row)]
        if any(v):
            return None
        return coeffs

    def contains(self, v):
        return self.coordinates(v) is not None

    def __contains__(self, v):
        return self.contains(v)

    def contains_subspace(self, other):
        self._check(other)
        return all(self.contains(b) for b in other.basis)

    def image(self, M):
        """``M`` applied to this subspace."""
        return Subspace.span(self.field, M.nrows, [M.apply(b) for b in self.basis])

    def is_invariant(self, M):
        return all(self.contains(M.apply(b)) for b in self.basis)

    def annihilator(self):
        """``{v : w.v = 0 for all w in self}``."""
        if not self.basis:
            return Subspace.full(self.field, self.ambient_dim)
        return kernel_basis(Matrix(self.field, [list(b) for b in self.basis]))

    def basis_matrix(self):
        """Basis vectors as the columns of a matrix."""
        return Matrix.from_columns(self.field, self.basis)

    def to_json(self):
        fmt = self.field.format
        return {"ambient_dim": self.ambient_dim, "dim": self.dim,
                "basis": [[fmt(x) for x in b] for b in self.basis]}


def kernel_basis(M):
    """Null space ``{v : M v = 0}`` as a canonical subspace."""
    field, n = M.field, M.ncols
    rows = [list(r) for r in M.rows]
    pivots = _rref_rows(field, rows, n)
    pivset = set(pivots)
    vectors = []
    for f in range(n):
        if f in pivset:
            continue
        v = [0] * n
        v[f] = 1
        for row, c in zip(rows, pivots):
            v[c] = field.reduce(-row[f])
        vectors.append(v)
    return Subspace.span(field, n, vectors)


def subspace_sum(X, Y):
    X._check(Y)
    return Subspace.span(X.field, X.ambient_dim, list(X.basis) + list(Y.basis))


def subspace_intersect(X, Y):
    """Zassenhaus: eliminate ``[[X, X], [Y, 0]]``; rows ``[0, w]`` span X ∩ Y."""
    X._check(Y)
    n = X.ambient_dim
    if X.is_zero() or Y.is_zero():
        return Subspace.zero(X.field, n)
    rows = [list(x) + list(x) for x in X.basis] + [list(y) + [0] * n for y in Y.basis]
    pivots = _rref_rows(X.field, rows, 2 * n)
    vectors = [r[n:] for r, c in zip(rows, pivots) if c >= n]
    return Subspace.span(X.field, n, vectors)


def sum_of(field, n, spaces):
    out = Subspace.zero(field, n)
    for s in spaces:
        out = out + s
    return out


class Polynomial:
    """Polynomial with raw coefficients in ascending degree, trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = [field.reduce(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_roots(cls, field, roots):
        out = cls(field, [1])
        for r in roots:
            out = out * cls(field, [-r, 1])
        return out

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"Polynomial({self.field}, {[self.field.format(c) for c in self.coeffs]})"

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.field, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(self.field, out)

    def __call__(self, x):
        p = self.field.p
        acc = 0
        if p is None:
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return self.field(acc) if not isinstance(acc, int) else acc
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def eval_matrix(self, M):
        """Horner evaluation at a square matrix."""
        n = M.nrows
        acc = Matrix.zeros(M.field, n)
        for c in reversed(self.coeffs):
            acc = (acc @ M).shift(-c)
        return acc

    def divide_linear(self, r):
        """Synthetic division by ``x - r``: returns (quotient, remainder)."""
        field = self.field
        if not self.coeffs:
            return self, 0
        out = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = field.reduce(acc * r + c)
            out.append(acc)
        rem = out.pop()
        return Polynomial(field, list(reversed(out))), rem

    def to_json(self):
        return [self.field.format(c) for c in self.coeffs]


def char_poly(M):
    """Monic ``det(xI - M)`` by Berkowitz's division-free recurrence.

    Grows trailing principal submatrices one row/column at a time; each
    step multiplies by a lower-triangular Toeplitz matrix whose first
    column is ``[1, -a, -R C, -R A C, ..., -R A^(k-1) C]``.
    """
    if not M.is_square:
        raise DimensionMismatch("characteristic polynomial needs a square matrix")
    field = M.field
    red = field.reduce
    a = M.rows
    n = M.nrows
    desc = [1]
    for i in range(n - 1, -1, -1):
        k = n - 1 - i
        R = a[i][i + 1:]
        v = [a[r][i] for r in range(i + 1, n)]
        t = [1, red(-a[i][i])]
        for _ in range(k):
            t.append(red(-sum(map(mul, R, v))))
            v = [red(sum(a[i + 1 + r][i + 1 + c] * v[c] for c in range(k))) for r in range(k)]
        desc = [red(sum(t[r - c] * desc[c] for c in range(min(r, k) + 1)))
                for r in range(k + 2)]
    return Polynomial(field, list(reversed(desc)))


def _int_divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _divisors(n):
    n = abs(n)
    if n < 10 ** 10:
        return _int_divisors(n)
    from sympy import divisors
    return [int(x) for x in divisors(n)]


def _candidate_roots(f):
    """Rational-root candidates of a rational polynomial with nonzero constant term."""
    den = lcm(*(Fraction(c).denominator for c in f.coeffs))
    ints = [int(Fraction(c) * den) for c in f.coeffs]
    lead, const = ints[-1], ints[0]
    cands = set()
    for u in _divisors(const):
        for v in _divisors(lead):
            q = Fraction(u, v)
            cands.add(q)
            cands.add(-q)
    return sorted(cands)


def roots_in_field(f):
    """All roots of ``f`` in its field with multiplicities.

    Returns ``(roots, splits)`` where ``roots`` is a list of
    ``(root, multiplicity)`` sorted in the field's canonical order, and
    ``splits`` says whether ``f`` is a product of linear factors.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    field = f.field
    roots = []
    g = f
    zero_mult = 0
    while g.coeffs and g.coeffs[0] == 0:
        g = Polynomial(field, g.coeffs[1:])
        zero_mult += 1
    if zero_mult:
        roots.append((0, zero_mult))
    if g.degree > 0:
        cands = field.elements() if field.is_finite else _candidate_roots(g)
        for r in cands:
            if r == 0:
                continue
            r = field(r)
            if g(r) != 0:
                continue
            mult = 0
            while g.degree > 0:
                q, rem = g.divide_linear(r)
                if rem != 0:
                    break
                g = q
                mult += 1
            if mult:
                roots.append((r, mult))
            if g.degree == 0:
                break
    roots.sort(key=lambda rm: field.key(rm[0]))
    return roots, g.degree == 0


def irreducible_factors(f):
    """The distinct monic irreducible factors of ``f``, by degree (sympy's factorization)."""
    if f.degree < 1:
        return []
    from sympy import Poly, QQ as SymQQ, symbols
    x = symbols("x")
    field = f.field
    coeffs = [Fraction(c) for c in reversed(f.coeffs)]
    if field.is_finite:
        poly = Poly([int(c) for c in coeffs], x, modulus=field.p)
    else:
        poly = Poly(coeffs, x, domain=SymQQ)
    out = []
    for g, _ in poly.factor_list()[1]:
        cs = [Fraction(str(c)) for c in reversed(g.all_coeffs())]
        lead = field(cs[-1])
        out.append(Polynomial(field, [field.div(field(c), lead) for c in cs]))
    out.sort(key=lambda h: (h.degree, [field.key(c) for c in h.coeffs]))
    return out
