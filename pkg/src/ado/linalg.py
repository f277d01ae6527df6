"""Exact linear algebra over the rationals.

All scalars are fractions.Fraction values; there is no floating point
anywhere in this package.  Matrices are immutable and operations return
new values.  Subspaces are kept in reduced row echelon form so that
equality, membership, coordinates and complements are all canonical:
two computations that produce the same subspace produce the same basis.

Polynomials live here too (dense, coefficients listed from the constant
term up) together with the handful of polynomial operations the rest of
the package needs: monic gcd, squarefree part, modular inverse by the
extended Euclidean algorithm, and composition modulo a polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Q = Fraction

QZERO = Q(0)
QONE = Q(1)

Vector = tuple[Q, ...]


def to_q(value) -> Q:
    """Coerce ints, strings like '3/4' and Fractions to Fraction."""
    if isinstance(value, Q):
        return value
    if isinstance(value, (int, str)):
        return Q(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


def zero_vector(n: int) -> Vector:
    return (QZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(QONE if j == i else QZERO for j in range(n))


def vec(values: Iterable) -> Vector:
    return tuple(to_q(v) for v in values)


def add_vec(u: Sequence[Q], v: Sequence[Q]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub_vec(u: Sequence[Q], v: Sequence[Q]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale_vec(c: Q, v: Sequence[Q]) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vec(v: Sequence[Q]) -> bool:
    return all(a == 0 for a in v)


class Matrix:
    """Immutable dense matrix of Fractions, stored as a tuple of row tuples."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_q(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols disagrees with row data")
            ncols = width
        elif ncols is None:
            raise ValueError("ncols required for a matrix with no rows")
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([zero_vector(ncols) for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([unit_vector(n, i) for i in range(n)], ncols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Q]], nrows: int) -> "Matrix":
        cols = [vec(c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise ValueError("column length disagrees with nrows")
        return cls([tuple(c[i] for c in cols) for i in range(nrows)], ncols=len(cols))

    def __getitem__(self, key: tuple[int, int]) -> Q:
        i, j = key
        return self.rows[i][j]

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.ncols)], ncols=self.nrows)

    def trace(self) -> Q:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), QZERO)

    def flatten(self) -> Vector:
        return tuple(x for row in self.rows for x in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix(
            [add_vec(a, b) for a, b in zip(self.rows, other.rows)], ncols=self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return Matrix(
            [sub_vec(a, b) for a, b in zip(self.rows, other.rows)], ncols=self.ncols
        )

    def __neg__(self) -> "Matrix":
        return self.scale(Q(-1))

    def scale(self, c) -> "Matrix":
        c = to_q(c)
        return Matrix([scale_vec(c, row) for row in self.rows], ncols=self.ncols)

    def __rmul__(self, other) -> "Matrix":
        if isinstance(other, (int, Q)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other) -> "Matrix":
        if isinstance(other, (int, Q)):
            return self.scale(other)
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        # skip zero entries; the large matrices in this package are sparse
        brows = other.rows
        out = []
        for arow in self.rows:
            acc = [QZERO] * other.ncols
            for k, a in enumerate(arow):
                if a:
                    brow = brows[k]
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Matrix(out, ncols=other.ncols)

    def apply(self, v: Sequence[Q]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.rows:
            s = QZERO
            for a, x in zip(row, v):
                if a and x:
                    s += a * x
            out.append(s)
        return tuple(out)

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({[list(map(str, row)) for row in self.rows]!r})"


def vstack(mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise ValueError("vstack of nothing")
    ncols = mats[0].ncols
    if any(m.ncols != ncols for m in mats):
        raise ValueError("column count mismatch")
    return Matrix([row for m in mats for row in m.rows], ncols=ncols)


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    """Block diagonal matrix; blocks may be rectangular or empty."""
    total_r = sum(m.nrows for m in mats)
    total_c = sum(m.ncols for m in mats)
    rows = []
    col_off = 0
    for m in mats:
        left = col_off
        right = total_c - col_off - m.ncols
        for row in m.rows:
            rows.append((QZERO,) * left + row + (QZERO,) * right)
        col_off += m.ncols
    return Matrix(rows, ncols=total_c) if rows else Matrix([], ncols=total_c)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots: list[int] = []
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for r in range(pr, nrows):
            if rows[r][pc]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        inv = QONE / rows[pr][pc]
        if inv != 1:
            rows[pr] = [x * inv for x in rows[pr]]
        for r in range(nrows):
            if r != pr and rows[r][pc]:
                f = rows[r][pc]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return Matrix(rows, ncols=ncols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel(m: Matrix) -> "Subspace":
    """Right kernel {v : m v = 0} as a canonical subspace."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [QZERO] * m.ncols
        v[f] = QONE
        for r, p in enumerate(pivots):
            v[p] = -reduced.rows[r][f]
        basis.append(tuple(v))
    return Subspace.from_vectors(m.ncols, basis)


def solve(a: Matrix, b: Sequence[Q]) -> Vector | None:
    """One solution of a x = b with free variables set to zero, or None."""
    if len(b) != a.nrows:
        raise ValueError("right hand side length mismatch")
    aug = Matrix([row + (bi,) for row, bi in zip(a.rows, b)], ncols=a.ncols + 1)
    if a.nrows == 0:
        return zero_vector(a.ncols)
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == a.ncols:
        return None
    x = [QZERO] * a.ncols
    for r, p in enumerate(pivots):
        x[p] = reduced.rows[r][a.ncols]
    return tuple(x)


class Subspace:
    """Subspace of Q^n held as a reduced row echelon basis.

    The basis matrix has full row rank, pivots strictly increasing, each
    pivot entry 1 and each pivot column zero elsewhere.  This makes the
    representation canonical: equal subspaces compare equal.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Matrix, pivots: tuple[int, ...]):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Sequence[Q]]) -> "Subspace":
        rows = [vec(v) for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise ValueError("vector length disagrees with ambient dimension")
        if not rows:
            return cls(ambient_dim, Matrix([], ncols=ambient_dim), ())
        reduced, pivots = rref(Matrix(rows, ncols=ambient_dim))
        basis = Matrix(reduced.rows[: len(pivots)], ncols=ambient_dim)
        return cls(ambient_dim, basis, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix([], ncols=ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim, Matrix.identity(ambient_dim), tuple(range(ambient_dim))
        )

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> Iterator[Vector]:
        return iter(self.basis.rows)

    def reduce(self, v: Sequence[Q]) -> Vector:
        """Residual of v after eliminating all pivot coordinates."""
        if len(v) != self.ambient_dim:
            raise ValueError("vector length disagrees with ambient dimension")
        w = list(to_q(x) for x in v)
        for row, p in zip(self.basis.rows, self.pivots):
            c = w[p]
            if c:
                for j, y in enumerate(row):
                    if y:
                        w[j] -= c * y
        return tuple(w)

    def member(self, v: Sequence[Q]) -> bool:
        return is_zero_vec(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return all(self.member(row) for row in other.basis.rows)

    def coordinates_of(self, v: Sequence[Q]) -> Vector:
        """Coefficients of v in the echelon basis; v must lie in the span."""
        if not self.member(v):
            raise ValueError("vector does not lie in the subspace")
        return tuple(to_q(v[p]) for p in self.pivots)

    def sum(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_vectors(
            self.ambient_dim, list(self.basis.rows) + list(other.basis.rows)
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # coefficients (a, b) with a . basis_S = b . basis_T
        s, t = self.dim, other.dim
        constraints = []
        for c in range(self.ambient_dim):
            row = [self.basis.rows[i][c] for i in range(s)]
            row += [-other.basis.rows[j][c] for j in range(t)]
            constraints.append(tuple(row))
        coeff_kernel = kernel(Matrix(constraints, ncols=s + t))
        vectors = []
        for coeffs in coeff_kernel.vectors():
            v = zero_vector(self.ambient_dim)
            for a, row in zip(coeffs[:s], self.basis.rows):
                if a:
                    v = add_vec(v, scale_vec(a, row))
            vectors.append(v)
        return Subspace.from_vectors(self.ambient_dim, vectors)

    def extend_complement(self, within: "Subspace | None" = None) -> "Subspace":
        """Deterministic complement T with self + T = within, direct sum.

        Works in the coordinates of within's echelon basis and picks the
        basis vectors of within whose indices are not pivot indices of
        self, smallest indices first.  With within omitted this is the
        whole space and the chosen vectors are standard coordinate
        vectors.
        """
        if within is None:
            within = Subspace.full(self.ambient_dim)
        if within.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if not within.contains(self):
            raise ValueError("subspace is not contained in the given space")
        if self.dim == 0:
            return within
        coords = Matrix(
            [within.coordinates_of(row) for row in self.basis.rows],
            ncols=within.dim,
        )
        _, pivots = rref(coords)
        pivot_set = set(pivots)
        chosen = [
            within.basis.rows[i] for i in range(within.dim) if i not in pivot_set
        ]
        return Subspace.from_vectors(self.ambient_dim, chosen)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


class Polynomial:
    """Dense polynomial over Q, coefficients from the constant term up.

    The zero polynomial has an empty coefficient tuple and degree -1;
    otherwise the leading coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        data = [to_q(c) for c in coeffs]
        while data and data[-1] == 0:
            data.pop()
        object.__setattr__(self, "coeffs", tuple(data))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((QONE,))

    @classmethod
    def variable(cls) -> "Polynomial":
        return cls((QZERO, QONE))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Q:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.leading()
        if lead == 1:
            return self
        return Polynomial(c / lead for c in self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Q)):
            c = to_q(other)
            return Polynomial(c * a for a in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        out = [QZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        div = other.coeffs
        dlen = len(div)
        qlen = max(0, len(rem) - dlen + 1)
        quot = [QZERO] * qlen
        inv_lead = QONE / div[-1]
        for i in range(qlen - 1, -1, -1):
            c = rem[i + dlen - 1] * inv_lead
            if c:
                quot[i] = c
                for j, d in enumerate(div):
                    rem[i + j] -= c * d
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def __call__(self, value):
        """Evaluate by Horner's rule at a rational or a square matrix."""
        if isinstance(value, Matrix):
            if not value.is_square():
                raise ValueError("polynomial evaluation needs a square matrix")
            result = Matrix.zeros(value.nrows, value.nrows)
            ident = Matrix.identity(value.nrows)
            for c in reversed(self.coeffs):
                result = result * value + ident.scale(c)
            return result
        x = to_q(value)
        result = QZERO
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*t^{i}" if i else f"{c}")
        return "Polynomial(" + " + ".join(terms) + ")"


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def extended_gcd(
    f: Polynomial, g: Polynomial
) -> tuple[Polynomial, Polynomial, Polynomial]:
    """(d, u, v) with u f + v g = d and d = gcd(f, g) monic."""
    r0, r1 = f, g
    u0, u1 = Polynomial.one(), Polynomial.zero()
    v0, v1 = Polynomial.zero(), Polynomial.one()
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero():
        return r0, u0, v0
    lead = r0.leading()
    inv = QONE / lead
    return r0.monic(), u0 * inv, v0 * inv


def squarefree_part(f: Polynomial) -> Polynomial:
    """f / gcd(f, f'), made monic.  Shares exactly the roots of f."""
    if f.is_zero():
        return f
    d = poly_gcd(f, f.derivative())
    if d.degree <= 0:
        return f.monic()
    return (f // d).monic()


def modular_inverse(a: Polynomial, modulus: Polynomial) -> Polynomial:
    """Inverse of a modulo the given polynomial, via the extended gcd."""
    if modulus.degree < 1:
        raise ValueError("modulus must have positive degree")
    d, u, _ = extended_gcd(a % modulus, modulus)
    if d.degree != 0:
        raise ValueError("polynomial is not invertible modulo the given modulus")
    return u % modulus


def compose_mod(
    outer: Polynomial, inner: Polynomial, modulus: Polynomial
) -> Polynomial:
    """outer(inner) reduced modulo the given polynomial, by Horner's rule."""
    result = Polynomial.zero()
    for c in reversed(outer.coeffs):
        result = (result * inner + Polynomial((c,))) % modulus
    return result


def minimal_polynomial(m: Matrix) -> Polynomial:
    """Monic least-degree polynomial annihilating m.

    Found by feeding the vectorized powers I, m, m^2, ... into an exact
    elimination that tracks, for each reduced row, its expression in
    terms of the original powers.  The first power that reduces to zero
    yields the (automatically monic) minimal relation.
    """
    if not m.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.nrows
    if n == 0:
        return Polynomial.one()
    reduced: list[tuple[list[Q], int, list[Q]]] = []
    power = Matrix.identity(n)
    degree = 0
    while True:
        v = list(power.flatten())
        combo = [QZERO] * (degree + 1)
        combo[degree] = QONE
        for row, lead, expr in reduced:
            c = v[lead]
            if c:
                for j, y in enumerate(row):
                    if y:
                        v[j] -= c * y
                for j, y in enumerate(expr):
                    if y:
                        combo[j] -= c * y
        lead_idx = next((j for j, x in enumerate(v) if x), None)
        if lead_idx is None:
            return Polynomial(combo)
        inv = QONE / v[lead_idx]
        if inv != 1:
            v = [x * inv for x in v]
            combo = [x * inv for x in combo]
        combo += [QZERO] * (degree + 1 - len(combo))
        reduced.append((v, lead_idx, combo))
        power = power * m
        degree += 1
        if degree > n:
            raise AssertionError("power independence exceeded the space dimension")
