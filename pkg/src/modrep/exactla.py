"""Exact linear algebra over the rationals.

Scalars are ``gmpy2.mpq``; they are always reduced and carry a positive
denominator, so equality is plain exact equality.  Matrices are immutable
and row-major.  Elimination is done on sparse rows since most matrices that
show up here (transvections, block suspensions, Fox-calculus systems) are
mostly zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


class NotInvertible(ArithmeticError):
    pass


class ShapeMismatch(ValueError):
    pass


def Q(x) -> mpq:
    """Coerce ints, strings ``"p/q"``, Fractions and mpqs to ``mpq``."""
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return mpq(x)


def scalar_to_str(x) -> str:
    return str(Q(x))


class RationalMatrix:
    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(Q(x) for x in r) for r in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeMismatch("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> "RationalMatrix":
        m = object.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m._data = rows
        m._hash = None
        return m

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls._raw(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def scalar(cls, n: int, c) -> "RationalMatrix":
        c = Q(c)
        return cls._raw(
            tuple(tuple(c if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def diagonal(cls, entries: Sequence) -> "RationalMatrix":
        n = len(entries)
        d = [Q(x) for x in entries]
        return cls._raw(
            tuple(tuple(d[i] if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def column(cls, entries: Sequence) -> "RationalMatrix":
        return cls._raw(tuple((Q(x),) for x in entries), 1)

    @classmethod
    def row(cls, entries: Sequence) -> "RationalMatrix":
        return cls._raw((tuple(Q(x) for x in entries),), len(entries))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "RationalMatrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls._raw(
            tuple(tuple(Q(c[i]) for c in columns) for i in range(n)), len(columns)
        )

    @classmethod
    def block(cls, blocks: Sequence[Sequence["RationalMatrix"]]) -> "RationalMatrix":
        out = []
        cols = None
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise ShapeMismatch("block row heights differ")
            width = sum(b.cols for b in brow)
            if cols is None:
                cols = width
            elif width != cols:
                raise ShapeMismatch("block row widths differ")
            for i in range(h):
                r = []
                for b in brow:
                    r.extend(b._data[i])
                out.append(tuple(r))
        return cls._raw(tuple(out), cols or 0)

    @classmethod
    def block_diagonal(cls, *blocks: "RationalMatrix") -> "RationalMatrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = []
        off = 0
        for b in blocks:
            for r in b._data:
                out.append((ZERO,) * off + r + (ZERO,) * (m - off - b.cols))
            off += b.cols
        assert len(out) == n
        return cls._raw(tuple(out), m)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row_tuple(self, i: int) -> tuple:
        return self._data[i]

    def col_tuple(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[mpq]]:
        return [list(r) for r in self._data]

    def entries(self) -> list[mpq]:
        return [x for r in self._data for x in r]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix._raw(
            tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(cols)
        )

    def slice(self, r0: int, r1: int, c0: int, c1: int) -> "RationalMatrix":
        return RationalMatrix._raw(tuple(r[c0:c1] for r in self._data[r0:r1]), c1 - c0)

    def with_entry(self, i: int, j: int, value) -> "RationalMatrix":
        rows = list(self._data)
        r = list(rows[i])
        r[j] = Q(value)
        rows[i] = tuple(r)
        return RationalMatrix._raw(tuple(rows), self.cols)

    # arithmetic ---------------------------------------------------------

    def _check_same(self, other: "RationalMatrix"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._check_same(other)
        return RationalMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def scale(self, c) -> "RationalMatrix":
        c = Q(c)
        return RationalMatrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.cols)

    def __mul__(self, c) -> "RationalMatrix":
        if isinstance(c, RationalMatrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        m = other.cols
        brows = [[(j, b) for j, b in enumerate(r) if b] for r in other._data]
        out = []
        for r in self._data:
            acc = [ZERO] * m
            for k, a in enumerate(r):
                if a:
                    for j, b in brows[k]:
                        acc[j] += a * b
            out.append(tuple(acc))
        return RationalMatrix._raw(tuple(out), m)

    @property
    def T(self) -> "RationalMatrix":
        if not self.rows:
            return RationalMatrix.zeros(self.cols, 0)
        return RationalMatrix._raw(tuple(zip(*self._data)), self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def is_identity(self) -> bool:
        return self.is_square() and all(
            x == (ONE if i == j else ZERO) for i, r in enumerate(self._data) for j, x in enumerate(r)
        )

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    # derived quantities ---------------------------------------------------

    def rank(self) -> int:
        return len(rref_rows(_sparse_rows(self), self.cols)[1])

    def det(self) -> mpq:
        if not self.is_square():
            raise ShapeMismatch("determinant of a non-square matrix")
        a = self.tolist()
        n = self.rows
        d = ONE
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return ZERO
            if p != c:
                a[c], a[p] = a[p], a[c]
                d = -d
            piv = a[c][c]
            d *= piv
            inv = 1 / piv
            for r in range(c + 1, n):
                f = a[r][c]
                if f:
                    f *= inv
                    ar, ac = a[r], a[c]
                    for j in range(c, n):
                        if ac[j]:
                            ar[j] -= f * ac[j]
        return d

    def inverse(self) -> "RationalMatrix":
        if not self.is_square():
            raise NotInvertible("non-square matrix")
        n = self.rows
        aug = RationalMatrix.block([[self, RationalMatrix.identity(n)]])
        rows, pivots = rref_rows(_sparse_rows(aug), 2 * n)
        if len(pivots) < n or pivots[n - 1] >= n:
            raise NotInvertible("singular matrix")
        out = []
        for i in range(n):
            r = rows[i]
            out.append(tuple(r.get(n + j, ZERO) for j in range(n)))
        return RationalMatrix._raw(tuple(out), n)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self._data]

    @classmethod
    def from_json(cls, rows: Sequence[Sequence[str]]) -> "RationalMatrix":
        return cls(rows)


def hstack(*ms: RationalMatrix) -> RationalMatrix:
    return RationalMatrix.block([list(ms)])


def vstack(*ms: RationalMatrix) -> RationalMatrix:
    return RationalMatrix.block([[m] for m in ms])


# ---------------------------------------------------------------------------
# sparse row reduction


def _sparse_rows(m: RationalMatrix) -> list[dict]:
    return [{j: x for j, x in enumerate(r) if x} for r in m._data]


def rref_rows(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows (dict col -> value).

    Returns the nonzero reduced rows in pivot order together with the pivot
    columns.  The input list is consumed.
    """
    rows = [r for r in rows if r]
    pivots: list[int] = []
    done: list[dict] = []
    for c in range(ncols):
        best = None
        for idx, r in enumerate(rows):
            if c in r and (best is None or len(r) < len(rows[best])):
                best = idx
        if best is None:
            continue
        prow = rows.pop(best)
        inv = 1 / prow[c]
        if inv != 1:
            prow = {j: x * inv for j, x in prow.items()}
        for target in (rows, done):
            for i, r in enumerate(target):
                f = r.get(c)
                if f:
                    for j, x in prow.items():
                        v = r.get(j, ZERO) - f * x
                        if v:
                            r[j] = v
                        else:
                            r.pop(j, None)
        rows = [r for r in rows if r]
        done.append(prow)
        pivots.append(c)
        if not rows:
            break
    return done, pivots


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    rows, pivots = rref_rows(_sparse_rows(m), m.cols)
    dense = tuple(tuple(r.get(j, ZERO) for j in range(m.cols)) for r in rows)
    return RationalMatrix._raw(dense, m.cols), pivots


def sparse_kernel(rows: list[dict], ncols: int) -> list[list[mpq]]:
    """Null space basis of a system given as sparse rows (dict col -> value)."""
    red, pivots = rref_rows(rows, ncols)
    pivset = set(pivots)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in zip(red, pivots):
            x = r.get(f)
            if x:
                v[p] = -x
        vecs.append(v)
    return vecs


def _kernel_vectors(m: RationalMatrix) -> list[list[mpq]]:
    return sparse_kernel(_sparse_rows(m), m.cols)


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A linear subspace of Q^n, canonically stored in reduced column echelon form."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [tuple(Q(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ShapeMismatch("vector length does not match ambient dimension")
        if vecs:
            red, _ = rref(RationalMatrix._raw(tuple(vecs), ambient_dim))
            self.basis = red.T
        else:
            self.basis = RationalMatrix.zeros(ambient_dim, 0)
        self.ambient_dim = ambient_dim

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [[ONE if i == j else ZERO for i in range(n)] for j in range(n)])

    @classmethod
    def column_space(cls, m: RationalMatrix) -> "Subspace":
        return cls(m.rows, [m.col_tuple(j) for j in range(m.cols)])

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[tuple]:
        return [self.basis.col_tuple(j) for j in range(self.dim)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"

    def contains(self, v: Sequence) -> bool:
        return (self + Subspace(self.ambient_dim, [v])).dim == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return (self + other).dim == other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # solve A x = B y
        a, b = self.basis, other.basis
        k = kernel(hstack(a, -b))
        vecs = [a @ RationalMatrix.column(v[: a.cols]) for v in k.vectors()]
        return Subspace(self.ambient_dim, [x.col_tuple(0) for x in vecs])

    def image(self, m: RationalMatrix) -> "Subspace":
        return Subspace.column_space(m @ self.basis) if self.dim else Subspace.zero(m.rows)

    def is_invariant(self, m: RationalMatrix) -> bool:
        return self.image(m) <= self

    def complement_basis(self) -> list[tuple]:
        """Standard basis vectors completing this subspace to the whole space."""
        _, pivots = rref(self.basis.T) if self.dim else (None, [])
        pivset = set(pivots)
        n = self.ambient_dim
        return [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n) if j not in pivset]


# ---------------------------------------------------------------------------
# operations


def kernel(m: RationalMatrix) -> Subspace:
    return Subspace(m.cols, _kernel_vectors(m))


def solve(m: RationalMatrix, target: RationalMatrix) -> RationalMatrix | None:
    """Some x with m @ x == target, or None when the system is inconsistent."""
    if m.rows != target.rows:
        raise ShapeMismatch("row counts differ")
    n = m.cols
    aug = hstack(m, target)
    rows, pivots = rref_rows(_sparse_rows(aug), n + target.cols)
    if any(p >= n for p in pivots):
        return None
    out = [[ZERO] * target.cols for _ in range(n)]
    for r, p in zip(rows, pivots):
        for j in range(target.cols):
            out[p][j] = r.get(n + j, ZERO)
    return RationalMatrix(out, target.cols)


def matrix_power(m: RationalMatrix, e: int) -> RationalMatrix:
    if not m.is_square():
        raise ShapeMismatch("power of a non-square matrix")
    if e < 0:
        m = m.inverse()
        e = -e
    result = RationalMatrix.identity(m.rows)
    base = m
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def is_unipotent(m: RationalMatrix) -> bool:
    n = m.rows
    return matrix_power(m - RationalMatrix.identity(n), n).is_zero()


def generalized_eigenspace(m: RationalMatrix, lam, k: int) -> Subspace:
    if k < 1:
        raise ValueError("k must be at least 1")
    shifted = m - RationalMatrix.scalar(m.rows, lam)
    return kernel(matrix_power(shifted, k))


def jordan_filtration_dims(m: RationalMatrix, lam) -> tuple[int, ...]:
    """Graded dimensions dim E_k/E_{k-1} of the generalized eigenspace filtration."""
    n = m.rows
    shifted = m - RationalMatrix.scalar(n, lam)
    dims = []
    prev = 0
    power = RationalMatrix.identity(n)
    while True:
        power = power @ shifted
        d = n - power.rank()
        if d == prev:
            break
        dims.append(d - prev)
        prev = d
    for a, b in zip(dims, dims[1:]):
        if a < b:
            raise AssertionError(f"graded dimensions increase: {dims}")
    return tuple(dims)


def charpoly(m: RationalMatrix) -> list[mpq]:
    """Coefficients c_0..c_n of det(tI - m), lowest degree first (Faddeev-LeVerrier)."""
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    mk = RationalMatrix.zeros(n, n)
    ident = RationalMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ (mk + ident.scale(coeffs[n - k + 1]))
        tr = sum((mk[i, i] for i in range(n)), ZERO)
        coeffs[n - k] = -tr / k
    return coeffs


def rational_eigenvalues(m: RationalMatrix) -> list[mpq]:
    """Distinct rational roots of the characteristic polynomial, sorted."""
    from math import lcm

    from sympy import divisors

    coeffs = charpoly(m)
    den = lcm(*(int(c.denominator) for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(ZERO)
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)
    lead, const = abs(ints[-1]), abs(ints[0])
    for p in divisors(const):
        for q in divisors(lead):
            for s in (1, -1):
                r = mpq(s * p, q)
                if sum(c * r**i for i, c in enumerate(ints)) == 0:
                    roots.add(r)
    return sorted(roots)
