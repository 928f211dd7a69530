"""Exact matrices over the rationals.

A :class:`QMatrix` stores sparse integer rows plus one common positive
denominator, kept in lowest terms. Products and sums therefore run on Python
ints; equality is structural because the representation is canonical.
Rank and determinant use fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .exact import ExactDivisionError, rat

Row = dict  # column index -> nonzero int


def _normalize(rows: list[Row], den: int) -> tuple[tuple[Row, ...], int]:
    if den < 0:
        rows = [{j: -v for j, v in r.items()} for r in rows]
        den = -den
    g = den
    for r in rows:
        for v in r.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g == 1:
            break
    if g > 1:
        rows = [{j: v // g for j, v in r.items()} for r in rows]
        den //= g
    return tuple(rows), den


class QMatrix:
    __slots__ = ("rows", "den", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Row], den: int, nrows: int, ncols: int, *, _canonical=False):
        rows = [r for r in rows]
        if den == 0:
            raise ExactDivisionError("matrix with zero common denominator")
        if not _canonical:
            rows = [{j: v for j, v in r.items() if v} for r in rows]
            rows, den = _normalize(rows, den)
        self.rows = tuple(rows)
        self.den = den
        self.nrows = nrows
        self.ncols = ncols
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "QMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        fr = [[rat(x) for x in row] for row in data]
        if any(len(r) != ncols for r in fr):
            raise ValueError("ragged matrix")
        den = 1
        for r in fr:
            for x in r:
                den = lcm(den, x.denominator)
        rows = [{j: x.numerator * (den // x.denominator) for j, x in enumerate(r) if x} for r in fr]
        return cls(rows, den, nrows, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "QMatrix":
        ncols = nrows if ncols is None else ncols
        return cls([{} for _ in range(nrows)], 1, nrows, ncols, _canonical=True)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([{i: 1} for i in range(n)], 1, n, n, _canonical=True)

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        vals = [rat(v) for v in values]
        den = 1
        for v in vals:
            den = lcm(den, v.denominator)
        rows = [{i: v.numerator * (den // v.denominator)} if v else {} for i, v in enumerate(vals)]
        return cls(rows, den, len(vals), len(vals))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "QMatrix":
        return cls.from_rows([list(r) for r in zip(*cols)]) if cols else cls.zeros(0, 0)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: dict) -> "QMatrix":
        """Build from a {(row, col): value} mapping."""
        den = 1
        vals = {k: rat(v) for k, v in entries.items()}
        for v in vals.values():
            den = lcm(den, v.denominator)
        rows = [dict() for _ in range(nrows)]
        for (i, j), v in vals.items():
            if v:
                rows[i][j] = v.numerator * (den // v.denominator)
        return cls(rows, den, nrows, ncols)

    # access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self.rows[i].get(j, 0), self.den)

    def to_lists(self) -> list[list[Fraction]]:
        return [[Fraction(r.get(j, 0), self.den) for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> list[Fraction]:
        return [Fraction(r.get(j, 0), self.den) for r in self.rows]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def is_diagonal(self) -> bool:
        return all(all(j == i for j in r) for i, r in enumerate(self.rows))

    def diagonal(self) -> list[Fraction]:
        return [Fraction(r.get(i, 0), self.den) for i, r in enumerate(self.rows)]

    def trace(self) -> Fraction:
        return sum(self.diagonal(), Fraction(0))

    def first_difference(self, other: "QMatrix"):
        """(row, col, self_entry, other_entry) of the first mismatch, or None."""
        for i in range(self.nrows):
            a, b = self.rows[i], other.rows[i]
            for j in sorted(set(a) | set(b)):
                x = Fraction(a.get(j, 0), self.den)
                y = Fraction(b.get(j, 0), other.den)
                if x != y:
                    return i, j, x, y
        return None

    # arithmetic -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self.den == other.den and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.den, tuple(tuple(sorted(r.items())) for r in self.rows)))
        return self._hash

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same_shape(other)
        den = lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        rows = []
        for ra, rb in zip(self.rows, other.rows):
            r = {j: v * fa for j, v in ra.items()}
            for j, v in rb.items():
                r[j] = r.get(j, 0) + v * fb
            rows.append(r)
        return QMatrix(rows, den, self.nrows, self.ncols)

    def __neg__(self) -> "QMatrix":
        return QMatrix([{j: -v for j, v in r.items()} for r in self.rows], self.den,
                       self.nrows, self.ncols, _canonical=True)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def scale(self, c) -> "QMatrix":
        c = rat(c)
        if c == 0:
            return QMatrix.zeros(self.nrows, self.ncols)
        p, q = c.numerator, c.denominator
        return QMatrix([{j: v * p for j, v in r.items()} for r in self.rows], self.den * q,
                       self.nrows, self.ncols)

    def __mul__(self, other):
        if not isinstance(other, QMatrix):
            return self.scale(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        brows = other.rows
        rows = []
        for ra in self.rows:
            acc: dict = {}
            for k, a in ra.items():
                for j, b in brows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            rows.append(acc)
        return QMatrix(rows, self.den * other.den, self.nrows, other.ncols)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        return self * other

    def add_scalar(self, c) -> "QMatrix":
        """self + c * I."""
        return self + QMatrix.identity(self.nrows).scale(c)

    def transpose(self) -> "QMatrix":
        rows = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return QMatrix(rows, self.den, self.ncols, self.nrows, _canonical=True)

    def apply(self, vec: Sequence) -> list[Fraction]:
        v = [rat(x) for x in vec]
        out = []
        for r in self.rows:
            s = Fraction(0)
            for j, a in r.items():
                if v[j]:
                    s += a * v[j]
            out.append(s / self.den)
        return out

    def power(self, k: int) -> "QMatrix":
        if k < 0:
            return inverse(self).power(-k)
        out = QMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def commutator(self, other: "QMatrix") -> "QMatrix":
        return self * other - other * self

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "QMatrix":
        rows = [{j - c0: v for j, v in self.rows[i].items() if c0 <= j < c1} for i in range(r0, r1)]
        return QMatrix(rows, self.den, r1 - r0, c1 - c0)

    def integer_rows(self) -> list[list[int]]:
        """Dense integer rows of den * self."""
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.to_lists())
        return f"QMatrix([{body}])"


def product(mats: Iterable[QMatrix], n: int) -> QMatrix:
    out = QMatrix.identity(n)
    for m in mats:
        out = out * m
    return out


def block_diag(blocks: Sequence[QMatrix]) -> QMatrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    entries = {}
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.to_lists()):
            for j, x in enumerate(row):
                if x:
                    entries[(r0 + i, c0 + j)] = x
        r0 += b.nrows
        c0 += b.ncols
    return QMatrix.from_entries(n, m, entries)


def vstack(mats: Sequence[QMatrix]) -> QMatrix:
    ncols = mats[0].ncols
    den = 1
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("column mismatch in vstack")
        den = lcm(den, m.den)
    rows = []
    for m in mats:
        f = den // m.den
        rows.extend({j: v * f for j, v in r.items()} for r in m.rows)
    return QMatrix(rows, den, len(rows), ncols)


# --- elimination ------------------------------------------------------------

def _integer_dense(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row of a rational matrix to integers (row scaling keeps rank)."""
    out = []
    for row in rows:
        fr = [rat(x) for x in row]
        d = 1
        for x in fr:
            d = lcm(d, x.denominator)
        out.append([x.numerator * (d // x.denominator) for x in fr])
    return out


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """In-place fraction-free elimination; returns (rank, last pivot up to sign)."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rank = 0
    prev = 1
    sign = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        for r in range(rank, nrows):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            a[rank], a[piv] = a[piv], a[rank]
            sign = -sign
        p = a[rank][col]
        prow = a[rank]
        for r in range(rank + 1, nrows):
            row = a[r]
            f = row[col]
            if f == 0:
                for c in range(col + 1, ncols):
                    if row[c]:
                        row[c] = (row[c] * p) // prev
            else:
                for c in range(col + 1, ncols):
                    row[c] = (row[c] * p - f * prow[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank, sign * prev


def rank(m) -> int:
    rows = m.integer_rows() if isinstance(m, QMatrix) else _integer_dense(m)
    if not rows or not rows[0]:
        return 0
    r, _ = _bareiss([list(x) for x in rows])
    return r


def det(m) -> Fraction:
    if isinstance(m, QMatrix):
        rows, den, n = m.integer_rows(), m.den, m.nrows
    else:
        rows, den, n = None, 1, len(m)
    if rows is None:
        fr = [[rat(x) for x in row] for row in m]
        den = 1
        for row in fr:
            for x in row:
                den = lcm(den, x.denominator)
        rows = [[x.numerator * (den // x.denominator) for x in row] for row in fr]
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    r, d = _bareiss([list(x) for x in rows])
    if r < n:
        return Fraction(0)
    return Fraction(d, den ** n)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[rat(x) for x in row] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(nrows):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(col)
        r += 1
    return a[:r], pivots


def nullspace(m) -> list[list[Fraction]]:
    """Basis of {v : m v = 0}, one vector per free column."""
    rows = m.to_lists() if isinstance(m, QMatrix) else [[rat(x) for x in r] for r in m]
    ncols = m.ncols if isinstance(m, QMatrix) else (len(rows[0]) if rows else 0)
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(m: QMatrix) -> QMatrix:
    n = m.nrows
    if m.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.to_lists())]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ExactDivisionError("matrix is singular")
    return QMatrix.from_rows([row[n:] for row in red[:n]])


def solve(m: QMatrix, b: Sequence) -> list[Fraction]:
    """Unique solution of m x = b (m square, invertible)."""
    n = m.nrows
    aug = [row + [rat(bi)] for row, bi in zip(m.to_lists(), b)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ExactDivisionError("singular system")
    return [row[n] for row in red]


def in_column_space(m: QMatrix, v: Sequence) -> bool:
    aug = [row + [rat(x)] for row, x in zip(m.to_lists(), v)]
    return rank(aug) == rank(m)


def charpoly(m: QMatrix) -> list[Fraction]:
    """Monic characteristic polynomial det(xI - m), coefficients highest degree first.

    Faddeev-LeVerrier recursion; exact over Q.
    """
    n = m.nrows
    coeffs = [Fraction(1)]
    mk = QMatrix.zeros(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        mk = m * mk.add_scalar(c)
        c = -mk.trace() / k
        coeffs.append(c)
    return coeffs


def poly_from_roots(roots: Sequence) -> list[Fraction]:
    coeffs = [Fraction(1)]
    for r in roots:
        r = rat(r)
        coeffs = [a - r * b for a, b in zip(coeffs + [Fraction(0)], [Fraction(0)] + coeffs)]
    return coeffs


def rational_roots(coeffs: Sequence) -> tuple[list[Fraction], bool]:
    """Rational roots with multiplicity of a polynomial (highest degree first).

    Returns (sorted roots, splits) where splits says whether the rational
    roots account for the full degree.
    """
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in map(rat, coeffs)], x,
                      domain="QQ")
    found = []
    for factor, mult in poly.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            root = -sympy.Rational(b) / sympy.Rational(a)
            found.extend([Fraction(int(root.p), int(root.q))] * mult)
    found.sort()
    return found, len(found) == poly.degree()


def eigenvalues(m: QMatrix) -> tuple[list[Fraction], bool]:
    return rational_roots(charpoly(m))
