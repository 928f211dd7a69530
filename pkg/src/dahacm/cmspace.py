"""Matrix model of the Calogero-Moser space CM_tau.

A point is a quadruple (X, Y, U, V) with X^{-1} Y^{-1} X Y tau - tau^{-1} = U (x) V.
The open chart uses X = diag(lambda) and diag(Y) = q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import format_rational, rat
from .linalg import QMatrix, block_diag, det, in_column_space, inverse, nullspace, rank, rational_roots, charpoly


class ChartError(ValueError):
    pass


class CMInvariantError(ValueError):
    pass


def _vec(xs) -> tuple[Fraction, ...]:
    return tuple(rat(x) for x in xs)


def outer(u: Sequence[Fraction], v: Sequence[Fraction]) -> QMatrix:
    return QMatrix.from_rows([[a * b for b in v] for a in u])


def cm_defect(tau, X: QMatrix, Y: QMatrix) -> QMatrix:
    """tau X Y - tau^{-1} Y X; rank one exactly on CM_tau."""
    tau = rat(tau)
    return (X * Y).scale(tau) - (Y * X).scale(1 / tau)


@dataclass(frozen=True)
class CMPoint:
    tau: Fraction
    X: QMatrix
    Y: QMatrix
    U: tuple[Fraction, ...]
    V: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "tau", rat(self.tau))
        object.__setattr__(self, "U", _vec(self.U))
        object.__setattr__(self, "V", _vec(self.V))

    @property
    def n(self) -> int:
        return self.X.nrows

    def equation_residual(self) -> QMatrix:
        """X^{-1} Y^{-1} X Y tau - tau^{-1} - U (x) V."""
        X, Y = self.X, self.Y
        lhs = (inverse(X) * inverse(Y) * X * Y).scale(self.tau).add_scalar(-1 / self.tau)
        return lhs - outer(self.U, self.V)

    def is_valid(self) -> bool:
        if det(self.X) == 0 or det(self.Y) == 0:
            return False
        return self.equation_residual().is_zero()

    def check(self) -> "CMPoint":
        if not self.is_valid():
            raise CMInvariantError("point violates X^-1 Y^-1 X Y tau - tau^-1 = U (x) V")
        return self

    def to_json(self) -> dict:
        from .daha import matrix_to_json
        return {
            "tau": format_rational(self.tau),
            "X": matrix_to_json(self.X),
            "Y": matrix_to_json(self.Y),
            "U": [format_rational(x) for x in self.U],
            "V": [format_rational(x) for x in self.V],
        }


@dataclass(frozen=True)
class CMCoords:
    lam: tuple[Fraction, ...]
    q: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", _vec(self.lam))
        object.__setattr__(self, "q", _vec(self.q))
        if len(self.lam) != len(self.q):
            raise ValueError("lambda and q must have the same length")

    @property
    def n(self) -> int:
        return len(self.lam)

    def check(self, tau) -> "CMCoords":
        check_chart(tau, self.lam)
        if any(x == 0 for x in self.q):
            raise ChartError("coordinates outside chart: zero q")
        return self

    def sorted(self) -> "CMCoords":
        pairs = sorted(zip(self.lam, self.q))
        return CMCoords(tuple(a for a, _ in pairs), tuple(b for _, b in pairs))

    def to_json(self) -> dict:
        return {"lambda": [format_rational(x) for x in self.lam], "q": [format_rational(x) for x in self.q]}


def check_chart(tau, lam: Sequence[Fraction]):
    tau = rat(tau)
    if any(x == 0 for x in lam):
        raise ChartError("coordinates outside chart: zero eigenvalue")
    if len(set(lam)) != len(lam):
        raise ChartError("coordinates outside chart: repeated eigenvalue")
    for i, a in enumerate(lam):
        for j, b in enumerate(lam):
            if i != j and tau * a == b / tau:
                raise ChartError("coordinates on divisor D_tau")


def chart_y(tau, lam, q) -> QMatrix:
    tau = rat(tau)
    gap = tau - 1 / tau
    n = len(lam)
    return QMatrix.from_rows([
        [q[i] if i == j else gap * q[i] * lam[j] / (tau * lam[i] - lam[j] / tau) for j in range(n)]
        for i in range(n)
    ])


def point_from_coords(tau, coords: CMCoords) -> CMPoint:
    tau = rat(tau)
    coords.check(tau)
    lam, q = coords.lam, coords.q
    X = QMatrix.diag(lam)
    Y = chart_y(tau, lam, q)
    if det(Y) == 0:
        raise AssertionError("chart matrix Y is singular")
    # U = (tau - tau^{-1}) X^{-1} Y^{-1} q,  V = lambda
    U = [(tau - 1 / tau) * x for x in inverse(Y * X).apply(q)]
    return CMPoint(tau, X, Y, U, lam).check()


def rank_one_factor(m: QMatrix) -> tuple[list[Fraction], list[Fraction]]:
    """(a, b) with m = a (x) b; m must have rank exactly one."""
    if rank(m) != 1:
        raise CMInvariantError(f"matrix has rank {rank(m)}, expected 1")
    rows = m.to_lists()
    r = next(i for i, row in enumerate(rows) if any(row))
    b = rows[r]
    c = next(j for j, x in enumerate(b) if x)
    a = [row[c] / b[c] for row in rows]
    return a, b


def point_from_pair(tau, X: QMatrix, Y: QMatrix) -> CMPoint:
    """Complete (X, Y) with rank(tau XY - tau^-1 YX) = 1 to a point (X, Y, U, V)."""
    tau = rat(tau)
    a, b = rank_one_factor(cm_defect(tau, X, Y))
    U = inverse(Y * X).apply(a)
    return CMPoint(tau, X, Y, U, b).check()


def gl_act(p: CMPoint, g: QMatrix) -> CMPoint:
    """g . (X, Y, U, V) = (g X g^-1, g Y g^-1, g U, V g^-1)."""
    gi = inverse(g)
    V = gi.transpose().apply(p.V)
    return CMPoint(p.tau, g * p.X * gi, g * p.Y * gi, g.apply(p.U), V)


def canonicalize(p: CMPoint) -> CMCoords:
    n = p.n
    lam, splits = rational_roots(charpoly(p.X))
    if not splits or len(set(lam)) != n:
        raise ChartError("outside chart: spectrum of X is not split and simple over Q")
    cols = []
    for x in lam:
        kernel = nullspace(p.X.add_scalar(-x))
        cols.append(kernel[0])
    W = QMatrix.from_columns(cols)
    D = inverse(W) * p.Y * W
    q = D.diagonal()
    check_chart(p.tau, lam)
    return CMCoords(tuple(lam), tuple(q)).sorted()


def epsilon_cm(p: CMPoint) -> CMPoint:
    """(X, Y, U, V) -> (Y, X, -Y^-1 X^-1 Y X U, V), a point for tau^{-1}."""
    X, Y = p.X, p.Y
    A = inverse(Y) * inverse(X) * Y * X
    U = [-x for x in A.apply(p.U)]
    return CMPoint(1 / p.tau, Y, X, U, p.V).check()


def free_action_dimension(p: CMPoint) -> int:
    """dim {R : [R, X] = [R, Y] = 0}."""
    rows = commutator_system(p.X) + commutator_system(p.Y)
    return len(nullspace(rows))


def commutator_system(A: QMatrix) -> list[list[Fraction]]:
    """Rows of the linear map R -> R A - A R on row-major vec(R)."""
    return sylvester_rows(A, Fraction(-1), Fraction(-1))


def sylvester_rows(J: QMatrix, alpha, beta) -> list[list[Fraction]]:
    """Matrix of F -> alpha J F - beta F J on row-major vec(F)."""
    n = J.nrows
    Jl = J.to_lists()
    rows = []
    for a in range(n):
        for b in range(n):
            row = [Fraction(0)] * (n * n)
            for c in range(n):
                if Jl[a][c]:
                    row[c * n + b] += alpha * Jl[a][c]
                if Jl[c][b]:
                    row[a * n + c] -= beta * Jl[c][b]
            rows.append(row)
    return rows


# --- Jordan strata -------------------------------------------------------------

@dataclass(frozen=True)
class JordanEntry:
    eigenvalue: Fraction
    strings: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "eigenvalue", rat(self.eigenvalue))
        strings = tuple(tuple(int(k) for k in part) for part in self.strings)
        object.__setattr__(self, "strings", strings)
        for part in strings:
            if any(k <= 0 for k in part) or list(part) != sorted(part, reverse=True):
                raise ValueError(f"not a partition: {part}")

    @property
    def size(self) -> int:
        return sum(sum(part) for part in self.strings)


@dataclass(frozen=True)
class JordanData:
    entries: tuple[JordanEntry, ...]

    @property
    def size(self) -> int:
        return sum(e.size for e in self.entries)

    def separated(self, tau) -> bool:
        """lambda_i / lambda_j != tau^{2c} for |c| <= n across distinct entries."""
        tau = rat(tau)
        n = self.size
        for a in self.entries:
            for b in self.entries:
                if a is b:
                    continue
                ratio = a.eigenvalue / b.eigenvalue
                if any(ratio == tau ** (2 * c) for c in range(-n, n + 1)):
                    return False
        return True

    def to_json(self) -> list:
        return [{"eigenvalue": format_rational(e.eigenvalue), "strings": [list(p) for p in e.strings]}
                for e in self.entries]


def jordan_block(k: int, lam) -> QMatrix:
    lam = rat(lam)
    return QMatrix.from_entries(k, k, {**{(i, i): lam for i in range(k)}, **{(i, i + 1): 1 for i in range(k - 1)}})


def jordan_matrix(data: JordanData, tau, n: int | None = None) -> QMatrix:
    tau = rat(tau)
    if n is not None and data.size != n:
        raise ValueError(f"size mismatch: data has size {data.size}, expected {n}")
    blocks = []
    for entry in data.entries:
        for s, part in enumerate(entry.strings):
            for k in part:
                blocks.append(jordan_block(k, entry.eigenvalue * tau ** (2 * s)))
    return block_diag(blocks)


def s_j_matrix(J: QMatrix, tau) -> QMatrix:
    tau = rat(tau)
    return QMatrix.from_rows(sylvester_rows(J, tau, 1 / tau))


def ker_dim_bruteforce(J: QMatrix, tau) -> int:
    n = J.nrows
    return n * n - rank(s_j_matrix(J, tau))


def _cross(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(min(x, y) for x in a for y in b)


def ker_dim_formula(data: JordanData) -> int:
    return sum(_cross(e.strings[s], e.strings[s + 1]) for e in data.entries for s in range(len(e.strings) - 1))


def stab_dim_formula(partition: Sequence[int]) -> int:
    return _cross(partition, partition)


def commutant_dim_bruteforce(J: QMatrix) -> int:
    return len(nullspace(commutator_system(J)))


def ineq_check(entry: JordanEntry) -> tuple[int, bool]:
    strings = entry.strings
    if not any(strings):
        raise ValueError("needs at least one nonempty string")
    lhs = sum(_cross(p, p) for p in strings) - sum(_cross(strings[s], strings[s + 1])
                                                   for s in range(len(strings) - 1))
    return lhs, lhs > 0


def vec(Z: QMatrix) -> list[Fraction]:
    return [x for row in Z.to_lists() for x in row]


def im_membership(Z: QMatrix, J: QMatrix, tau) -> bool:
    return in_column_space(s_j_matrix(J, tau), vec(Z))


def im_conditions(Z: QMatrix, entry: JordanEntry, tau, tau_sign: int = -1) -> bool:
    """Closed-form image test for a single eigenvalue.

    For each pair of blocks (i in string s, j in string s+1) with sizes
    (a, b), the diagonal sums sum_l Z[a-l, u-l] tau^{-2l}, u = 1..min(a, b),
    must vanish (block-local 1-based indices). `tau_sign=+1` gives the
    tau^{+2l} weighting, kept for comparison; it is wrong once min(a, b) > 1.
    """
    tau = rat(tau)
    offsets = []
    pos = 0
    for part in entry.strings:
        row = []
        for k in part:
            row.append((pos, k))
            pos += k
        offsets.append(row)
    for s in range(len(entry.strings) - 1):
        for (r0, a) in offsets[s]:
            for (c0, b) in offsets[s + 1]:
                for u in range(1, min(a, b) + 1):
                    total = sum((Z[r0 + a - l - 1, c0 + u - l - 1] * tau ** (tau_sign * 2 * l) for l in range(u)),
                                Fraction(0))
                    if total != 0:
                        return False
    return True


def cauchy_det(a: Sequence, b: Sequence) -> Fraction:
    """det (1/(a_i - b_j)) in closed form."""
    a, b = _vec(a), _vec(b)
    if len(a) != len(b):
        raise ValueError("length mismatch")
    num = Fraction(1)
    den = Fraction(1)
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i] == b[j]:
                raise ChartError(f"pole: a_{i + 1} = b_{j + 1}")
            den *= a[i] - b[j]
    for i in range(n):
        for j in range(i + 1, n):
            num *= (a[i] - a[j]) * (b[j] - b[i])
    return num / den


def cauchy_matrix(a: Sequence, b: Sequence) -> QMatrix:
    return QMatrix.from_rows([[1 / (rat(x) - rat(y)) for y in b] for x in a])


def partitions(k: int, largest: int | None = None):
    """Partitions of k as weakly decreasing tuples."""
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


def compositions(k: int):
    """Ordered tuples of positive integers summing to k."""
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in compositions(k - first):
            yield (first,) + rest


def string_data(k: int):
    """All tuples of nonempty partitions (tau^2-strings) of total size k."""
    for comp in compositions(k):
        yield from _strings_for(comp)


def _strings_for(comp):
    if not comp:
        yield ()
        return
    for p in partitions(comp[0]):
        for rest in _strings_for(comp[1:]):
            yield (p,) + rest


def jordan_shapes(k: int):
    """All multisets of single-eigenvalue string data with total size k.

    Each shape is a sorted tuple of string data; assign separated eigenvalues
    to get a JordanData.
    """
    seen = set()
    for sizes in partitions(k):
        for choice in _shape_choices(sizes):
            key = tuple(sorted(choice))
            if key not in seen:
                seen.add(key)
                yield key


def _shape_choices(sizes):
    if not sizes:
        yield ()
        return
    for datum in string_data(sizes[0]):
        for rest in _shape_choices(sizes[1:]):
            yield (datum,) + rest


def phi_point(tau, Xbar: QMatrix, Ybar: QMatrix) -> CMPoint:
    """The CM point of the restricted pair (Xbar, Ybar) of a tau-module.

    The restricted pair satisfies rank(tau Ybar Xbar - tau^{-1} Xbar Ybar) = 1,
    i.e. it lies in CM_{tau^{-1}}.
    """
    return point_from_pair(1 / rat(tau), Xbar, Ybar)
