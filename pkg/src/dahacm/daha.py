"""The n!-dimensional modules V_{mu,nu} of the q=1 double affine Hecke algebra of GL(n).

Basis vectors are w (x) 1 for w in S_n, ordered as :func:`enumerate_sn`.
A permutation u acts by w -> u w; a Laurent function F(P, X) acts diagonally
on w (x) 1 by F evaluated at (mu o w^{-1}, nu o w^{-1}), i.e. X_j acts by
nu_{w^{-1}(j)} and P_j by mu_{w^{-1}(j)}. This is the evaluation rule under
which pi X_i pi^{-1} = X_{i+1} holds and X_1 is diagonal on the invariant basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

from .exact import format_rational, rat
from .linalg import QMatrix, charpoly, nullspace, poly_from_roots, product, rank, rational_roots, vstack
from .symgroup import (
    MAX_N,
    Permutation,
    coxeter_length,
    enumerate_sn,
    reduced_word,
)


class GenericityError(ValueError):
    pass


class InvariantSpaceError(RuntimeError):
    pass


class RestrictionError(RuntimeError):
    pass


class SpectrumError(AssertionError):
    pass


@dataclass(frozen=True)
class DahaParams:
    n: int
    tau: Fraction
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tau", rat(self.tau))
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_N:
            raise ValueError(f"n out of range: {self.n!r}")
        if self.tau == 0:
            raise GenericityError("tau must be nonzero")
        if self.strict and self.tau in (1, -1):
            raise GenericityError("tau = +-1 is a root of unity")

    @property
    def hecke_gap(self) -> Fraction:
        """tau - tau^{-1}."""
        return self.tau - 1 / self.tau


@dataclass(frozen=True)
class Character:
    mu: tuple[Fraction, ...]
    nu: tuple[Fraction, ...]
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        mu = tuple(rat(x) for x in self.mu)
        nu = tuple(rat(x) for x in self.nu)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)
        if len(mu) != len(nu):
            raise ValueError("mu and nu must have the same length")
        if any(x == 0 for x in mu + nu):
            raise GenericityError("character values must be nonzero")
        if self.strict and len(set(nu)) != len(nu):
            raise GenericityError("nu must have distinct entries")

    @property
    def n(self) -> int:
        return len(self.nu)

    def strongly_generic(self, tau) -> bool:
        tau = rat(tau)
        return all(tau * a != b / tau for i, a in enumerate(self.nu) for j, b in enumerate(self.nu) if i != j)


@dataclass(frozen=True)
class RepBundle:
    params: DahaParams
    character: Character
    basis: tuple[Permutation, ...]
    matX: tuple[QMatrix, ...]
    matXinv: tuple[QMatrix, ...]
    matT: tuple[QMatrix, ...]
    matTinv: tuple[QMatrix, ...]
    matPi: QMatrix
    matPiinv: QMatrix
    matY: tuple[QMatrix, ...]
    matYinv: tuple[QMatrix, ...]

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def tau(self) -> Fraction:
        return self.params.tau

    def identity(self) -> QMatrix:
        return QMatrix.identity(self.dim)

    def generator(self, name: str) -> QMatrix:
        """Look up "X1", "Y2^-1", "T1", "pi", "pi^-1" style names (1-based)."""
        m = re.fullmatch(r"(X|Y|T|pi)(\d*)(\^-1)?", name.strip())
        if not m:
            raise ValueError(f"unknown generator {name!r}")
        kind, idx, inv = m.groups()
        if kind == "pi":
            if idx:
                raise ValueError(f"unknown generator {name!r}")
            return self.matPiinv if inv else self.matPi
        i = int(idx) - 1
        table = {
            "X": (self.matX, self.matXinv),
            "Y": (self.matY, self.matYinv),
            "T": (self.matT, self.matTinv),
        }[kind]
        mats = table[1] if inv else table[0]
        if not 0 <= i < len(mats):
            raise ValueError(f"generator {name!r} out of range")
        return mats[i]

    def word(self, word: Sequence[str]) -> QMatrix:
        return product((self.generator(g) for g in word), self.dim)

    def t_word(self, word: Sequence[int]) -> QMatrix:
        return product((self.matT[i - 1] for i in word), self.dim)


# --- construction ------------------------------------------------------------

def basis_index(basis: Sequence[Permutation]) -> dict[Permutation, int]:
    return {w: k for k, w in enumerate(basis)}


def permutation_matrix(u: Permutation, basis: Sequence[Permutation]) -> QMatrix:
    idx = basis_index(basis)
    return QMatrix.from_entries(len(basis), len(basis), {(idx[u * w], k): 1 for k, w in enumerate(basis)})


def evaluated(values: Sequence[Fraction], w: Permutation) -> tuple[Fraction, ...]:
    """(values o w^{-1})_j = values[w^{-1}(j)]."""
    winv = w.inverse()
    return tuple(values[winv(j) - 1] for j in range(1, w.n + 1))


def diagonal_function(basis, mu, nu, fn: Callable) -> QMatrix:
    """Diagonal operator of F(P, X) with F = fn(P_tuple, X_tuple)."""
    return QMatrix.diag([fn(evaluated(mu, w), evaluated(nu, w)) for w in basis])


def _hecke_coefficient(gap: Fraction, i: int) -> Callable:
    def fn(P, X):
        if gap == 0:
            return Fraction(0)
        ratio = X[i - 1] / X[i]
        if ratio == 1:
            raise GenericityError(f"X_{i}/X_{i + 1} = 1 on a basis vector")
        return gap / (ratio - 1)
    return fn


def build_rep(params: DahaParams, chi: Character) -> RepBundle:
    n = params.n
    if chi.n != n:
        raise ValueError(f"character has length {chi.n}, expected {n}")
    tau = params.tau
    gap = params.hecke_gap
    basis = enumerate_sn(n)
    N = len(basis)
    I = QMatrix.identity(N)
    mu, nu = chi.mu, chi.nu

    matX = tuple(diagonal_function(basis, mu, nu, lambda P, X, j=j: X[j]) for j in range(n))
    matXinv = tuple(diagonal_function(basis, mu, nu, lambda P, X, j=j: 1 / X[j]) for j in range(n))

    matT, matTinv = [], []
    for i in range(1, n):
        S = permutation_matrix(Permutation.simple(n, i), basis)
        G = diagonal_function(basis, mu, nu, _hecke_coefficient(gap, i))
        T = S.scale(tau) + G * (S - I)
        matT.append(T)
        matTinv.append(T - I.scale(gap))

    C = permutation_matrix(Permutation.cycle(n), basis)
    Cinv = permutation_matrix(Permutation.cycle(n).inverse(), basis)
    matPi = diagonal_function(basis, mu, nu, lambda P, X: 1 / P[0]) * C
    matPiinv = Cinv * diagonal_function(basis, mu, nu, lambda P, X: P[0])

    matY, matYinv = y_operators(n, matT, matTinv, matPi, matPiinv, N)
    return RepBundle(params, chi, basis, matX, matXinv, tuple(matT), tuple(matTinv),
                     matPi, matPiinv, matY, matYinv)


def y_operators(n, matT, matTinv, matPi, matPiinv, N):
    """Y_i = T_i..T_{n-1} pi^{-1} T_1^{-1}..T_{i-1}^{-1}, i = 1..n, with inverses."""
    Ys, Yinvs = [], []
    for i in range(1, n + 1):
        Ys.append(product([matT[k - 1] for k in range(i, n)] + [matPiinv]
                          + [matTinv[k - 1] for k in range(1, i)], N))
        Yinvs.append(product([matT[k - 1] for k in range(i - 1, 0, -1)] + [matPi]
                             + [matTinv[k - 1] for k in range(n - 1, i - 1, -1)], N))
    return tuple(Ys), tuple(Yinvs)


def y_operators_printed(rep: "RepBundle") -> tuple:
    """The variant Y_i = T_1..T_{n-i} pi^{-1} T_{n-i+1}^{-1}..T_{n-1}^{-1}.

    Agrees with :func:`y_operators` for i = 1 and i = n only; for 1 < i < n
    it breaks T_i Y_{i+1} T_i = Y_i and [Y_i, Y_j] = 0. Kept for comparison.
    """
    n, T, Tinv = rep.n, rep.matT, rep.matTinv
    return tuple(
        product([T[k - 1] for k in range(1, n - i + 1)] + [rep.matPiinv]
                + [Tinv[k - 1] for k in range(n - i + 1, n)], rep.dim)
        for i in range(1, n + 1))


# --- relation checking ---------------------------------------------------------

@dataclass
class RelationEntry:
    relation: str
    instance: str
    indices: tuple[int, ...]
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "relation": self.relation,
            "instance": self.instance,
            "indices": list(self.indices),
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class RelationReport:
    entries: list[RelationEntry] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[RelationEntry]:
        return [e for e in self.entries if not e.passed]

    def relations(self) -> set[str]:
        return {e.relation for e in self.entries}

    def find(self, instance: str) -> RelationEntry:
        for e in self.entries:
            if e.instance == instance:
                return e
        raise KeyError(instance)

    def extend(self, other: "RelationReport"):
        self.entries.extend(other.entries)

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


def matrix_witness(lhs: QMatrix, rhs: QMatrix) -> dict | None:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return None
    r, c, a, b = diff
    return {"row": r, "col": c, "lhs": format_rational(a), "rhs": format_rational(b)}


class _Recorder:
    def __init__(self):
        self.report = RelationReport()

    def check(self, relation: str, instance: str, indices, lhs: QMatrix, rhs: QMatrix):
        ok = lhs == rhs
        self.report.entries.append(RelationEntry(
            relation, instance, tuple(indices), ok, None if ok else matrix_witness(lhs, rhs)))


def verify_relations(rep: RepBundle) -> RelationReport:
    n, tau = rep.n, rep.tau
    X, T, Y = rep.matX, rep.matT, rep.matY
    Pi, Piinv = rep.matPi, rep.matPiinv
    I = rep.identity()
    rec = _Recorder()

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rec.check("X_iX_j=X_jX_i", f"X_{i}X_{j}=X_{j}X_{i}", (i, j),
                      X[i - 1] * X[j - 1], X[j - 1] * X[i - 1])
    for i in range(1, n):
        rec.check("T_iX_iT_i=X_{i+1}", f"T_{i}X_{i}T_{i}=X_{i + 1}", (i,),
                  T[i - 1] * X[i - 1] * T[i - 1], X[i])
    for i in range(1, n):
        for j in range(1, n + 1):
            if j - i not in (0, 1):
                rec.check("T_iX_j=X_jT_i", f"T_{i}X_{j}=X_{j}T_{i}", (i, j),
                          T[i - 1] * X[j - 1], X[j - 1] * T[i - 1])
    for i in range(1, n):
        for j in range(i + 2, n):
            rec.check("T_iT_j=T_jT_i", f"T_{i}T_{j}=T_{j}T_{i}", (i, j),
                      T[i - 1] * T[j - 1], T[j - 1] * T[i - 1])
    for i in range(1, n - 1):
        rec.check("T_iT_{i+1}T_i=T_{i+1}T_iT_{i+1}", f"T_{i}T_{i + 1}T_{i}=T_{i + 1}T_{i}T_{i + 1}", (i,),
                  T[i - 1] * T[i] * T[i - 1], T[i] * T[i - 1] * T[i])
    for i in range(1, n):
        rec.check("piX_i=X_{i+1}pi", f"piX_{i}=X_{i + 1}pi", (i,), Pi * X[i - 1], X[i] * Pi)
    rec.check("piX_n=X_1pi", f"piX_{n}=X_1pi", (n,), Pi * X[n - 1], X[0] * Pi)
    for i in range(1, n - 1):
        rec.check("piT_i=T_{i+1}pi", f"piT_{i}=T_{i + 1}pi", (i,), Pi * T[i - 1], T[i] * Pi)
    if n > 1:
        Pin = Pi.power(n)
        for j in range(1, n):
            rec.check("pi^nT_j=T_jpi^n", f"pi^{n}T_{j}=T_{j}pi^{n}", (j,), Pin * T[j - 1], T[j - 1] * Pin)
    for i in range(1, n):
        rec.check("(T_i-tau)(T_i+tau^-1)=0", f"(T_{i}-tau)(T_{i}+tau^-1)=0", (i,),
                  T[i - 1].add_scalar(-tau) * T[i - 1].add_scalar(1 / tau), QMatrix.zeros(rep.dim))
    rec.check("pi pi^-1=1", "pi pi^-1=1", (), Pi * Piinv, I)
    for i in range(1, n):
        rec.check("T_iT_i^-1=1", f"T_{i}T_{i}^-1=1", (i,), T[i - 1] * rep.matTinv[i - 1], I)
    for i in range(1, n + 1):
        rec.check("X_iX_i^-1=1", f"X_{i}X_{i}^-1=1", (i,), X[i - 1] * rep.matXinv[i - 1], I)
        rec.check("Y_iY_i^-1=1", f"Y_{i}Y_{i}^-1=1", (i,), Y[i - 1] * rep.matYinv[i - 1], I)

    # Y-operators
    for i in range(1, n + 1):
        left = [T[k - 1] for k in range(i, n)]
        right = [rep.matTinv[k - 1] for k in range(1, i)]
        rec.check("Y_i=T_i..T_{n-1}pi^-1T_1^-1..T_{i-1}^-1", f"Y_{i}=definition", (i,),
                  Y[i - 1], product(left + [Piinv] + right, rep.dim))
    for i in range(1, n):
        rec.check("T_iY_{i+1}T_i=Y_i", f"T_{i}Y_{i + 1}T_{i}=Y_{i}", (i,),
                  T[i - 1] * Y[i] * T[i - 1], Y[i - 1])
    for i in range(1, n):
        for j in range(1, n + 1):
            if j - i not in (0, 1):
                rec.check("T_iY_j=Y_jT_i", f"T_{i}Y_{j}=Y_{j}T_{i}", (i, j),
                          T[i - 1] * Y[j - 1], Y[j - 1] * T[i - 1])
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rec.check("Y_iY_j=Y_jY_i", f"Y_{i}Y_{j}=Y_{j}Y_{i}", (i, j),
                      Y[i - 1] * Y[j - 1], Y[j - 1] * Y[i - 1])
    return rec.report


# --- invariants and the map to the Calogero-Moser space ----------------------------

def coset_sum_vector(rep: RepBundle, i: int) -> list[Fraction]:
    """e_i = sum over w' fixing 1 of (w' s_{1i}) (x) 1, with s_{11} = id."""
    n = rep.n
    idx = basis_index(rep.basis)
    s1i = Permutation.identity(n) if i == 1 else Permutation.transposition(n, 1, i)
    v = [Fraction(0)] * rep.dim
    for w in rep.basis:
        if w(1) == 1:
            v[idx[w * s1i]] += 1
    return v


def invariant_basis(rep: RepBundle) -> list[list[Fraction]]:
    n, tau = rep.n, rep.tau
    vecs = [coset_sum_vector(rep, i) for i in range(1, n + 1)]
    conds = [rep.matT[k - 1].add_scalar(-tau) for k in range(2, n)]
    for k, C in zip(range(2, n), conds):
        for i, v in enumerate(vecs, start=1):
            if any(C.apply(v)):
                raise InvariantSpaceError(f"T_{k} e_{i} != tau e_{i}")
    dim = len(nullspace(vstack(conds))) if conds else rep.dim
    if dim != n:
        raise InvariantSpaceError(f"invariant space has dimension {dim}, expected {n}")
    return vecs


def restrict(rep: RepBundle, op: QMatrix, vecs: Sequence[Sequence[Fraction]] | None = None) -> QMatrix:
    """Matrix of `op` on span(e_1..e_n), columns = coordinates of op(e_i)."""
    n = rep.n
    vecs = invariant_basis(rep) if vecs is None else vecs
    idx = basis_index(rep.basis)
    anchors = [idx[Permutation.identity(n) if j == 1 else Permutation.transposition(n, 1, j)]
               for j in range(1, n + 1)]
    cols = []
    for i, v in enumerate(vecs, start=1):
        image = op.apply(v)
        coords = [image[a] for a in anchors]
        rebuilt = [sum((c * e[k] for c, e in zip(coords, vecs)), Fraction(0)) for k in range(rep.dim)]
        if rebuilt != image:
            raise RestrictionError(f"operator does not preserve the invariant span (column e_{i})")
        cols.append(coords)
    return QMatrix.from_columns(cols)


def ybar_diagonal_formula(tau, mu, nu) -> list[Fraction]:
    """mu_i prod_{j != i} (tau^{-1} nu_j - tau nu_i) / (nu_j - nu_i)."""
    tau = rat(tau)
    out = []
    for i, (m, a) in enumerate(zip(mu, nu)):
        val = rat(m)
        for j, b in enumerate(nu):
            if j != i:
                val *= (b / tau - tau * a) / (b - a)
        out.append(val)
    return out


@dataclass
class CMMapResult:
    Xbar: QMatrix
    Ybar: QMatrix
    certificate: dict
    swapped: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.certificate.values())


def rank_one_defect(tau, X: QMatrix, Y: QMatrix) -> QMatrix:
    tau = rat(tau)
    return (X * Y).scale(tau) - (Y * X).scale(1 / tau)


def restricted_pair(rep: RepBundle) -> tuple[QMatrix, QMatrix]:
    vecs = invariant_basis(rep)
    return restrict(rep, rep.matX[0], vecs), restrict(rep, rep.matY[0], vecs)


def cm_map(rep: RepBundle) -> CMMapResult:
    Xbar, Ybar = restricted_pair(rep)
    chi, tau = rep.character, rep.tau
    cert = {
        "Xbar=diag(nu)": Xbar == QMatrix.diag(chi.nu),
        "Ybar_ii=mu_i*prod": Ybar.diagonal() == ybar_diagonal_formula(tau, chi.mu, chi.nu),
        "rank(tau*XY-tau^-1*YX)=1": rank(rank_one_defect(tau, Xbar, Ybar)) == 1,
    }
    return CMMapResult(Xbar, Ybar, cert, {
        # what the presentation actually forces: (Xbar, Ybar) is a point for tau^{-1}
        "rank(tau*YX-tau^-1*XY)=1": rank(rank_one_defect(tau, Ybar, Xbar)) == 1,
    })


@dataclass
class ZResult:
    Zmat: QMatrix
    commutator_matches: bool  # X_1 Y_1 X_1^{-1} Y_1^{-1} == Z
    reversed_commutator_matches: bool  # Y_1 X_1 Y_1^{-1} X_1^{-1} == Z
    Zbar: QMatrix
    charpoly_matches: bool
    spectrum: list[Fraction]
    expected: list[Fraction]

    @property
    def spectrum_ok(self) -> bool:
        return self.charpoly_matches and self.spectrum == self.expected


def z_matrix(rep: RepBundle) -> QMatrix:
    """T_1 ... T_{n-2} T_{n-1}^2 T_{n-2} ... T_1."""
    n = rep.n
    word = list(range(1, n)) + list(range(n - 1, 0, -1))
    return rep.t_word(word)


def commutator_x1y1(rep: RepBundle) -> QMatrix:
    return rep.matX[0] * rep.matY[0] * rep.matXinv[0] * rep.matYinv[0]


def commutator_y1x1(rep: RepBundle) -> QMatrix:
    return rep.matY[0] * rep.matX[0] * rep.matYinv[0] * rep.matXinv[0]


def expected_z_spectrum(n: int, tau) -> list[Fraction]:
    tau = rat(tau)
    return sorted([tau ** (2 * (n - 1))] + [tau ** -2] * (n - 1))


def z_element(rep: RepBundle, strict: bool = True) -> ZResult:
    n = rep.n
    if n < 2:
        raise ValueError("z_element needs n >= 2")
    Z = z_matrix(rep)
    comm_ok = commutator_x1y1(rep) == Z
    rev_ok = commutator_y1x1(rep) == Z
    Zbar = restrict(rep, Z)
    expected = expected_z_spectrum(n, rep.tau)
    cp = charpoly(Zbar)
    spectrum, _ = rational_roots(cp)
    res = ZResult(Z, comm_ok, rev_ok, Zbar, cp == poly_from_roots(expected), spectrum, expected)
    if strict and not res.spectrum_ok:
        raise SpectrumError(f"Z spectrum on invariants is {[format_rational(s) for s in spectrum]}")
    return res


def transposition_sum_spectrum(n: int) -> list[Fraction]:
    """Spectrum of sum_{i=2..n} s_{1i} on the invariants of the tau = 1 module."""
    params = DahaParams(n, Fraction(1), strict=False)
    chi = Character(tuple(range(1, n + 1)), tuple(range(1, n + 1)))
    rep = build_rep(params, chi)
    op = QMatrix.zeros(rep.dim)
    for i in range(2, n + 1):
        op = op + permutation_matrix(Permutation.transposition(n, 1, i), rep.basis)
    spectrum, splits = rational_roots(charpoly(restrict(rep, op)))
    assert splits
    return spectrum


# --- symmetrizer, regularity, commutant -----------------------------------------

def symmetrizer(rep: RepBundle, words: dict | None = None) -> QMatrix:
    """sum tau^{l(w)} T_w / sum tau^{2 l(w)}; `words` may override the word used per w."""
    tau = rep.tau
    num = QMatrix.zeros(rep.dim)
    den = Fraction(0)
    for w in rep.basis:
        ell = coxeter_length(w)
        word = words.get(w, reduced_word(w)) if words else reduced_word(w)
        num = num + rep.t_word(word).scale(tau ** ell)
        den += tau ** (2 * ell)
    if den == 0:
        raise ZeroDivisionError("symmetrizer normalization vanishes")
    return num.scale(1 / den)


def proportionality(a: QMatrix, e: QMatrix) -> Fraction | None:
    """c with a = c e, or None."""
    for i, row in enumerate(e.rows):
        if row:
            j = next(iter(row))
            c = a[i, j] / e[i, j]
            return c if a == e.scale(c) else None
    return Fraction(0) if a.is_zero() else None


def symmetrizer_checks(rep: RepBundle, e: QMatrix, words: Sequence[Sequence[str]] = ()) -> dict:
    tau = rep.tau
    out = {
        "e^2=e": e * e == e,
        "T_ie=tau*e": all(T * e == e.scale(tau) for T in rep.matT),
        "rank(e)=1": rank(e) == 1,
    }
    for word in words:
        a = rep.word(word)
        out[f"e({''.join(word)})e~e"] = proportionality(e * a * e, e) is not None
    return out


def regularity_check(rep: RepBundle) -> bool:
    cols = []
    for w in rep.basis:
        cols.append(rep.t_word(reduced_word(w)).column(0))
    return rank(QMatrix.from_columns(cols)) == rep.dim


def commutant_dimension(rep: RepBundle) -> int:
    """dim {M : [M, G] = 0 for G in X_i, T_i, pi}."""
    N = rep.dim
    gens = list(rep.matX) + list(rep.matT) + [rep.matPi]
    diag = [g for g in gens if g.is_diagonal()]
    other = [g for g in gens if not g.is_diagonal()]
    pairs = [(a, b) for a in range(N) for b in range(N)]
    for g in diag:
        d = g.diagonal()
        pairs = [(a, b) for a, b in pairs if d[a] == d[b]]
    basis = [QMatrix.from_entries(N, N, {p: 1}) for p in pairs]
    for g in other:
        if not basis:
            break
        comms = [b * g - g * b for b in basis]
        # columns indexed by basis element, rows by matrix entry
        entries = {}
        for k, c in enumerate(comms):
            for i, row in enumerate(c.rows):
                for j, v in row.items():
                    entries[(i * N + j, k)] = Fraction(v, c.den)
        used = sorted({r for r, _ in entries})
        remap = {r: t for t, r in enumerate(used)}
        system = QMatrix.from_entries(len(used), len(basis), {(remap[r], k): v for (r, k), v in entries.items()})
        kernel = nullspace(system) if used else [[Fraction(int(i == k)) for i in range(len(basis))]
                                                  for k in range(len(basis))]
        new_basis = []
        for coeffs in kernel:
            m = QMatrix.zeros(N)
            for c, b in zip(coeffs, basis):
                if c:
                    m = m + b.scale(c)
            new_basis.append(m)
        basis = new_basis
    return len(basis)


# --- GL(2, Z) twists -------------------------------------------------------------

def gl2z_twist(rep: RepBundle, gen: str) -> RepBundle:
    """Twist by a GL(2, Z) generator.

    "sigma": X, T fixed, Y_i -> X_i Y_i, pi re-derived from Y_1.
    "sigma-pi": X, T fixed, pi -> X_1^{-1} pi, Y re-derived. This one is an
    algebra automorphism; it sends Y_n -> X_n Y_n and Y_1 -> Y_1 X_1.
    "epsilon": X <-> Y, T -> T^{-1}, tau -> 1/tau, pi re-derived from Y_1.
    """
    n, N = rep.n, rep.dim
    if gen == "sigma-pi":
        Pi = rep.matXinv[0] * rep.matPi
        Piinv = rep.matPiinv * rep.matX[0]
        Y, Yinv = y_operators(n, rep.matT, rep.matTinv, Pi, Piinv, N)
        return replace(rep, matPi=Pi, matPiinv=Piinv, matY=Y, matYinv=Yinv)
    if gen == "sigma":
        params = rep.params
        X, Xinv, T, Tinv = rep.matX, rep.matXinv, rep.matT, rep.matTinv
        Y = tuple(x * y for x, y in zip(rep.matX, rep.matY))
        Yinv = tuple(yi * xi for xi, yi in zip(rep.matXinv, rep.matYinv))
    elif gen == "epsilon":
        params = DahaParams(n, 1 / rep.tau, strict=rep.params.strict)
        X, Xinv = rep.matY, rep.matYinv
        Y, Yinv = rep.matX, rep.matXinv
        T, Tinv = rep.matTinv, rep.matT
    else:
        raise ValueError(f"unknown GL(2,Z) generator {gen!r}")
    # Y_1 = T_1..T_{n-1} pi^{-1}  =>  pi = Y_1^{-1} T_1..T_{n-1}
    Pi = product([Yinv[0]] + list(T), N)
    Piinv = product(list(reversed(Tinv)) + [Y[0]], N)
    return replace(rep, params=params, matX=X, matXinv=Xinv, matT=T, matTinv=Tinv,
                   matPi=Pi, matPiinv=Piinv, matY=Y, matYinv=Yinv)


# --- serialization -----------------------------------------------------------------

def matrix_to_json(m: QMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.to_lists()]


def rep_to_json(rep: RepBundle) -> dict:
    return {
        "params": {"n": rep.n, "tau": format_rational(rep.tau)},
        "character": {
            "mu": [format_rational(x) for x in rep.character.mu],
            "nu": [format_rational(x) for x in rep.character.nu],
        },
        "basis": [w.to_json() for w in rep.basis],
        "matrices": {
            "X": [matrix_to_json(m) for m in rep.matX],
            "T": [matrix_to_json(m) for m in rep.matT],
            "pi": matrix_to_json(rep.matPi),
            "Y": [matrix_to_json(m) for m in rep.matY],
        },
    }
