"""Rational and trigonometric degenerations.

Dunkl operators act on (Laurent) polynomials stored as {exponent tuple: Fraction}.
Relations of the degenerate algebras are checked as operator identities on
every monomial of a finite window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .daha import (
    GenericityError,
    RelationEntry,
    RelationReport,
    _Recorder,
    diagonal_function,
    evaluated,
    permutation_matrix,
)
from .exact import Jet, format_rational, rat
from .linalg import QMatrix, inverse, product, rank
from .symgroup import Permutation, enumerate_sn

RATIONAL = "rational"
TRIG = "trigonometric"


class FlavorError(ValueError):
    pass


# --- Laurent polynomials ------------------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]
    n: int
    flavor: str = RATIONAL

    @classmethod
    def from_dict(cls, terms: dict, n: int, flavor: str = RATIONAL) -> "LaurentPoly":
        clean = tuple(sorted((tuple(e), rat(c)) for e, c in terms.items() if c != 0))
        if flavor == RATIONAL and any(x < 0 for e, _ in clean for x in e):
            raise FlavorError("negative exponent in a polynomial")
        return cls(clean, n, flavor)

    @classmethod
    def monomial(cls, exps: Sequence[int], flavor: str = RATIONAL, coeff=1) -> "LaurentPoly":
        return cls.from_dict({tuple(exps): coeff}, len(exps), flavor)

    @classmethod
    def var(cls, n: int, i: int, flavor: str = RATIONAL, power: int = 1) -> "LaurentPoly":
        """x_i^power, 1-based i."""
        return cls.monomial([power if k == i - 1 else 0 for k in range(n)], flavor)

    @classmethod
    def zero(cls, n: int, flavor: str = RATIONAL) -> "LaurentPoly":
        return cls((), n, flavor)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _new(self, terms: dict) -> "LaurentPoly":
        return LaurentPoly.from_dict(terms, self.n, self.flavor)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = self.as_dict()
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return self._new(out)

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentPoly":
        c = rat(c)
        return self._new({e: c * v for e, v in self.terms})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._new(out)

    def permute(self, w: Permutation) -> "LaurentPoly":
        """(w f)(x) = f(x_{w(1)}, ..., x_{w(n)}): the exponent of x_i moves to x_{w(i)}."""
        out = {}
        for e, c in self.terms:
            new = [0] * self.n
            for i, a in enumerate(e):
                new[w(i + 1) - 1] = a
            out[tuple(new)] = c
        return self._new(out)

    def swap(self, i: int, j: int) -> "LaurentPoly":
        return self.permute(Permutation.transposition(self.n, i, j))

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in self.terms]


def _dd_monomial(e: tuple[int, ...], i: int, j: int) -> dict:
    """(s_ij - 1) x^e / (x_i - x_j) for a single monomial, 0-based i, j."""
    a, b = e[i], e[j]
    if a == b:
        return {}
    lo, d = min(a, b), abs(a - b)
    sign = 1 if b > a else -1
    out = {}
    for k in range(d):
        new = list(e)
        new[i] = lo + k
        new[j] = lo + d - 1 - k
        out[tuple(new)] = Fraction(sign)
    return out


def divided_difference(f: LaurentPoly, i: int, j: int) -> LaurentPoly:
    """g with (x_i - x_j) g = (s_ij - 1) f; 1-based i != j."""
    if i == j:
        raise ValueError("divided difference needs i != j")
    out: dict = {}
    for e, c in f.terms:
        for e2, v in _dd_monomial(e, i - 1, j - 1).items():
            out[e2] = out.get(e2, 0) + c * v
    return LaurentPoly.from_dict(out, f.n, f.flavor)


# --- Dunkl operators -------------------------------------------------------------------

@dataclass(frozen=True)
class DegenParams:
    n: int
    t: Fraction
    c: Fraction
    flavor: str = RATIONAL
    # +1 applies c * (coefficient) * (s_ij - 1); -1 flips it to (1 - s_ij)
    orientation: int = field(default=1)
    drop_c: bool = field(default=False)  # test hook: omit the reflection terms
    # adds the constant c (i - 1) to y_i; only meaningful for the trigonometric flavor
    rho_shift: bool = field(default=False)

    def __post_init__(self):
        object.__setattr__(self, "t", rat(self.t))
        object.__setattr__(self, "c", rat(self.c))
        if self.flavor not in (RATIONAL, TRIG):
            raise FlavorError(f"unknown flavor {self.flavor!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n out of range: {self.n!r}")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")


@lru_cache(maxsize=None)
def _dunkl_monomial(params: DegenParams, i: int, e: tuple[int, ...]) -> tuple:
    n, t = params.n, params.t
    c = Fraction(0) if params.drop_c else params.c * params.orientation
    out: dict = {}

    def add(exps, v):
        out[exps] = out.get(exps, 0) + v

    a = e[i - 1]
    if params.flavor == RATIONAL:
        if a:
            new = list(e)
            new[i - 1] -= 1
            add(tuple(new), t * a)
        if c:
            for j in range(1, n + 1):
                if j != i:
                    for e2, v in _dd_monomial(e, i - 1, j - 1).items():
                        add(e2, c * v)
    else:
        if a:
            add(e, t * a)
        if params.rho_shift and c:
            add(e, c * (i - 1))
        if c:
            for j in range(1, n + 1):
                if j == i:
                    continue
                # j < i: X_i/(X_i - X_j) (s_ij - 1);  j > i: X_j/(X_i - X_j) (s_ij - 1)
                shift = i if j < i else j
                for e2, v in _dd_monomial(e, i - 1, j - 1).items():
                    new = list(e2)
                    new[shift - 1] += 1
                    add(tuple(new), c * v)
    return tuple((k, v) for k, v in out.items() if v != 0)


def dunkl_apply(params: DegenParams, i: int, f: LaurentPoly) -> LaurentPoly:
    if f.flavor != params.flavor:
        raise FlavorError(f"{f.flavor} polynomial given to a {params.flavor} Dunkl operator")
    if f.n != params.n:
        raise ValueError("polynomial has the wrong number of variables")
    if not 1 <= i <= params.n:
        raise ValueError(f"index {i} out of range")
    out: dict = {}
    for e, coeff in f.terms:
        for e2, v in _dunkl_monomial(params, i, e):
            out[e2] = out.get(e2, 0) + coeff * v
    return LaurentPoly.from_dict(out, f.n, f.flavor)


# --- operator algebra for relation checks -------------------------------------------------

class Op:
    """A linear operator given by its action on monomials, cached per exponent.

    Works on raw {exponent: coefficient} dicts internally; calling it on a
    LaurentPoly returns a LaurentPoly.
    """

    def __init__(self, on_monomial: Callable[[tuple], dict], flavor: str | None = None):
        self._on = on_monomial
        self._cache: dict = {}
        self.flavor = flavor

    def mono(self, e: tuple) -> dict:
        out = self._cache.get(e)
        if out is None:
            out = self._on(e)
            self._cache[e] = out
        return out

    def apply(self, f: dict) -> dict:
        out: dict = {}
        for e, c in f.items():
            for e2, v in self.mono(e).items():
                out[e2] = out.get(e2, 0) + c * v
        return out

    def __call__(self, f: LaurentPoly) -> LaurentPoly:
        return LaurentPoly.from_dict(self.apply(f.as_dict()), f.n, f.flavor)


def _shift(e: tuple, i: int, power: int) -> tuple:
    new = list(e)
    new[i - 1] += power
    return tuple(new)


def op_mul(n: int, i: int, power: int, flavor: str) -> Op:
    if flavor == RATIONAL and power < 0:
        raise FlavorError("negative power of a polynomial variable")
    return Op(lambda e: {_shift(e, i, power): 1})


def op_swap(i: int, j: int) -> Op:
    def on(e):
        new = list(e)
        new[i - 1], new[j - 1] = e[j - 1], e[i - 1]
        return {tuple(new): 1}
    return Op(on)


def op_y(params: DegenParams, i: int) -> Op:
    return Op(lambda e: dict(_dunkl_monomial(params, i, e)))


def compose(*ops: Op) -> Op:
    def on(e):
        f = {e: 1}
        for op in reversed(ops):
            f = op.apply(f)
        return f
    return Op(on)


def combo(*terms: tuple) -> Op:
    """sum of coeff * op for (coeff, op) pairs; coeff * identity when op is None."""
    def on(e):
        out: dict = {}
        for coeff, op in terms:
            for e2, v in ({e: 1} if op is None else op.mono(e)).items():
                out[e2] = out.get(e2, 0) + coeff * v
        return out
    return Op(on)


def commutator(a: Op, b: Op) -> Op:
    return combo((1, compose(a, b)), (-1, compose(b, a)))


def _clean(f: dict) -> dict:
    return {e: c for e, c in f.items() if c != 0}


def monomial_window(n: int, degree_bound: int, flavor: str) -> list[tuple[int, ...]]:
    """Exponents with total degree <= d (rational) or L1 norm <= d (trigonometric)."""
    d = degree_bound
    if flavor == RATIONAL:
        return [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) <= d]
    return [e for e in itertools.product(range(-d, d + 1), repeat=n) if sum(map(abs, e)) <= d]


def _presentation(params: DegenParams, variant: str):
    """Yield (relation id, instance, indices, lhs op, rhs op).

    variant "verbatim" takes the displayed sign of the s_ij y_i - y_j s_ij
    relation for the trigonometric algebra; "consistent" flips it.
    """
    n, t, c, fl = params.n, params.t, params.c, params.flavor
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    s = {(i, j): op_swap(i, j) for i, j in pairs}
    y = {i: op_y(params, i) for i in range(1, n + 1)}
    name = "x" if fl == RATIONAL else "X"
    x = {i: op_mul(n, i, 1, fl) for i in range(1, n + 1)}
    xinv = {i: op_mul(n, i, -1, fl) for i in range(1, n + 1)} if fl == TRIG else {}

    for i, j in pairs:
        yield (f"{name}_is_ij=s_ij{name}_j", f"{name}_{i}s_{i}{j}=s_{i}{j}{name}_{j}", (i, j),
               compose(x[i], s[i, j]), compose(s[i, j], x[j]))
    for i, j in pairs:
        if i < j:
            yield ("s_ij^2=1", f"s_{i}{j}^2=1", (i, j), compose(s[i, j], s[i, j]), combo((1, None)))
    simple_only = fl == TRIG and variant == "consistent"
    for i, j in pairs:
        for k in range(1, n + 1):
            if k not in (i, j) and i < j:
                yield (f"[{name}_k,s_ij]=0", f"[{name}_{k},s_{i}{j}]=0", (k, i, j),
                       commutator(x[k], s[i, j]), combo())
                if not simple_only or j == i + 1:
                    yield ("[y_k,s_ij]=0", f"[y_{k},s_{i}{j}]=0", (k, i, j),
                           commutator(y[k], s[i, j]), combo())
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            yield (f"[{name}_i,{name}_j]=0", f"[{name}_{i},{name}_{j}]=0", (i, j), commutator(x[i], x[j]), combo())
            yield ("[y_i,y_j]=0", f"[y_{i},y_{j}]=0", (i, j), commutator(y[i], y[j]), combo())

    if fl == RATIONAL:
        for i, j in pairs:
            yield ("y_is_ij=s_ijy_j", f"y_{i}s_{i}{j}=s_{i}{j}y_{j}", (i, j),
                   compose(y[i], s[i, j]), compose(s[i, j], y[j]))
        for i, j in pairs:
            yield ("[y_i,x_j]=cs_ij", f"[y_{i},x_{j}]=cs_{i}{j}", (i, j),
                   commutator(y[i], x[j]), combo((c, s[i, j])))
        for k in range(1, n + 1):
            rhs = combo((t, None), *[(-c, s[i, k]) for i in range(1, n + 1) if i != k])
            yield ("[y_k,x_k]=t-c*sum(s_ik)", f"[y_{k},x_{k}]=t-c*sum(s_i{k})", (k,),
                   commutator(y[k], x[k]), rhs)
        return

    for i, j in _sy_pairs(n, variant):
        val, rel = _sy_value(c, i, j, variant)
        yield (rel, f"s_{i}{j}y_{i}-y_{j}s_{i}{j}", (i, j),
               combo((1, compose(s[i, j], y[i])), (-1, compose(y[j], s[i, j]))), combo((val, None)))
    for i, j in pairs:
        lhs = combo((1, compose(xinv[j], y[i], x[j])), (-1, y[i]))
        if j > i:
            yield ("X_j^-1y_iX_j-y_i=cs_ij(j>i)", f"X_{j}^-1y_{i}X_{j}-y_{i}=cs_{i}{j}", (i, j),
                   lhs, combo((c, s[i, j])))
        else:
            yield ("X_j^-1y_iX_j-y_i=X_iX_j^-1cs_ij(j<i)", f"X_{j}^-1y_{i}X_{j}-y_{i}=X_{i}X_{j}^-1cs_{i}{j}",
                   (i, j), lhs, combo((c, compose(x[i], xinv[j], s[i, j]))))
    for k in range(1, n + 1):
        terms = [(t, None)]
        terms += [(-c, s[i, k]) for i in range(1, k)]
        terms += [(-c, compose(x[i], xinv[k], s[i, k])) for i in range(k + 1, n + 1)]
        yield ("X_k^-1y_kX_k-y_k=t-c(...)", f"X_{k}^-1y_{k}X_{k}-y_{k}", (k,),
               combo((1, compose(xinv[k], y[k], x[k])), (-1, y[k])), combo(*terms))


def _sy_pairs(n: int, variant: str):
    """Pairs (i, j) for the s_ij y_i - y_j s_ij relation; simple reflections only when consistent."""
    if variant == "verbatim":
        return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return [p for i in range(1, n) for p in ((i, i + 1), (i + 1, i))]


def _sy_value(c, i: int, j: int, variant: str):
    sign = 1 if variant == "verbatim" else -1
    val = sign * c if j > i else -sign * c
    rel = "s_ijy_i-y_js_ij=c(j>i),-c(j<i)" if sign == 1 else "s_iy_i-y_{i+1}s_i=-c"
    return val, rel


def verify_degenerate_relations(params: DegenParams, degree_bound: int = 5,
                                variant: str = "verbatim") -> RelationReport:
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    if variant not in ("verbatim", "consistent"):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "consistent" and params.flavor == TRIG:
        params = replace(params, rho_shift=True)
    n, fl = params.n, params.flavor
    window = monomial_window(n, degree_bound, fl)
    report = RelationReport()
    for rel, inst, idx, lhs, rhs in _presentation(params, variant):
        witness = None
        for e in window:
            a, b = _clean(lhs.mono(e)), _clean(rhs.mono(e))
            if a != b:
                witness = {
                    "monomial": list(e),
                    "lhs": LaurentPoly.from_dict(a, n, fl).to_json(),
                    "rhs": LaurentPoly.from_dict(b, n, fl).to_json(),
                }
                break
        report.entries.append(RelationEntry(rel, inst, idx, witness is None, witness))
    return report


def equivariance_check(params: DegenParams, degree_bound: int = 5) -> bool:
    """w y_i w^{-1} = y_{w(i)} on the window, for all w in S_n."""
    n = params.n
    window = [LaurentPoly.monomial(e, params.flavor) for e in
              monomial_window(n, degree_bound, params.flavor)]
    for w in enumerate_sn(n):
        winv = w.inverse()
        for i in range(1, n + 1):
            for m in window:
                lhs = dunkl_apply(params, i, m.permute(winv)).permute(w)
                if lhs != dunkl_apply(params, w(i), m):
                    return False
    return True


def leading_order_check(params: DegenParams, degree_bound: int = 5) -> bool:
    """With c = 0: y_i = t d/dx_i (rational) or t X_i d/dX_i (trigonometric)."""
    zero_c = DegenParams(params.n, params.t, 0, params.flavor)
    for e in monomial_window(params.n, degree_bound, params.flavor):
        m = LaurentPoly.monomial(e, params.flavor)
        for i in range(1, params.n + 1):
            a = e[i - 1]
            if params.flavor == RATIONAL:
                expect = LaurentPoly.from_dict(
                    {tuple(x - (k == i - 1) for k, x in enumerate(e)): zero_c.t * a} if a else {},
                    params.n, params.flavor)
            else:
                expect = m.scale(zero_c.t * a)
            if dunkl_apply(zero_c, i, m) != expect:
                return False
    return True


# --- degenerate Calogero-Moser predicates ---------------------------------------------------

def degenerate_cm_predicate(flavor: str, x: QMatrix, y: QMatrix) -> bool:
    n = x.nrows
    if flavor == RATIONAL:
        m = (x * y - y * x).add_scalar(1)
    elif flavor == TRIG:
        xinv = inverse(x)  # raises on singular X
        m = (xinv * y * x - y).add_scalar(1)
    else:
        raise FlavorError(f"unknown flavor {flavor!r}")
    return rank(m) == 1 if n else False


# --- bispectral dual module ------------------------------------------------------------------

@dataclass(frozen=True)
class DualTrigBundle:
    n: int
    c: Fraction
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    basis: tuple[Permutation, ...]
    matS: tuple[QMatrix, ...]  # plain s_{i,i+1}
    matTbar: tuple[QMatrix, ...]
    matY: tuple[QMatrix, ...]
    matP: QMatrix
    matW: QMatrix
    matX: tuple[QMatrix, ...]
    matXinv: tuple[QMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reflection(self, i: int, j: int) -> QMatrix:
        """Image of s_ij as a word in the Tbar: s_i ... s_{j-2} s_{j-1} s_{j-2} ... s_i."""
        i, j = min(i, j), max(i, j)
        word = list(range(i, j)) + list(range(j - 2, i - 1, -1))
        return product((self.matTbar[k - 1] for k in word), self.dim)


def tbar_matrix(basis, c, beta, i: int) -> QMatrix:
    n = len(beta)
    N = len(basis)
    S = permutation_matrix(Permutation.simple(n, i), basis)

    def coeff(P, Y):
        if Y[i - 1] == Y[i]:
            raise GenericityError(f"y_{i} = y_{i + 1} on a basis vector")
        return c / (Y[i - 1] - Y[i])

    G = diagonal_function(basis, [1] * n, beta, coeff)
    return S + G * (S - QMatrix.identity(N))


def trig_dual_rep(n: int, c, alpha: Sequence, beta: Sequence) -> DualTrigBundle:
    c = rat(c)
    alpha = tuple(rat(a) for a in alpha)
    beta = tuple(rat(b) for b in beta)
    if len(alpha) != n or len(beta) != n:
        raise ValueError("alpha and beta must have length n")
    if len(set(beta)) != n:
        raise GenericityError("beta must have distinct entries")
    if any(a == 0 for a in alpha):
        raise GenericityError("alpha must be nonzero")
    basis = enumerate_sn(n)
    N = len(basis)
    matS = tuple(permutation_matrix(Permutation.simple(n, i), basis) for i in range(1, n))
    matTbar = tuple(tbar_matrix(basis, c, beta, i) for i in range(1, n))
    # y_i and P_i are diagonal, evaluated at (alpha, beta) o w^{-1}
    matY = tuple(diagonal_function(basis, alpha, beta, lambda P, Y, i=i: Y[i]) for i in range(n))
    matP = diagonal_function(basis, alpha, beta, lambda P, Y: P[0])
    shift = Permutation(tuple([n] + list(range(1, n))))  # w(1) = n, w(i) = i - 1
    matW = permutation_matrix(shift, basis)
    matX = []
    for i in range(1, n + 1):
        # Tbar_i .. Tbar_{n-1} w P_1 Tbar_1 .. Tbar_{i-1}  (Tbar_k is an involution)
        left = [matTbar[k - 1] for k in range(i, n)]
        right = [matTbar[k - 1] for k in range(1, i)]
        matX.append(product(left + [matW, matP] + right, N))
    matXinv = tuple(inverse(x) for x in matX)
    return DualTrigBundle(n, c, alpha, beta, basis, matS, matTbar, matY, matP, matW, tuple(matX), matXinv)


def verify_dual_relations(b: DualTrigBundle, variant: str = "verbatim") -> RelationReport:
    """The H^trig_{0,c} presentation on the dual module (t = 0)."""
    n, c, N = b.n, b.c, b.dim
    I = QMatrix.identity(N)
    Z = QMatrix.zeros(N)
    X, Xi, Y = b.matX, b.matXinv, b.matY
    s = {(i, j): b.reflection(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    rec = _Recorder()
    for (i, j), sij in s.items():
        rec.check("X_is_ij=s_ijX_j", f"X_{i}s_{i}{j}=s_{i}{j}X_{j}", (i, j), X[i - 1] * sij, sij * X[j - 1])
    for (i, j), sij in s.items():
        if i < j:
            rec.check("s_ij^2=1", f"s_{i}{j}^2=1", (i, j), sij * sij, I)
    for i in range(1, n - 1):
        T = b.matTbar
        rec.check("braid", f"s_{i}s_{i + 1}s_{i}=s_{i + 1}s_{i}s_{i + 1}", (i,),
                  T[i - 1] * T[i] * T[i - 1], T[i] * T[i - 1] * T[i])
    for i, j in _sy_pairs(n, variant):
        val, rel = _sy_value(c, i, j, variant)
        sij = s[i, j]
        rec.check(rel, f"s_{i}{j}y_{i}-y_{j}s_{i}{j}", (i, j), sij * Y[i - 1] - Y[j - 1] * sij, I.scale(val))
    for (i, j), sij in s.items():
        for k in range(1, n + 1):
            if k not in (i, j) and i < j:
                rec.check("[X_k,s_ij]=0", f"[X_{k},s_{i}{j}]=0", (k, i, j), X[k - 1] * sij, sij * X[k - 1])
                if variant == "verbatim" or j == i + 1:
                    rec.check("[y_k,s_ij]=0", f"[y_{k},s_{i}{j}]=0", (k, i, j), Y[k - 1] * sij, sij * Y[k - 1])
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rec.check("[X_i,X_j]=0", f"[X_{i},X_{j}]=0", (i, j), X[i - 1] * X[j - 1], X[j - 1] * X[i - 1])
            rec.check("[y_i,y_j]=0", f"[y_{i},y_{j}]=0", (i, j), Y[i - 1] * Y[j - 1], Y[j - 1] * Y[i - 1])
    for (i, j), sij in s.items():
        lhs = Xi[j - 1] * Y[i - 1] * X[j - 1] - Y[i - 1]
        if j > i:
            rec.check("X_j^-1y_iX_j-y_i=cs_ij(j>i)", f"X_{j}^-1y_{i}X_{j}-y_{i}=cs_{i}{j}", (i, j),
                      lhs, sij.scale(c))
        else:
            rec.check("X_j^-1y_iX_j-y_i=X_iX_j^-1cs_ij(j<i)", f"X_{j}^-1y_{i}X_{j}-y_{i}=X_{i}X_{j}^-1cs_{i}{j}",
                      (i, j), lhs, (X[i - 1] * Xi[j - 1] * sij).scale(c))
    for k in range(1, n + 1):
        rhs = Z
        for i in range(1, k):
            rhs = rhs - s[i, k].scale(c)
        for i in range(k + 1, n + 1):
            rhs = rhs - (X[i - 1] * Xi[k - 1] * s[i, k]).scale(c)
        rec.check("X_k^-1y_kX_k-y_k=t-c(...)", f"X_{k}^-1y_{k}X_{k}-y_{k}", (k,),
                  Xi[k - 1] * Y[k - 1] * X[k - 1] - Y[k - 1], rhs)
    return rec.report


# --- degeneration shadow (n = 2) ---------------------------------------------------------------

def degeneration_limit(kappa, beta: Sequence) -> tuple[QMatrix, QMatrix]:
    """Limit h -> 0 of the n = 2 daha T-matrix along tau = 1 + kappa h, nu_i = 1 + beta_i h.

    The Hecke coefficient (tau - tau^{-1}) / (X_1/X_2 - 1) is 0/0 at h = 0; its
    limit is the ratio of first-order jet coefficients. Returns (limit, Tbar at 2 kappa).
    """
    kappa = rat(kappa)
    beta = [rat(b) for b in beta]
    basis = enumerate_sn(2)
    h = Jet(Fraction(0), (Fraction(1),))
    tau = 1 + h * kappa
    gap = tau - 1 / tau
    S = permutation_matrix(Permutation.simple(2, 1), basis)
    coeffs = []
    for w in basis:
        b = evaluated(beta, w)
        ratio = (1 + h * b[0]) / (1 + h * b[1]) - 1
        if gap.value != 0 or ratio.value != 0:
            raise AssertionError("expected a 0/0 limit")
        if ratio.partials[0] == 0:
            raise GenericityError("beta_1 = beta_2")
        coeffs.append(gap.partials[0] / ratio.partials[0])
    G = QMatrix.diag(coeffs)
    limit = S.scale(tau.value) + G * (S - QMatrix.identity(2))
    return limit, tbar_matrix(basis, 2 * kappa, beta, 1)


def first_order_hecke(n: int, kappa, nu: Sequence) -> tuple[list[QMatrix], list[QMatrix]]:
    """(s_i, s~_i) with T_i = s_i + h s~_i + O(h^2) at tau = 1 + kappa h, nu fixed."""
    kappa = rat(kappa)
    nu = [rat(x) for x in nu]
    basis = enumerate_sn(n)
    N = len(basis)
    h = Jet(Fraction(0), (Fraction(1),))
    tau = 1 + h * kappa
    gap = tau - 1 / tau
    s_list, st_list = [], []
    for i in range(1, n):
        S = permutation_matrix(Permutation.simple(n, i), basis)
        vals = []
        for w in basis:
            x = evaluated(nu, w)
            vals.append(gap.partials[0] / (x[i - 1] / x[i] - 1))
        st = S.scale(tau.partials[0]) + QMatrix.diag(vals) * (S - QMatrix.identity(N))
        s_list.append(S)
        st_list.append(st)
    return s_list, st_list
