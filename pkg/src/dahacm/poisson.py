"""Brackets on the (lambda, q) chart, two ways.

`chain_rule_brackets` pushes {nu_i, mu_j} = delta_ij nu_i mu_j through the
coordinate change lambda = nu, q_i = mu_i prod_{j != i} (tau^{-1} nu_j - tau nu_i)/(nu_j - nu_i)
using exact jets. `fr_brackets` evaluates the closed-form bracket on (lambda, q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cmspace import CMCoords, ChartError, check_chart
from .exact import Jet, format_rational, jet_vars, rat

Table = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class BracketTable:
    n: int
    LL: Table  # {lambda_i, lambda_j}
    LQ: Table  # {lambda_i, q_j}
    QQ: Table  # {q_i, q_j}

    def tables(self) -> dict[str, Table]:
        return {"LL": self.LL, "LQ": self.LQ, "QQ": self.QQ}

    def is_antisymmetric(self) -> bool:
        return all(t[i][j] == -t[j][i] for t in (self.LL, self.QQ)
                   for i in range(self.n) for j in range(self.n))

    def first_mismatch(self, other: "BracketTable"):
        for name, t in self.tables().items():
            u = other.tables()[name]
            for i in range(self.n):
                for j in range(self.n):
                    if t[i][j] != u[i][j]:
                        return name, i, j, t[i][j], u[i][j]
        return None

    def to_json(self) -> dict:
        return {name: [[format_rational(x) for x in row] for row in t] for name, t in self.tables().items()}


def _table(n, fn) -> Table:
    return tuple(tuple(fn(i, j) for j in range(n)) for i in range(n))


def check_point(tau, nu, mu):
    tau = rat(tau)
    if len(nu) != len(mu):
        raise ValueError("nu and mu must have the same length")
    if any(x == 0 for x in list(nu) + list(mu)):
        raise ChartError("coordinates outside chart: zero entry")
    check_chart(tau, nu)


def q_coordinates(tau, nu: Sequence, mu: Sequence):
    """q_i(mu, nu); works on Fractions and on Jets alike."""
    out = []
    n = len(nu)
    for i in range(n):
        val = mu[i]
        for j in range(n):
            if j != i:
                val = val * (nu[j] / tau - nu[i] * tau) / (nu[j] - nu[i])
        out.append(val)
    return out


def log_canonical_bracket(f: Jet, g: Jet, nu, mu) -> Fraction:
    """sum_k nu_k mu_k (df/dnu_k dg/dmu_k - df/dmu_k dg/dnu_k)."""
    n = len(nu)
    total = Fraction(0)
    for k in range(n):
        total += nu[k] * mu[k] * (f.partials[k] * g.partials[n + k] - f.partials[n + k] * g.partials[k])
    return total


def chain_rule_brackets(tau, nu: Sequence, mu: Sequence) -> BracketTable:
    tau = rat(tau)
    nu = [rat(x) for x in nu]
    mu = [rat(x) for x in mu]
    check_point(tau, nu, mu)
    n = len(nu)
    variables = jet_vars(nu + mu)
    lam = variables[:n]
    q = q_coordinates(tau, variables[:n], variables[n:])

    def br(f, g):
        return log_canonical_bracket(f, g, nu, mu)

    return BracketTable(
        n,
        _table(n, lambda i, j: br(lam[i], lam[j])),
        _table(n, lambda i, j: br(lam[i], q[j])),
        _table(n, lambda i, j: br(q[i], q[j])),
    )


def fr_qq(tau, lam, q, i: int, j: int) -> Fraction:
    if i == j:
        return Fraction(0)
    li, lj = lam[i], lam[j]
    num = (tau - 1 / tau) ** 2 * q[i] * q[j] * (li + lj) * li * lj
    den = (tau * li - lj / tau) * (tau * lj - li / tau) * (li - lj)
    if den == 0:
        raise ChartError("pole of the bracket: coordinates outside chart")
    return num / den


def fr_brackets(tau, coords: CMCoords) -> BracketTable:
    tau = rat(tau)
    lam, q = coords.lam, coords.q
    check_chart(tau, lam)
    n = coords.n
    return BracketTable(
        n,
        _table(n, lambda i, j: Fraction(0)),
        _table(n, lambda i, j: lam[i] * q[i] if i == j else Fraction(0)),
        _table(n, lambda i, j: fr_qq(tau, lam, q, i, j)),
    )


@dataclass
class MatchResult:
    ok: bool
    chain: BracketTable
    closed_form: BracketTable
    witness: dict | None = None


def poisson_match(tau, nu: Sequence, mu: Sequence) -> MatchResult:
    tau = rat(tau)
    nu = [rat(x) for x in nu]
    mu = [rat(x) for x in mu]
    chain = chain_rule_brackets(tau, nu, mu)
    coords = CMCoords(tuple(nu), tuple(q_coordinates(tau, nu, mu)))
    closed = fr_brackets(tau, coords)
    diff = chain.first_mismatch(closed)
    witness = None
    if diff is not None:
        name, i, j, a, b = diff
        witness = {
            "pair": f"{name}[{i + 1},{j + 1}]",
            "lhs": format_rational(a),
            "rhs": format_rational(b),
            "point": {"nu": [format_rational(x) for x in nu], "mu": [format_rational(x) for x in mu]},
        }
    return MatchResult(diff is None, chain, closed, witness)
