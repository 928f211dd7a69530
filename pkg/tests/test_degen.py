from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from dahacm.daha import Character, DahaParams, GenericityError, build_rep
from dahacm.degen import (
    RATIONAL,
    TRIG,
    DegenParams,
    FlavorError,
    LaurentPoly,
    degenerate_cm_predicate,
    degeneration_limit,
    divided_difference,
    dunkl_apply,
    equivariance_check,
    first_order_hecke,
    leading_order_check,
    tbar_matrix,
    trig_dual_rep,
    verify_degenerate_relations,
    verify_dual_relations,
)
from dahacm.linalg import QMatrix
from dahacm.symgroup import enumerate_sn

from conftest import rationals

F = Fraction
TC = [(F(1), F(1)), (F(0), F(1)), (F(2), F(-3, 2))]


def x(n, i, flavor=RATIONAL, power=1):
    return LaurentPoly.var(n, i, flavor, power)


def const(n, c, flavor=RATIONAL):
    return LaurentPoly.monomial([0] * n, flavor, c)


# --- polynomials and divided differences -----------------------------------------------

def test_divided_difference_examples():
    assert divided_difference(x(2, 1), 1, 2) == const(2, -1)
    assert divided_difference(x(2, 1) * x(2, 1), 1, 2) == -(x(2, 1) + x(2, 2))
    sym = x(2, 1) * x(2, 2) + x(2, 1) + x(2, 2)
    assert divided_difference(sym, 1, 2).is_zero()


laurent_terms = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
                                rationals, max_size=5)


@given(laurent_terms, st.sampled_from([(1, 2), (2, 1), (1, 3), (3, 2)]))
def test_divided_difference_property(terms, ij):
    i, j = ij
    f = LaurentPoly.from_dict(terms, 3, TRIG)
    g = divided_difference(f, i, j)
    assert (x(3, i, TRIG) - x(3, j, TRIG)) * g == f.swap(i, j) - f


def test_polynomial_flavor_rejects_negative_exponents():
    with pytest.raises(FlavorError):
        LaurentPoly.monomial([-1, 0], RATIONAL)


# --- Dunkl operators ---------------------------------------------------------------------------

def test_dunkl_examples():
    t, c = F(3), F(5, 2)
    p = DegenParams(2, t, c, RATIONAL)
    assert dunkl_apply(p, 1, const(2, 1)).is_zero()
    assert dunkl_apply(p, 1, x(2, 1)) == const(2, t - c)
    assert dunkl_apply(p, 1, x(2, 2)) == const(2, c)


def test_dunkl_flavor_mismatch():
    with pytest.raises(FlavorError):
        dunkl_apply(DegenParams(2, 1, 1, TRIG), 1, x(2, 1))


def test_rational_relations_n2():
    assert verify_degenerate_relations(DegenParams(2, 1, 1, RATIONAL), 3).all_passed


def test_dropped_reflection_terms_fail():
    report = verify_degenerate_relations(DegenParams(2, 1, 1, RATIONAL, drop_c=True), 3)
    entry = report.find("[y_1,x_2]=cs_12")
    assert not entry.passed
    assert entry.witness["monomial"] == [0, 0]


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("tc", TC)
def test_rational_relations(n, tc):
    assert verify_degenerate_relations(DegenParams(n, *tc, RATIONAL), 4).all_passed


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("tc", TC)
def test_trig_consistent_relations(n, tc):
    assert verify_degenerate_relations(DegenParams(n, *tc, TRIG), 3, "consistent").all_passed


def test_trig_verbatim_fails_only_on_reflection_sign():
    report = verify_degenerate_relations(DegenParams(2, 0, 1, TRIG), 2)
    assert {e.relation for e in report.failures()} == {"s_ijy_i-y_js_ij=c(j>i),-c(j<i)"}
    assert report.find("X_2^-1y_1X_2-y_1=cs_12").passed


def test_trig_verbatim_passes_at_c_zero():
    assert verify_degenerate_relations(DegenParams(3, 2, 0, TRIG), 3).all_passed


def test_wrong_orientation_breaks_x_relations():
    report = verify_degenerate_relations(DegenParams(2, 1, 1, TRIG, orientation=-1), 2, "consistent")
    assert not report.find("X_2^-1y_1X_2-y_1=cs_12").passed


def test_equivariance():
    assert equivariance_check(DegenParams(3, 2, F(-3, 2), RATIONAL), 4)
    assert not equivariance_check(DegenParams(2, 1, 1, TRIG), 2)


@pytest.mark.parametrize("flavor", [RATIONAL, TRIG])
def test_leading_order(flavor):
    assert leading_order_check(DegenParams(3, F(7, 2), 1, flavor), 4)


def test_window_shape():
    from dahacm.degen import monomial_window
    assert len(monomial_window(2, 2, RATIONAL)) == 6
    assert len(monomial_window(2, 1, TRIG)) == 5


# --- degenerate CM predicates ---------------------------------------------------------------------

def test_degenerate_cm_predicate():
    assert degenerate_cm_predicate(RATIONAL, QMatrix.diag([F(4)]), QMatrix.diag([F(-9)]))
    xm = QMatrix.diag([0, 1])
    ym = QMatrix.from_rows([[0, -1], [1, 0]])  # y_ij = 1/(x_i - x_j)
    assert ((xm * ym - ym * xm).add_scalar(1)).to_lists() == [[1, 1], [1, 1]]
    assert degenerate_cm_predicate(RATIONAL, xm, ym)
    assert not degenerate_cm_predicate(RATIONAL, QMatrix.zeros(2), QMatrix.zeros(2))
    with pytest.raises(ZeroDivisionError):
        degenerate_cm_predicate(TRIG, QMatrix.zeros(2), QMatrix.zeros(2))


def test_trig_predicate_on_chart_like_pair():
    # X = diag(1, 2): X^-1 y X - y has (i, j) entry (X_j/X_i - 1) y_ij
    X = QMatrix.diag([1, 2])
    y = QMatrix.from_rows([[5, -1], [2, 7]])
    assert degenerate_cm_predicate(TRIG, X, y)


# --- dual module ---------------------------------------------------------------------------------------

def test_tbar_n2_by_hand():
    b = trig_dual_rep(2, 1, [3, 5], [0, 2])
    T = b.matTbar[0]
    assert T.to_lists() == [[F(1, 2), F(1, 2)], [F(3, 2), F(-1, 2)]]
    assert T * T == QMatrix.identity(2)


def test_dual_c_zero_is_induced_module():
    b = trig_dual_rep(3, 0, [3, 5, -2], [0, 2, 7])
    assert b.matTbar == b.matS
    assert verify_dual_relations(b).all_passed


def test_dual_degenerate_beta():
    with pytest.raises(GenericityError):
        trig_dual_rep(2, 1, [3, 5], [1, 1])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dual_relations(n):
    b = trig_dual_rep(n, F(-3, 2), [F(k + 2) for k in range(n)], [F(k * k + 1, 2) for k in range(n)])
    assert verify_dual_relations(b, "consistent").all_passed
    verbatim = verify_dual_relations(b)
    assert {e.relation for e in verbatim.failures()} <= {"s_ijy_i-y_js_ij=c(j>i),-c(j<i)", "[y_k,s_ij]=0"}
    assert not verbatim.all_passed


# --- degeneration shadow -----------------------------------------------------------------------------

@pytest.mark.parametrize("kappa,beta", [(F(1), [F(0), F(2)]), (F(-3, 4), [F(5), F(-1, 3)])])
def test_degeneration_limit(kappa, beta):
    limit, tbar = degeneration_limit(kappa, beta)
    assert limit == tbar


def test_first_order_hecke_against_finite_differences():
    kappa, nu = F(2, 3), [F(1), F(3), F(-2)]
    s_list, st_list = first_order_hecke(3, kappa, nu)
    assert s_list[0] == tbar_matrix(enumerate_sn(3), F(0), [F(1), F(2), F(3)], 1)

    def residual(h):
        rep = build_rep(DahaParams(3, 1 + kappa * h), Character((1, 1, 1), tuple(nu)))
        D = (rep.matT[0] - s_list[0]).scale(1 / h) - st_list[0]
        return max(abs(v) for row in D.to_lists() for v in row)

    big, small = residual(F(1, 10**3)), residual(F(1, 10**6))
    assert 0 < small < big / 100
