from fractions import Fraction
from dataclasses import replace

import hypothesis.strategies as st
import pytest
from hypothesis import assume, given

from dahacm.daha import (
    Character,
    DahaParams,
    GenericityError,
    build_rep,
    cm_map,
    commutant_dimension,
    commutator_x1y1,
    commutator_y1x1,
    gl2z_twist,
    invariant_basis,
    rank_one_defect,
    regularity_check,
    rep_to_json,
    symmetrizer,
    symmetrizer_checks,
    transposition_sum_spectrum,
    verify_relations,
    y_operators_printed,
    ybar_diagonal_formula,
    z_element,
    z_matrix,
)
from dahacm.linalg import QMatrix, nullspace, rank
from dahacm.rng import RationalStream
from dahacm.symgroup import Permutation, enumerate_sn, reduced_word, reduced_words

from conftest import nonzero_rationals, taus

F = Fraction


def example_rep():
    return build_rep(DahaParams(2, F(2)), Character((F(5), F(7)), (F(1), F(3))))


def seeded_rep(n, tau, seed):
    s = RationalStream(seed)
    return build_rep(DahaParams(n, tau), Character(tuple(s.rationals(n, nonzero=True)),
                                                   tuple(s.chart_values(n, tau))))


@st.composite
def generic_reps(draw, n):
    tau = draw(taus)
    nu = draw(st.lists(nonzero_rationals, min_size=n, max_size=n, unique=True))
    assume(all(tau * a != b / tau for a in nu for b in nu if a != b))
    mu = draw(st.lists(nonzero_rationals, min_size=n, max_size=n))
    return build_rep(DahaParams(n, tau), Character(tuple(mu), tuple(nu)))


# --- construction -----------------------------------------------------------------

def test_n2_matrices():
    rep = example_rep()
    assert rep.matX[0] == QMatrix.diag([1, 3])
    T = rep.matT[0]
    assert T.column(0) == [F(9, 4), F(11, 4)]
    assert T.column(1) == [F(-1, 4), F(-3, 4)]
    assert T.trace() == F(3, 2)
    assert T[0, 0] * T[1, 1] - T[0, 1] * T[1, 0] == -1


def test_n2_hecke_matrix_independent_evaluation():
    # T = tau s + (tau - tau^-1)/(X_1/X_2 - 1) (s - 1), X_j on w (x) 1 equal to nu_{w^-1(j)}
    tau, nu = F(2), (F(1), F(3))
    gap = tau - 1 / tau
    coeff_id = gap / (nu[0] / nu[1] - 1)  # basis vector id
    coeff_s = gap / (nu[1] / nu[0] - 1)  # basis vector s_1
    # T(id) = tau s + c_s s - c_id id  (the coefficient acts after s moves id to s)
    col_id = [-coeff_id, tau + coeff_s]
    col_s = [tau + coeff_id, -coeff_s]
    assert example_rep().matT[0].to_lists() == [[col_id[0], col_s[0]], [col_id[1], col_s[1]]]


def test_n1():
    rep = build_rep(DahaParams(1, F(3)), Character((F(4),), (F(6),)))
    assert rep.matX[0] == QMatrix.diag([6])
    assert rep.matPi == QMatrix.diag([F(1, 4)])
    assert rep.matT == ()
    assert verify_relations(rep).all_passed


def test_genericity_errors():
    with pytest.raises(GenericityError):
        Character((F(1), F(1)), (F(2), F(2)))
    with pytest.raises(GenericityError):
        DahaParams(2, F(1))
    with pytest.raises(ValueError, match="n out of range"):
        DahaParams(0, F(2))


def test_json_export_has_only_strings():
    doc = rep_to_json(example_rep())
    assert doc["matrices"]["T"][0] == [["9/4", "-1/4"], ["11/4", "-3/4"]]
    assert doc["basis"] == [[1, 2], [2, 1]]


# --- relations ---------------------------------------------------------------------

def test_n2_relations():
    rep = example_rep()
    report = verify_relations(rep)
    assert report.all_passed
    T, X = rep.matT[0], rep.matX[0]
    assert T * X * T == QMatrix.diag([3, 1]) == rep.matX[1]


def test_tau_one_group_algebra():
    for n in (2, 3):
        rep = build_rep(DahaParams(n, F(1), strict=False),
                        Character(tuple(F(k + 2) for k in range(n)), tuple(F(k + 1) for k in range(n))))
        assert verify_relations(rep).all_passed
        for T in rep.matT:
            rows = T.to_lists()
            assert all(sorted(r) == [0] * (len(r) - 1) + [1] for r in rows)


def test_forced_relation_failure_has_witness():
    rep = example_rep()
    I = rep.identity()
    broken = replace(rep, matT=(I,), matTinv=(I,))
    entry = verify_relations(broken).find("T_1X_1T_1=X_2")
    assert not entry.passed
    assert set(entry.witness) == {"row", "col", "lhs", "rhs"}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_relations_seeded(n):
    for seed in range(4):
        for tau in (F(2), F(3, 2), F(-5, 7)):
            assert verify_relations(seeded_rep(n, tau, seed)).all_passed


@given(generic_reps(3))
def test_relations_property(rep):
    assert verify_relations(rep).all_passed


def test_printed_y_pattern_breaks_for_middle_indices():
    rep = seeded_rep(3, F(2), 1)
    printed = y_operators_printed(rep)
    assert printed[0] == rep.matY[0] and printed[2] == rep.matY[2]
    assert printed[1] != rep.matY[1]
    T = rep.matT
    assert T[0] * printed[1] * T[0] != printed[0]


# --- invariants ------------------------------------------------------------------------

def test_invariant_basis_n2():
    assert invariant_basis(example_rep()) == [[1, 0], [0, 1]]


def test_invariant_basis_n3():
    rep = seeded_rep(3, F(2), 0)
    idx = {w: k for k, w in enumerate(enumerate_sn(3))}
    s1, s2 = Permutation.simple(3, 1), Permutation.simple(3, 2)
    e = Permutation.identity(3)
    expected = [
        {idx[e], idx[s2]},
        {idx[s1], idx[s2 * s1]},
        {idx[s1 * s2 * s1], idx[s1 * s2]},
    ]
    got = invariant_basis(rep)
    assert [{k for k, x in enumerate(v) if x} for v in got] == expected
    assert all(set(v) <= {0, 1} for v in got)
    assert len(nullspace(rep.matT[1].add_scalar(-rep.tau))) == 3


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_invariant_space_dimension(n):
    assert len(invariant_basis(seeded_rep(n, F(3, 2), 2))) == n


# --- the map to CM space ------------------------------------------------------------------

def test_cm_map_n2():
    res = cm_map(example_rep())
    assert res.Xbar == QMatrix.diag([1, 3])
    assert res.Ybar.diagonal() == [F(-5, 4), F(77, 4)]
    assert res.ok and all(res.swapped.values())


def test_cm_map_n1():
    res = cm_map(build_rep(DahaParams(1, F(2)), Character((F(5),), (F(3),))))
    assert res.Xbar == QMatrix.diag([3]) and res.Ybar == QMatrix.diag([5])
    assert res.ok


def test_ybar_formula_by_hand():
    assert ybar_diagonal_formula(2, [5, 7], [1, 3]) == [F(-5, 4), F(77, 4)]


@given(generic_reps(3))
def test_cm_map_property(rep):
    res = cm_map(rep)
    assert res.certificate["Xbar=diag(nu)"]
    assert res.certificate["Ybar_ii=mu_i*prod"]
    assert res.swapped["rank(tau*YX-tau^-1*XY)=1"]
    # rank-one matrix B_ij = (tau lam_j - tau^-1 lam_i) Ybar_ij, the swapped orientation
    lam, tau = rep.character.nu, rep.tau
    Y = res.Ybar.to_lists()
    B = QMatrix.from_rows([[(tau * lam[j] - lam[i] / tau) * Y[i][j] for j in range(3)] for i in range(3)])
    assert rank(B) == 1


def test_cm_rank_literal_order_fails_for_n3():
    res = cm_map(seeded_rep(3, F(2), 0))
    assert not res.certificate["rank(tau*XY-tau^-1*YX)=1"]
    assert rank(rank_one_defect(F(2), res.Xbar, res.Ybar)) == 3


# --- Z element -----------------------------------------------------------------------------

def test_z_n2():
    res = z_element(example_rep())
    assert res.spectrum == [F(1, 4), F(4)]
    assert res.Zmat == example_rep().matT[0] * example_rep().matT[0]


def test_z_n3():
    res = z_element(seeded_rep(3, F(2), 5))
    assert res.spectrum == [F(1, 4), F(1, 4), F(16)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_commutator_orientation(n):
    rep = seeded_rep(n, F(3, 2), 3)
    Z = z_matrix(rep)
    assert commutator_y1x1(rep) == Z
    assert commutator_x1y1(rep) != Z
    assert commutator_x1y1(rep) * Z == rep.identity()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_transposition_sum_spectrum(n):
    assert transposition_sum_spectrum(n) == [F(-1)] * (n - 1) + [F(n - 1)]


# --- symmetrizer, regularity, commutant ---------------------------------------------------

def test_symmetrizer_n2():
    rep = example_rep()
    e = symmetrizer(rep)
    assert e == (rep.identity() + rep.matT[0].scale(2)).scale(F(1, 5))
    assert e * e == e


def test_symmetrizer_n1():
    rep = build_rep(DahaParams(1, F(2)), Character((F(5),), (F(3),)))
    assert symmetrizer(rep) == rep.identity()


def test_symmetrizer_n3():
    rep = seeded_rep(3, F(2), 4)
    e = symmetrizer(rep)
    checks = symmetrizer_checks(rep, e, [["X1"], ["Y1"], ["X1", "Y2", "T1"]])
    assert all(checks.values())
    a, b = e * rep.matX[0] * e, e * rep.matY[0] * e
    assert a * b == b * a


def test_symmetrizer_word_independence():
    rep = seeded_rep(4, F(3, 2), 6)
    base = symmetrizer(rep)
    s = RationalStream(11)
    words = {}
    perms = enumerate_sn(4)
    for _ in range(5):
        w = perms[s.integer(0, len(perms) - 1)]
        alts = [a for a in reduced_words(w) if a != reduced_word(w)]
        if alts:
            words[w] = alts[-1]
    assert words
    assert symmetrizer(rep, words) == base


def test_regularity():
    assert regularity_check(example_rep())
    assert regularity_check(seeded_rep(3, F(2), 8))
    rep = example_rep()
    T = rep.identity().scale(rep.tau)
    assert not regularity_check(replace(rep, matT=(T,)))


def test_commutant():
    assert commutant_dimension(example_rep()) == 1
    assert commutant_dimension(seeded_rep(3, F(2), 9)) == 1
    degenerate = build_rep(DahaParams(2, F(1), strict=False), Character((F(1), F(1)), (F(1), F(1)), strict=False))
    assert commutant_dimension(degenerate) >= 2


# --- GL(2, Z) twists ------------------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4])
def test_epsilon_twist(n):
    rep = seeded_rep(n, F(2), 12)
    eps = gl2z_twist(rep, "epsilon")
    assert eps.tau == F(1, 2)
    assert verify_relations(eps).all_passed
    back = gl2z_twist(eps, "epsilon")
    assert back.matX == rep.matX and back.matY == rep.matY and back.matT == rep.matT


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sigma_twists(n):
    rep = seeded_rep(n, F(2), 13)
    literal = verify_relations(gl2z_twist(rep, "sigma"))
    assert not literal.find("T_1Y_2T_1=Y_1").passed
    sig = gl2z_twist(rep, "sigma-pi")
    assert verify_relations(sig).all_passed
    assert sig.matX == rep.matX and sig.matT == rep.matT
    assert sig.matY[-1] == rep.matX[-1] * rep.matY[-1]
    assert sig.matY[0] == rep.matY[0] * rep.matX[0]


def test_unknown_twist():
    with pytest.raises(ValueError):
        gl2z_twist(example_rep(), "rho")
