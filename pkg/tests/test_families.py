import math

import pytest

from polargraphs.errors import InvalidArgs, InvalidFamilyArgs, OutOfLemmaRange
from polargraphs.families import (
    Family,
    build_family,
    family_lambda,
    family_params,
    family_srg,
    lemma_lambda,
    parse_family,
    positive_root,
    predict_verdict,
    prime_powers,
    proof_inequality,
    remark_gap,
    remark_polynomial,
    remark_q0,
)
from polargraphs.spectral import VerdictClass, exact_spectrum, srg_params

R = VerdictClass


def test_family_params_examples():
    p = family_params("no-", 2)
    assert (p.n, p.d, p.lambda2, p.lambda3) == (10, 3, -2, 1)
    p = family_params("nu", 3, 2)
    assert (p.n, p.d, p.lambda2, p.lambda3) == (12, 9, -3, 0)
    p = family_params("nu", 3, 3)
    assert (p.n, p.d, p.lambda2, p.lambda3) == (63, 32, -4, 4)


def test_nu_vertex_count_general_formula_not_q2_shortcut():
    # q^(m-1)(q^m - eps)/(q+1) at q = 2, m = 3 versus 2^(2m-1) - eps 2^(m-1)
    assert family_params("nu", 3, 2).n == 12
    assert build_family("nu", 3, 2).n == 12


def test_family_params_match_construction_examples():
    for fam, m, q in [("no+", 3, 2), ("no-", 4, 2), ("no-odd", 3, 2), ("nu", 3, 3), ("nu", 5, 2)]:
        p = family_params(fam, m, q)
        G = build_family(fam, m, q)
        assert (G.n, G.regular_degree()) == (p.n, p.d)
        spec, params = exact_spectrum(G)
        assert params == family_srg(fam, m, q)
        assert sorted(v for v, _ in spec.entries[1:]) == sorted({p.lambda2, p.lambda3})


def test_srg_feasibility_for_all_closed_forms():
    for fam in ("no+", "no-", "no-odd"):
        for m in range(2, 13):
            assert family_srg(fam, m).feasible()
    for q in prime_powers(2, 16):
        for m in range(3, 9):
            assert family_srg("nu", m, q).feasible()


def test_family_lambda_examples():
    assert family_lambda("no-", 2) == (2, True)
    assert family_lambda("no+", 4).value == 9
    assert family_lambda("nu", 5, 2).value == 9
    assert family_lambda("nu", 4, 3).lemma


@pytest.mark.parametrize("fam", ["no+", "no-", "no-odd"])
def test_closed_lambda_equals_eigenvalue_max(fam):
    for m in range(2, 13):
        p = family_params(fam, m)
        assert lemma_lambda(fam, m) == max(abs(p.lambda2), abs(p.lambda3))


def test_closed_lambda_nu_equals_eigenvalue_max():
    for q in prime_powers(2, 16):
        for m in range(3, 10):
            p = family_params("nu", m, q)
            assert lemma_lambda("nu", m, q) == max(abs(p.lambda2), abs(p.lambda3))


def test_closed_lambda_out_of_range():
    with pytest.raises(OutOfLemmaRange):
        lemma_lambda("no+", 1)
    with pytest.raises(OutOfLemmaRange):
        lemma_lambda("nu", 2, 2)


def test_bad_arguments():
    with pytest.raises(InvalidFamilyArgs):
        family_params("no+", 0)
    with pytest.raises(InvalidFamilyArgs):
        family_params("no+", 2, 3)
    with pytest.raises(InvalidFamilyArgs):
        family_params("nu", 3, 6)
    with pytest.raises(InvalidFamilyArgs):
        family_params("nu", 1, 2)
    with pytest.raises(InvalidFamilyArgs):
        parse_family("lps")
    with pytest.raises(InvalidArgs):
        remark_polynomial(2, 2)


def test_aliases():
    assert parse_family("gq") is Family.NO_ODD
    assert parse_family("gamma-w") is Family.NO_ODD
    assert parse_family("NU") is Family.NU


def test_predict_verdict_examples():
    assert predict_verdict("no+", 2) is R.BIPARTITE_RAMANUJAN
    assert predict_verdict("nu", 7, 2) is R.RAMANUJAN
    assert predict_verdict("nu", 3, 8) is R.NON_RAMANUJAN
    p = family_params("nu", 3, 8)
    assert max(abs(p.lambda2), abs(p.lambda3)) == 8 * 8 - 8 - 1 - 1
    for fam in ("no+", "no-", "no-odd"):
        assert predict_verdict(fam, 1) is R.DEGENERATE
    assert predict_verdict("nu", 2, 5) is R.DEGENERATE


def test_ramanujan_ranges_by_formula():
    for m in range(3, 13):
        assert predict_verdict("no+", m) is R.RAMANUJAN
    for m in range(2, 13):
        assert predict_verdict("no-", m) is R.RAMANUJAN
        assert predict_verdict("no-odd", m) is R.RAMANUJAN
    for m in range(3, 13):
        assert predict_verdict("nu", m, 2) is R.RAMANUJAN


def test_thresholds():
    assert round(positive_root(3, -2, -9), 3) == 2.097
    assert round(positive_root(3, 2, -9), 3) == 1.431
    assert round(positive_root(7, -2, -13), 3) == 1.513
    assert positive_root(7, -2, -9) == 9 / 7
    # independent float check of the quadratic formula
    for a, b, c in [(3, -2, -9), (3, 2, -9), (7, -2, -13), (7, -2, -9), (7, 2, -9)]:
        assert math.isclose(positive_root(a, b, c), (-b + math.sqrt(b * b - 4 * a * c)) / (2 * a))


def test_proof_inequality_examples():
    ineq = proof_inequality("no+", 2)
    assert not ineq.holds and ineq.x == 2
    assert proof_inequality("no+", 3).holds
    assert math.isclose(proof_inequality("no-odd", 4).threshold, 1.5131, abs_tol=1e-4)
    for m in (3, 5, 7, 9, 11):
        ineq = proof_inequality("nu", m)
        assert ineq.kind == "nu-odd" and ineq.holds and ineq.x >= 1
    with pytest.raises(InvalidFamilyArgs):
        proof_inequality("nu-even", 3)


def _direct_test(fam, m):
    """lambda^2 <= 4(d-1) from the raw closed forms, no package logic involved."""
    if fam in ("no+", "no-"):
        eps = 1 if fam == "no+" else -1
        d = 2 ** (2 * m - 2) - 1
        lam = max(abs(eps * 2 ** (m - 2) - 1), abs(-eps * 2 ** (m - 1) - 1))
    elif fam == "no-odd":
        d = 2 ** (2 * m - 1) - 2
        lam = 2 ** (m - 1) + 1
    else:
        eps = (-1) ** m
        d = (2 ** (m - 1) + eps) * (2 ** (m - 2) - eps)
        lam = max(abs(eps * 2 ** (m - 2) - 1), abs(-eps * 2 ** (m - 3) - 1))
    return lam * lam <= 4 * (d - 1)


@pytest.mark.parametrize("fam,m_min", [("no+", 2), ("no-", 2), ("no-odd", 2), ("nu", 3)])
def test_inequality_agrees_with_direct_test(fam, m_min):
    for m in range(m_min, 13):
        assert proof_inequality(fam, m).holds == _direct_test(fam, m), (fam, m)


def test_large_q_polynomial_example():
    assert remark_polynomial(3, 2, -1) <= 0
    assert predict_verdict("nu", 3, 2) is R.RAMANUJAN


def test_large_q_gap_offset_is_one():
    # expanding lambda^2 - 4(d-1) exactly gives the polynomial plus one
    for m in range(3, 8):
        for q in range(2, 20):
            assert remark_gap(m, q) == remark_polynomial(m, q) + 1


def test_large_q_sign_matches_direct_test():
    for m in range(3, 7):
        for q in prime_powers(2, 16):
            ramanujan = predict_verdict("nu", m, q) is R.RAMANUJAN
            assert (remark_polynomial(m, q) <= 0) == ramanujan, (m, q)


def test_large_q_threshold_q0():
    for m in range(3, 7):
        q0 = remark_q0(m)
        assert q0 is not None
        for q in prime_powers(q0, 16):
            assert predict_verdict("nu", m, q) is R.NON_RAMANUJAN
    assert remark_q0(3) == 7


def test_degenerate_srg_raises():
    with pytest.raises(InvalidFamilyArgs):
        family_srg("nu", 2, 2)


def test_nu_q3_srg_certified():
    G = build_family("nu", 4, 3)
    assert srg_params(G) == family_srg("nu", 4, 3)
