from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from hybrid_sums.arith import euler_phi, factorize
from hybrid_sums.audit import (
    PASS,
    UNMET,
    HypothesisError,
    audit_theorem,
    check_dedekind_lfunction,
    check_eq2,
    check_hardy_reduction,
    check_hardy_vanishing,
    check_lemma_23_24,
    check_lsum_lemma,
    reciprocity_check,
    theorem_lhs,
    theorem_lhs_naive,
    theorem_pipeline,
    theorem_rhs,
)
from hybrid_sums.hp_numeric import PrecisionContext
from hybrid_sums.rational_core import r_coefficient


def ctx_q(q):
    return PrecisionContext.for_modulus(q)


# --- exact checks ----------------------------------------------------------

def test_reduction_examples():
    assert check_hardy_reduction("s5-lemma", 1, 1, None, 3).status == PASS
    assert check_hardy_reduction("s2", 1, 1, 1, 4).status == PASS
    r = check_hardy_vanishing("s1", 1, 1, None, 3)
    assert r.status == PASS and r.lhs == 0


def test_reduction_hypotheses_are_markers_not_failures():
    assert check_hardy_reduction("s2", 1, 1, 1, 5).status == UNMET
    assert check_hardy_reduction("s1-half", 3, 1, None, 5).status == UNMET
    assert check_hardy_reduction("s3", 2, None, 2, 5).status == UNMET
    assert check_hardy_reduction("s5-prop", 2, 1, None, 5).status == UNMET
    assert check_hardy_reduction("s5-lemma", 2, 1, None, 5).status == UNMET
    assert check_hardy_reduction("s2", 2, 1, 1, 4).status == UNMET
    with pytest.raises(ValueError):
        check_hardy_reduction("s4", 1, 1, 1, 3)


def test_s1_readings_coincide():
    for q in range(1, 26):
        for h in range(2, 2 * q, 2):
            a = check_hardy_reduction("s1-half", h, 3, None, q)
            b = check_hardy_reduction("s1-inverse2", h, 3, None, q)
            assert a.status == b.status
            if a.status != UNMET:
                assert a.rhs == b.rhs


def test_s3_vanishing_counterexample_is_reported():
    r = check_hardy_vanishing("s3", 2, None, 1, 3)
    assert r.status == "fail" and r.lhs == Fraction(-1, 3)
    assert check_hardy_vanishing("s3", 2, None, 1, 3, "symmetry").status == UNMET


def test_eq2_examples():
    for q in (3, 5, 9):
        for h in range(1, 2 * q, 2):
            for m in (1, 3):
                r = check_eq2(h, m, q)
                assert r.status in (PASS, UNMET)
    assert check_eq2(2, 1, 3).status == UNMET


def test_reciprocity_examples():
    r = reciprocity_check(1, 3)
    assert r.status == PASS and r.lhs == r.rhs == Fraction(1, 18)
    assert reciprocity_check(1, 2).status == PASS
    assert reciprocity_check(2, 4).status == UNMET


# --- analytic lemmas ---------------------------------------------------------

def test_dedekind_lfunction_examples():
    r = check_dedekind_lfunction(1, 1, 1, 3, ctx_q(3))
    assert r.lhs == Fraction(1, 18) and r.status == PASS
    assert check_dedekind_lfunction(1, 1, 1, 5, ctx_q(5)).status == PASS
    assert check_dedekind_lfunction(2, 1, 3, 9, ctx_q(9)).status == PASS
    assert check_dedekind_lfunction(3, 1, 1, 9, ctx_q(9)).status == UNMET


def test_lemma_23_24_counts():
    results = check_lemma_23_24(9, ctx_q(9))
    assert sum(1 for r in results if r.id == "Lemma2.3") == 5
    assert all(r.status == PASS for r in results)
    r16 = check_lemma_23_24(16, ctx_q(16))
    vanishing = [r for r in r16 if r.id == "Lemma2.4"]
    assert vanishing and all(r.status == PASS for r in r16)
    assert all(r.status == PASS for r in check_lemma_23_24(25, ctx_q(25)))


def test_lemma_24_needs_square_full():
    assert any(r.status == UNMET for r in check_lemma_23_24(12, ctx_q(12)))


def test_lsum_examples_that_hold():
    assert check_lsum_lemma("2.5", 3, 1, 1, ctx_q(3)).status == PASS
    assert check_lsum_lemma("2.6", 8, 1, 1, ctx_q(8)).status == PASS
    assert check_lsum_lemma("2.7", 9, 1, 1, ctx_q(9)).status == PASS


def test_lsum_conj_two_example():
    """The (2.8, q=9, m=1, n=3) example against the printed closed form."""
    assert check_lsum_lemma("2.8", 9, 1, 3, ctx_q(9)).status == PASS


# --- theorem closed forms ----------------------------------------------------

def _symbolic_rhs(theorem, form, q, m, n):
    """Second transcription of the printed closed forms, in sympy."""
    Q, two = sympy.Integer(q), sympy.Integer(2)
    primes = [p for p, _ in factorize(q)]

    def P(l, k):
        return sympy.Mul(*[(1 - sympy.Rational(1, p)) * (1 - sympy.Integer(p) ** -l) * (1 - sympy.Integer(p) ** -k) for p in primes])

    def r(a, b, l):
        c = r_coefficient(a, b, l)
        return sympy.Rational(c.numerator, c.denominator)

    phi = sympy.totient(q)
    L = sympy.Symbol("l")
    if theorem == 1:
        terms = [Q**l * r(m, n, l) * P(l, l - m - n + 1) for l in range(m + n + 1)]
        pre = Q ** (4 - 2 * m - 2 * n) if form == "statement" else Q ** (4 - m - n) / phi
    elif theorem == 2:
        f = (-two**L - 2) / (two ** (m - 1) + 1) if form == "statement" else (two**L - two ** (m + 2) - 6) / (two ** (m - 1) + 1)
        terms = [Q ** (l - m) * r(m, 1, l) * f.subs(L, l) * P(l, l - m) for l in range(m + 2)]
        pre = Q ** (m - 2) if form == "statement" else Q ** (3 - m) / phi
    elif theorem == 3 and form == "statement":
        f = two**m * (two**m - two ** (L - 1) + 1) / (two ** (m - 1) + 1) - 1
        terms = [r(m, 1, l) * f.subs(L, l) * Q ** (l - m) * P(l, l - m) for l in range(m + 2)]
        pre = Q ** (2 - 2 * m)
    elif theorem == 3:
        f = (two**L - two ** (m + n) - two ** (n - m) - 3) / (two ** (n - m) + 1)
        terms = [r(m, n, l) * f.subs(L, l) * Q**l * P(l, l - m) for l in range(m + n + 1)]
        pre = Q ** (4 - m - n) / phi
    else:
        k = n if theorem == 4 else m
        a, b = (1, n) if theorem == 4 else (m, 1)
        if form == "statement":
            f = 2 - 4 * (two**L - two ** (k + 1) - 2) / (two**k + 2)
            pre = Q ** (2 - 2 * k)
        else:
            f = (5 * two**k - two ** (L + 1) + 6) / (two ** (k - 1) + 1)
            pre = Q ** (3 - k) / phi
        terms = [r(a, b, l) * Q**l * f.subs(L, l) * P(l, l - k) for l in range(k + 2)]
    value = sympy.nsimplify(pre * sympy.Add(*terms))
    return Fraction(int(value.p), int(value.q))


SHAPES = {
    1: [(1, 1), (1, 3), (3, 5)],
    2: [(1, 1), (3, 1), (5, 1)],
    3: [(1, 1), (1, 3), (3, 5)],
    4: [(1, 1), (1, 3), (1, 5)],
    5: [(1, 1), (3, 1), (5, 1)],
}
MODULI = {1: [4, 9, 72], 2: [8, 25], 3: [4, 36], 4: [9, 49], 5: [25, 27]}


@pytest.mark.parametrize("theorem", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("form", ["statement", "proof"])
def test_closed_forms_match_symbolic_transcription(theorem, form):
    for q in MODULI[theorem]:
        for m, n in SHAPES[theorem]:
            assert theorem_rhs(theorem, form, q, m, n) == _symbolic_rhs(theorem, form, q, m, n)


def test_theorem_one_forms_at_four():
    assert theorem_rhs(1, "statement", 4, 1, 1) == Fraction(1, 4)
    assert theorem_rhs(1, "proof", 4, 1, 1) == 2
    assert euler_phi(4) == 2


def test_hypotheses_enforced():
    with pytest.raises(HypothesisError):
        theorem_rhs(1, "proof", 12, 1, 1)
    with pytest.raises(HypothesisError):
        theorem_lhs(3, 9, 1, 1, ctx_q(9))
    with pytest.raises(HypothesisError):
        theorem_lhs(4, 8, 1, 1, ctx_q(8))
    with pytest.raises(HypothesisError):
        theorem_rhs(2, "statement", 9, 1, 3)
    with pytest.raises(HypothesisError):
        theorem_rhs(1, "statement", 9, 2, 1)


# brute double sums, identified as rationals by an independent prototype
# (mpmath zeta/psi, explicit Hardy-sum definitions) before this package existed
FROZEN_LHS = {
    (1, 4, 1, 1): Fraction(2),
    (1, 8, 1, 1): Fraction(16),
    (1, 9, 1, 3): Fraction(-14, 3),
    (1, 16, 3, 3): Fraction(1233, 512),
    (2, 9, 1, 1): Fraction(-108),
    (2, 16, 3, 1): Fraction(66),
    (3, 8, 1, 1): Fraction(-16),
    (3, 4, 1, 3): Fraction(3, 8),
    (4, 9, 1, 1): Fraction(0),
    (4, 25, 1, 3): Fraction(24),
    (5, 9, 3, 1): Fraction(4),
    (5, 25, 1, 1): Fraction(0),
}


@pytest.mark.parametrize("key", sorted(FROZEN_LHS))
def test_brute_double_sum_frozen(key):
    theorem, q, m, n = key
    ctx = ctx_q(q)
    value, residue = theorem_lhs(theorem, q, m, n, ctx)
    assert residue < ctx.tol
    assert abs(value - ctx.from_rational(FROZEN_LHS[key])) <= ctx.tol * max(1, abs(value))


@pytest.mark.parametrize("theorem,q,m,n", [(1, 8, 1, 1), (1, 27, 3, 1), (2, 16, 1, 1), (3, 32, 1, 3), (4, 25, 1, 1), (5, 27, 1, 1)])
def test_fast_path_matches_naive_double_loop(theorem, q, m, n):
    ctx = ctx_q(q)
    fast, _ = theorem_lhs(theorem, q, m, n, ctx)
    naive, residue = theorem_lhs_naive(theorem, q, m, n, ctx)
    assert residue < ctx.tol
    assert abs(fast - naive) <= ctx.tol * max(1, abs(fast))


def test_pipeline_relations_between_theorems_at_even_moduli():
    # conj(chi)(2) = 0 at even q: weights become -4 (T2) and -1 (T3)
    for q, m, n in [(8, 1, 1), (16, 1, 3), (36, 3, 3)]:
        ctx = ctx_q(q)
        t1 = theorem_pipeline(1, q, m, n, ctx)
        if n == 1:
            assert abs(theorem_pipeline(2, q, m, 1, ctx) + 4 * t1) <= ctx.tol * max(1, abs(t1))
        assert abs(theorem_pipeline(3, q, m, n, ctx) + t1) <= ctx.tol * max(1, abs(t1))


def test_audit_theorem_one_at_four():
    v = audit_theorem(1, 4, 1, 1, ctx_q(4))
    assert v.candidates == {"statement": Fraction(1, 4), "proof": Fraction(2)}
    assert v.verdict == ("proof",)
    assert set(v.verdict) <= set(v.candidates)
    assert v.imag_residue < v.tol and v.pipeline_pass
    assert audit_theorem(1, 4, 1, 1, ctx_q(4)) == v


def test_audit_theorem_four_at_nine():
    v = audit_theorem(4, 9, 1, 1, ctx_q(9))
    assert v.imag_residue < v.tol and v.pipeline_pass
    assert v.verdict == ()


def test_theorem_two_parity_comparison_recorded():
    odd, even = audit_theorem(2, 9, 1, 1, ctx_q(9)), audit_theorem(2, 16, 1, 1, ctx_q(16))
    assert odd.pipeline_pass and even.pipeline_pass
    assert odd.verdict == even.verdict == ()


def test_theorem_five_secondary_range():
    v = audit_theorem(5, 25, 1, 1, ctx_q(25), alt_ranges=True)
    assert v.secondary["range"].startswith("a with (a,q)=1")
    assert v.secondary["imag_residue"] < v.tol
    assert audit_theorem(5, 25, 1, 1, ctx_q(25)).secondary == {}
