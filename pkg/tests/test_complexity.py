import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from defectlab.complexity import (
    FactorIndex,
    SuffixAutomaton,
    eq1_profile,
    factor_complexity,
    find_N,
    reversal_closure_check,
    richness_via_bispecials,
    special_report,
    trusted_length,
    trusted_n_max,
)
from defectlab.errors import NotAFactorError, RangeError
from defectlab.words import Morphism, WordSpec, closure_level, generate_prefix

small_words = st.integers(1, 4).flatmap(lambda k: st.text(alphabet="abcd"[:k], max_size=300))
FIB = Morphism.parse("0=01,1=0")
SIGMA = Morphism.parse("0=cabcbac,1=d")
PHI = Morphism.parse("0=0100,1=01011,2=010111")


def sigma_fib(n):
    return generate_prefix(WordSpec.morphic_image(WordSpec.fixed_point(FIB, 1), SIGMA, n))


def test_factor_complexity_examples():
    assert factor_complexity("aaaa", 3) == [1, 1, 1, 1]
    assert factor_complexity(oracles.fibonacci(500), 10) == list(range(1, 12))
    assert factor_complexity(generate_prefix(WordSpec.periodic("abcabcacbacb", 60)), 12)[12] == 12
    with pytest.raises(RangeError):
        factor_complexity("ab", 3)


@given(small_words)
def test_factor_complexity_matches_brute_force(w):
    n_max = min(len(w), 15)
    assert factor_complexity(w, n_max) == oracles.factor_complexity(w, n_max)


@given(small_words)
def test_suffix_automaton_membership(w):
    sam = SuffixAutomaton(w)
    for f in list(oracles.factors(w))[:50]:
        assert f in sam
    assert "e" not in sam


def test_special_report_examples():
    fib = oracles.fibonacci(1000)
    rep = special_report(fib, "")
    assert rep.bilateral_order == 0 and rep.palindromic_extensions == {"0"}
    rep = special_report(fib, "0")
    assert rep.is_bispecial and rep.palindromic_extensions == {"1"}
    rep = special_report("aab", "b")
    assert rep.right_extensions == set() and not rep.is_right_special
    assert rep.bilateral_order is None
    assert special_report("abc", "b").palindromic_extensions == set()
    assert special_report("abc", "ab").palindromic_extensions is None
    with pytest.raises(NotAFactorError):
        special_report("abc", "ca")
    with pytest.raises(NotAFactorError):
        special_report("abc", "abcd")


@given(small_words, st.integers(0, 6))
def test_first_difference_is_sum_over_right_extensions(w, n):
    if n + 1 > len(w):
        return
    table = FactorIndex(w).level(n)
    C = factor_complexity(w, n + 1)
    # the suffix occurrence of a length-n factor has no right extension inside the window
    assert C[n + 1] - C[n] == sum(len(st.right) - 1 for st in table.values())
    special = sum(len(st.right) - 1 for st in table.values() if len(st.right) >= 2)
    suffix_only = 1 if n and not table[w[len(w) - n:]].right else 0
    assert C[n + 1] - C[n] == special - suffix_only


def test_eq1_examples():
    assert all(r.residual == 0 for r in eq1_profile(oracles.fibonacci(1000), 20))
    prof = eq1_profile(sigma_fib(4096))
    nonzero = [r.n for r in prof if r.residual]
    assert nonzero and max(nonzero) < len(prof) - 8
    assert all(r.residual == 0 for r in eq1_profile("a" * 50, 30)[1:])
    with pytest.raises(RangeError):
        eq1_profile("abc", 3)


def test_find_N_examples():
    assert find_N(oracles.fibonacci(2000)) == 0
    assert {find_N(sigma_fib(n)) for n in (1024, 4096, 8192)} == {2}
    phi_v = WordSpec.morphic_image(WordSpec.closure_sequence(1), PHI, 1)
    values = [find_N(generate_prefix(phi_v.with_length(n))) for n in (1330, 14640, 40000)]
    assert values[0] < values[1] < values[2]


def test_find_N_needs_a_long_zero_run():
    from defectlab.complexity import EqualityResidual as R
    assert find_N("", profile=[R(n, 0) for n in range(7)]) is None
    assert find_N("", profile=[R(0, 1)] + [R(n, 0) for n in range(1, 20)]) == 1
    assert find_N("", profile=[R(n, 0) for n in range(19)] + [R(19, 1)]) is None


def test_trusted_range():
    w = oracles.fibonacci(1000)
    m = trusted_length(w)
    assert factor_complexity(w[:500], m) == factor_complexity(w, m)
    assert trusted_n_max(w) == m - 2
    assert trusted_n_max("a") == 0


def test_richness_via_bispecials_examples():
    assert richness_via_bispecials(oracles.fibonacci(2000), 20).passed
    verdict = richness_via_bispecials(sigma_fib(2048), 20)
    assert not verdict.passed and verdict.offenders
    assert richness_via_bispecials(oracles.tribonacci(2000), 20).passed


def test_eq1_and_bispecials_agree_on_rich_fixtures():
    for w in (oracles.fibonacci(3000), oracles.tribonacci(3000), closure_level(3)):
        n_max = min(trusted_n_max(w), 40)
        assert not reversal_closure_check(w, n_max + 1)
        eq1_ok = all(r.residual == 0 for r in eq1_profile(w, n_max))
        assert eq1_ok == richness_via_bispecials(w, n_max).passed == True  # noqa: E712


def test_reversal_closure_examples():
    assert reversal_closure_check("abcba", 5) == []
    assert reversal_closure_check(oracles.fibonacci(300), 8) == []
    assert reversal_closure_check("aab", 2) == ["ab"]


@pytest.mark.parametrize("w", [oracles.fibonacci(3000), oracles.tribonacci(3000),
                               sigma_fib(3000), generate_prefix(WordSpec.periodic("abcabcacbacb", 3000))])
def test_residual_nonnegative_on_reversal_closed_windows(w):
    n_max = trusted_n_max(w)
    assert not reversal_closure_check(w, min(n_max + 1, 30))
    assert all(r.residual >= 0 for r in eq1_profile(w, n_max))
