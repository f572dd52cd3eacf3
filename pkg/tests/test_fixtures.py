import pytest

from defectlab.fixtures import (
    SOURCES,
    all_fixtures,
    check_fixture,
    closure_block,
    fixture_names,
    load_fixture,
    oddity_growth_words,
)
from defectlab.returns import complete_returns

FIXTURES = all_fixtures()


def test_names_unique():
    assert len(set(fixture_names())) == len(fixture_names())


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_fixture("no-such-word")


def test_load_examples():
    fx = load_fixture("periodic-12")
    assert fx.spec.period == "abcabcacbacb"
    values = {e.analysis: e.value for e in fx.expected}
    assert values["defect"] == 4 and values["oddities"] == 3
    values = {e.analysis: e.value for e in load_fixture("sigma-fib").expected}
    assert (values["defect"], values["K"], values["H"]) == (1, 2, 5)


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_every_expectation_reproduces(fx):
    for e in fx.expected:
        assert e.source in SOURCES
    failures = [r for r in check_fixture(fx) if not r.passed]
    assert not failures, failures


@pytest.mark.parametrize("fx", [f for f in FIXTURES if f.spec is not None and f.window_policy == "calibrated"],
                         ids=lambda f: f.name)
def test_default_window_is_smallest_power_of_two(fx):
    n = fx.window
    assert n & (n - 1) == 0
    assert not all(r.passed for r in check_fixture(fx, n // 2))


def test_oddity_growth_words():
    for i in range(4):
        small, big, window = oddity_growth_words(i)
        assert small == small[::-1] and big != big[::-1]
        assert big in complete_returns(window, small).complete_returns
    lengths = [len(oddity_growth_words(i)[1]) for i in range(4)]
    assert lengths == sorted(set(lengths))


def test_closure_block_shape():
    assert closure_block(0) == "011022"
