from functools import lru_cache
from itertools import product

import numpy as np
import pytest
import sympy as sp

from psindex.errors import CapExceeded, NegativeValuation
from psindex.wick.series import EpsSeries
from psindex.wick.weyl import (WeylWord, contract, contract_word, duhamel_exp, naive_exp,
                               word_mul)

EPS = sp.Symbol("eps", positive=True)
X, P = sp.symbols("x p")


@lru_cache(maxsize=None)
def brute_1d(a, b):
    """d^a/dx^a d^b/dp^b exp(i x p / eps) at x = p = 0, by sympy differentiation."""
    f = sp.exp(sp.I * X * P / EPS)
    return sp.simplify(sp.diff(f, X, a, P, b).subs({X: 0, P: 0}))


def brute(alpha, beta):
    out = sp.Integer(1)
    for a, b in zip(alpha, beta):
        out *= brute_1d(a, b)
    return sp.expand(out)


def multi(n, top):
    return [m for m in product(range(top + 1), repeat=n) if sum(m) <= top]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_contract_matches_differentiation(n):
    for alpha in multi(n, 4):
        for beta in multi(n, 4):
            got = contract(alpha, beta, K=4)
            want = brute(alpha, beta)
            if want == 0:
                assert got.is_zero()
                continue
            k = -sum(alpha)
            coeff = complex(sp.simplify(want * EPS ** sum(alpha)))
            assert got.valuation == k
            assert abs(got[k] - coeff) == 0


def test_contract_examples():
    assert contract((0, 0), (0, 0))[0] == 1
    assert contract((1, 0), (1, 0))[-1] == 1j
    assert contract((1, 0), (0, 1)).is_zero()
    # (i,j) = (1,2), (k,l) = (1,2) or (2,1): both pairings contribute once
    assert contract((1, 1), (1, 1))[-2] == -1
    # (i,j) = (1,1): two pairings
    assert contract((2,), (2,))[-2] == -2


def test_contract_cap():
    with pytest.raises(CapExceeded):
        contract((9,), (9,), cap=8)


def test_normal_ordering():
    # dp * p = p dp + 1
    dp = WeylWord.monomial(1, beta=(1,), K=4, raw=True)
    p = WeylWord.monomial(1, gamma=(1,), K=4, raw=True)
    prod = word_mul(dp, p)
    assert prod.coefficient(((1,), (0,), (1,)))[0] == 1
    assert prod.coefficient(((0,), (0,), (0,)))[0] == 1


def test_word_associative():
    rng = np.random.default_rng(5)

    def rand_word():
        terms = {}
        for _ in range(3):
            key = tuple(tuple(int(v) for v in rng.integers(0, 2, size=2)) for _ in range(3))
            terms[key] = EpsSeries([complex(rng.normal())], int(rng.integers(0, 2)), 5)
        return WeylWord(2, terms, 5, raw=True)

    a, b, c = rand_word(), rand_word(), rand_word()
    lhs = word_mul(word_mul(a, b), c)
    rhs = word_mul(a, word_mul(b, c))
    assert (lhs - rhs).max_abs() < 1e-12


def test_duhamel_zero():
    s = WeylWord(2, {}, 6)
    F = duhamel_exp(s, 6)
    assert F.keys() == WeylWord.identity(2, 6).keys()


@pytest.mark.parametrize("n", [1, 2])
def test_duhamel_matches_naive(n):
    rng = np.random.default_rng(n)
    R0 = rng.normal(size=(n, n))
    K = 5
    s = WeylWord.p_r_dp(R0, K, raw=True)
    F = duhamel_exp(s, K, raw=True)
    D = WeylWord.delta(n, K, raw=True)
    want = word_mul(naive_exp(D + s, K), naive_exp(-D, K))
    assert (F - want).max_abs() < 1e-12


def test_negative_valuation_detected():
    # dx dp with no eps in front contracts to i/eps
    w = WeylWord.monomial(1, alpha=(1,), beta=(1,), K=4)
    with pytest.raises(NegativeValuation):
        contract_word(w)
