import numpy as np
import pytest
import sympy as sp

from psindex.fourier import CoeffFn, trig
from psindex.generate import random_symbol, winding_symbol
from psindex.radul import LogQ, cyclic_check_antisym, cyclic_check_b, logq_commutator, radul
from psindex.residue import wres
from psindex.symbol import ClassicalSymbol, sym_parametrix

E1 = CoeffFn.monomial(1)
ZERO = CoeffFn.zero()
ONE = CoeffFn.constant(1.0)


def general_q(depth=5):
    f = trig(cos={1: 1.0}, const=2.0)
    return ClassicalSymbol.from_branches(1, depth, {0: (f, f)})


def log_commutator_oracle(k, sign):
    """Coefficient of |p|^-k dx^k a in [log|p|, a], from the star series with sympy."""
    p = sp.symbols("p", real=True)
    expr = sp.log(p) if sign > 0 else sp.log(-p)
    val = sp.diff(expr, p, k).subs(p, sign)
    return complex((-sp.I) ** k / sp.factorial(k) * val)


def test_canonical_constant_vanishes():
    L = LogQ.canonical(4)
    a = ClassicalSymbol.from_branches(0, 4, {0: (CoeffFn.constant(2.0), ONE)})
    assert logq_commutator(L, a).max_abs() == 0


def test_canonical_half_generator():
    L = LogQ.canonical(4)
    a = ClassicalSymbol.from_branches(0, 4, {0: (E1, ZERO)})
    got = logq_commutator(L, a)
    for k in range(1, 4):
        comp = got.component_at(-k)
        want = log_commutator_oracle(k, +1) * (1j) ** k
        assert comp.plus.entry(0, 0).allclose(E1.scale(want), 1e-14)
        assert comp.minus.is_zero()


def test_canonical_minus_branch():
    L = LogQ.canonical(4)
    a = ClassicalSymbol.from_branches(0, 4, {0: (ZERO, E1)})
    got = logq_commutator(L, a)
    for k in range(1, 4):
        comp = got.component_at(-k)
        want = log_commutator_oracle(k, -1) * (1j) ** k
        assert comp.minus.entry(0, 0).allclose(E1.scale(want), 1e-14)
        assert comp.plus.is_zero()


def test_log_commutator_signs_against_general_mode():
    a = random_symbol(np.random.default_rng(3), 0, 5, 2)
    c = LogQ.canonical(5).commutator(a)
    # q = |p| exactly gives log q = log|p|
    g = LogQ.general(ClassicalSymbol.from_branches(1, 5, {0: (ONE, ONE)})).commutator(a)
    assert (c.truncate(g.depth) - g).max_abs() < 1e-12


def test_wres_of_log_commutator(rng):
    for L in (LogQ.canonical(4), LogQ.general(general_q())):
        for _ in range(5):
            a = random_symbol(rng, int(rng.integers(-1, 1)), 5, 2)
            assert abs(wres(logq_commutator(L, a))) <= 1e-12


def test_trivial_values(rng):
    L = LogQ.canonical(4)
    a = random_symbol(rng, 0, 4, 2)
    assert abs(radul(L, ClassicalSymbol.identity(4), a)) <= 1e-14
    assert abs(radul(L, a, a)) <= 1e-13


def test_generator_pairing():
    Q = winding_symbol(1, "plus")
    P = sym_parametrix(Q)
    # the index is minus this pairing
    assert radul(LogQ.canonical(4), P, Q) == pytest.approx(1, abs=1e-14)
    assert radul(LogQ.general(general_q()), P, Q) == pytest.approx(1, abs=1e-12)


def test_positive_order_rejected():
    with pytest.raises(ValueError):
        radul(LogQ.canonical(4), general_q(), ClassicalSymbol.identity(4))


@pytest.mark.parametrize("mode", ["canonical", "general"])
def test_cocycle_identities(rng, mode):
    L = LogQ.canonical(4) if mode == "canonical" else LogQ.general(general_q())
    for dim in (1, 2):
        for _ in range(4):
            a0, a1, a2 = (random_symbol(rng, 0, 4, 2, dim=dim) for _ in range(3))
            assert abs(cyclic_check_antisym(L, a0, a1)) <= 1e-10
            assert abs(cyclic_check_b(L, a0, a1, a2)) <= 1e-10


def test_constants_give_zero():
    L = LogQ.canonical(4)
    a = ClassicalSymbol.from_branches(0, 4, {0: (CoeffFn.constant(2.0), CoeffFn.constant(3.0))})
    b = ClassicalSymbol.from_branches(0, 4, {0: (CoeffFn.constant(-1.0), ONE)})
    assert radul(L, a, b) == 0
