import pytest

from psindex.errors import DepthExhausted
from psindex.fourier import CoeffFn, trig
from psindex.generate import random_symbol
from psindex.residue import wres
from psindex.symbol import ClassicalSymbol, sym_commutator, sym_scale

ONE = CoeffFn.constant(1.0)


def test_degree_minus_one_unit():
    a = ClassicalSymbol.from_branches(-1, 4, {0: (ONE, ONE)})
    assert wres(a) == pytest.approx(2)


def test_order_below_minus_one_vanishes(rng):
    assert wres(ClassicalSymbol.from_branches(-2, 4, {0: (ONE, ONE)})) == 0
    assert wres(random_symbol(rng, -3, 4, 2)) == 0


def test_only_mean_matters():
    f = trig(cos={1: 3.0}, const=0.25)
    a = ClassicalSymbol.from_branches(0, 4, {1: (f, ONE)})
    assert wres(a) == pytest.approx(1.25)


def test_depth_window():
    a = ClassicalSymbol.from_branches(1, 2, {0: (ONE, ONE)})
    with pytest.raises(DepthExhausted):
        wres(a)


def test_matrix_trace():
    a = ClassicalSymbol.identity(4, dim=3)
    b = ClassicalSymbol.from_branches(-1, 4, {0: (a.component_at(0).plus,) * 2}, dim=3)
    assert wres(b) == pytest.approx(6)


def test_linear(rng):
    a, b = random_symbol(rng, 0, 4, 2), random_symbol(rng, 0, 4, 2)
    assert wres(a + sym_scale(b, 2 - 1j)) == pytest.approx(wres(a) + (2 - 1j) * wres(b))


def test_trace_property(rng):
    for _ in range(20):
        a = random_symbol(rng, int(rng.integers(-1, 2)), 4, 3)
        b = random_symbol(rng, int(rng.integers(-1, 2)), 4, 3, dim=1)
        assert abs(wres(sym_commutator(a, b))) <= 1e-10


def test_derivative_has_zero_residue(rng):
    a = random_symbol(rng, 0, 4, 3)
    assert abs(wres(a.dx())) <= 1e-13
