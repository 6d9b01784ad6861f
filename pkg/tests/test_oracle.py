import numpy as np
import pytest

from psindex.errors import NoPlateau
from psindex.generate import SUITE_MODES, random_symbol, perturb, shift_symbol, winding_symbol
from psindex.oracle import (defect, exact_shift_index, find_plateau, oracle_index, quantize,
                            quantize_adjoint, shift_exponents)
from psindex.symbol import ClassicalSymbol


def test_identity_embedding():
    op = quantize(ClassicalSymbol.identity(4), 3)
    M = op.matrix
    assert M.shape == (7, 7)
    np.testing.assert_array_equal(M, np.eye(7))
    assert all(defect(ClassicalSymbol.identity(4), K) == 0 for K in (4, 8))


def test_generator_exact_path():
    Q = winding_symbol(1, "plus")
    assert shift_exponents(Q) == (1, 0)
    assert exact_shift_index(1, 0) == -1
    res = oracle_index(Q)
    assert res.index == -1 and res.method == "exact"


def test_generator_range():
    # a(x, 0) is the plus-branch value, so e_0 -> e_1 and e_0 is not hit
    M = quantize(winding_symbol(1, "plus"), 4).matrix
    cod = list(range(-5, 6))
    hit = {cod[int(np.argmax(np.abs(M[:, c])))] for c in range(M.shape[1])}
    assert 0 not in hit and 1 in hit


@pytest.mark.parametrize("a, b", [(2, 0), (0, 3), (-1, 1), (1, -2)])
def test_svd_matches_exact(a, b):
    Q = shift_symbol(a, b)
    res = oracle_index(Q, exact=False)
    assert res.method == "svd" and res.index == b - a


def test_perturbed_winding_two(rng):
    Q = perturb(winding_symbol(2, "plus"), rng)
    res = oracle_index(Q, modes=SUITE_MODES)
    assert res.index == -2 and res.method == "svd"


def test_perturbed_winding_two_default_modes(rng):
    # small perturbations settle within the default windows
    Q = perturb(winding_symbol(2, "plus"), rng, amp=0.005)
    res = oracle_index(Q, modes=(8, 12, 16, 20))
    assert res.index == -2 and res.defects[20] == -2


def test_adjoint_matrix_is_conjugate_transpose(rng):
    Q = random_symbol(rng, 0, 4, 2)
    K = 6
    A, B = quantize(Q, K), quantize_adjoint(Q, K)
    rows = np.flatnonzero(np.abs(A.codomain_modes) <= K)
    # <e_r, A* e_c> = conj <e_c, A e_r> for all modes inside the window
    np.testing.assert_allclose(B.matrix[rows], A.matrix[rows].conj().T, atol=1e-13)


def test_plateau_rule():
    assert find_plateau([0, -1, -1, -1]) == -1
    assert find_plateau([-2, -2, -1, -1]) is None
    with pytest.raises(NoPlateau):
        oracle_index(ClassicalSymbol.identity(4), modes=(4, 8), exact=False)
