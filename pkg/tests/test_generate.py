import numpy as np

from psindex.generate import (PERTURB_AMPLITUDE, block_mix, index_suite, perturbation, rng_from,
                              zero_winding_multiplier)
from psindex.index import topological_index, winding
from psindex.fourier import CoeffFn


def test_suite_shape():
    cases = index_suite(0)
    assert len(cases) >= 24
    names = {c.name for c in cases}
    assert len(names) == len(cases)
    assert {c.expected for c in cases} >= set(range(-3, 4))


def test_suite_is_seeded():
    a, b = index_suite(3), index_suite(3)
    assert all((x.symbol - y.symbol).max_abs() == 0 for x, y in zip(a, b))


def test_perturbation_bounds():
    p = perturbation(rng_from(1), 4)
    assert p.order == -1 and p.bandwidth() <= 2
    assert p.max_abs() <= PERTURB_AMPLITUDE * 4


def test_zero_winding_multiplier():
    rng = rng_from(2)
    for _ in range(5):
        m = zero_winding_multiplier(rng)
        assert winding(CoeffFn.from_entries([[m]]))[0] == 0


def test_block_mix():
    assert block_mix().dim == 2
    assert topological_index(block_mix()) == -3
    assert np.isfinite(block_mix().max_abs())
