"""Seeded random symbols and the index test suite."""

from dataclasses import dataclass

import numpy as np

from .fourier import CoeffFn, cf_map
from .symbol import ClassicalSymbol, HomComponent, sym_add

# Order -1 perturbations are kept small: kernel vectors of the perturbed
# operator then decay fast enough for the K <= 24 oracle windows.
PERTURB_AMPLITUDE = 0.02
SUITE_MODES = (16, 18, 20, 22, 24)


def rng_from(seed):
    return np.random.default_rng(seed)


def random_coeff(rng, band, amp=1.0, shape=()):
    """Random trig polynomial with complex Gaussian coefficients on ``|k| <= band``."""
    ks = range(-band, band + 1)
    size = (len(ks),) + tuple(shape)
    c = amp * (rng.normal(size=size) + 1j * rng.normal(size=size)) / np.sqrt(2)
    return CoeffFn(-band, c)


def random_symbol(rng, order=0, depth=4, band=3, dim=1, amp=1.0):
    """Every component random with bandwidth ``band``."""
    comps = []
    for j in range(depth):
        p = random_coeff(rng, band, amp, (dim, dim))
        m = random_coeff(rng, band, amp, (dim, dim))
        comps.append(HomComponent(order - j, p, m))
    return ClassicalSymbol(order, depth, comps, dim)


def winding_symbol(w, side="plus", depth=4):
    """``(e^{iwx}; 1)`` for ``side='plus'``, ``(1; e^{iwx})`` for ``side='minus'``."""
    e = CoeffFn.monomial(w)
    pair = (e, 1.0) if side == "plus" else (1.0, e)
    return ClassicalSymbol.from_branches(0, depth, {0: pair})


def shift_symbol(a, b, depth=4):
    """``(e^{iax}; e^{ibx})``, of index ``b - a``."""
    return ClassicalSymbol.from_branches(0, depth, {0: (CoeffFn.monomial(a), CoeffFn.monomial(b))})


def perturbation(rng, depth, dim=1, band=2, amp=PERTURB_AMPLITUDE):
    """Random symbol of order -1 (trusted to the same floor as an order-0 symbol of ``depth``)."""
    return random_symbol(rng, order=-1, depth=depth - 1, band=band, dim=dim, amp=amp)


def perturb(Q, rng, band=2, amp=PERTURB_AMPLITUDE):
    return sym_add(Q, perturbation(rng, Q.depth, Q.dim, band, amp))


def zero_winding_multiplier(rng, band=2, amp=0.3):
    """``exp(f)`` for a small random trig polynomial ``f``: invertible, winding zero."""
    f = random_coeff(rng, band, amp)
    return cf_map(f, np.exp)


def multiply_left(m, Q):
    """``m(x) Q``: an x-only multiplier has no p-derivatives, so the star product is pointwise."""
    def lift(f):
        return CoeffFn(m.lo, m.c[:, None, None] * np.eye(Q.dim)) @ f

    comps = [HomComponent(c.degree, lift(c.plus), lift(c.minus)) for c in Q.components]
    return ClassicalSymbol(Q.order, Q.depth, comps, Q.dim)


def conjugate(Q, C):
    """``C Q C^-1`` for a constant invertible matrix ``C``."""
    C = np.asarray(C, dtype=complex)
    Ci = np.linalg.inv(C)
    return Q.map_branches(lambda f: CoeffFn(f.lo, np.einsum("ij,kjl,lm->kim", C, f.c, Ci)))


def random_invertible(rng, dim, cond_max=10.0):
    while True:
        C = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        if np.linalg.cond(C) < cond_max:
            return C


def block_mix(depth=4):
    """``diag((e^{ix}; 1), (1; e^{-2ix}))``: index ``-1 + -2 = -3``."""
    return ClassicalSymbol.block_diag(winding_symbol(1, "plus", depth),
                                      winding_symbol(-2, "minus", depth))


@dataclass
class SuiteCase:
    name: str
    symbol: ClassicalSymbol
    expected: int


def index_suite(seed=0, depth=4):
    """Windings -3..3 on either branch, a 2x2 block mix, and each of them perturbed."""
    rng = rng_from(seed)
    base = []
    for w in range(-3, 4):
        base.append(SuiteCase(f"plus_w{w}", winding_symbol(w, "plus", depth), -w))
        base.append(SuiteCase(f"minus_w{w}", winding_symbol(w, "minus", depth), w))
    base.append(SuiteCase("block_mix", block_mix(depth), -3))
    cases = list(base)
    for c in base:
        cases.append(SuiteCase(c.name + "_perturbed", perturb(c.symbol, rng), c.expected))
    return cases
