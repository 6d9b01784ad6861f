"""Todd-determinant check of the Wick contraction engine.

With ``s = p_L R dp`` and ``R = eps R0`` the contraction lemma predicts

* ``<exp(D + s)> = Td(R)``,
* ``<dx_i exp(D + s)> = (i/eps) Td(R) (p R)_i`` with ``(p R)_i = sum_j p_j R_ji``,
* ``<(i eps dx + p_L R)^alpha exp(D + s)> = 0`` for ``alpha != 0``,

where ``Td(R) = det(R / (e^R - 1))``.  The left sides come from
:func:`duhamel_exp` and :func:`contract_word`; the right side inverts the
matrix series ``sum_j R^j/(j+1)!`` and takes its determinant.
"""

import math
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .series import EpsSeries, det, exp_like
from .weyl import WeylWord, _unit, contract_product, contract_word, duhamel_exp, word_mul

TODD_TOL = 1e-9


def todd_series(R0, K):
    """``det(R/(e^R - 1))`` for ``R = eps R0`` as an EpsSeries to order ``K``."""
    R0 = np.atleast_2d(np.asarray(R0, dtype=complex))
    S = exp_like(R0, K, lambda j: 1.0 / math.factorial(j + 1))
    return det(S.inverse())


def _poly_discrepancy(got, want, K):
    worst = 0.0
    for g in set(got) | set(want):
        a = got.get(g)
        b = want.get(g)
        for d in range(0, K + 1):
            x = a[d] if a is not None and d <= a.K else 0j
            y = b[d] if b is not None else 0j
            worst = max(worst, abs(x - y))
    return worst


def iden_word(R0, alpha, K):
    """``prod_i (i eps dx_i + (p R)_i)^alpha_i`` as a word."""
    n = len(R0)
    z = (0,) * n
    out = WeylWord.identity(n, K)
    for i, a in enumerate(alpha):
        terms = {(z, _unit(n, i), z): EpsSeries.eps(1, 1j, K + 2)}
        for j in range(n):
            if R0[j][i] != 0:
                terms[(_unit(n, j), z, z)] = EpsSeries.eps(1, complex(R0[j][i]), K + 2)
        x = WeylWord(n, terms, K)
        for _ in range(a):
            out = word_mul(out, x)
    return out


def multi_indices(n, lo, hi):
    return [a for a in iproduct(range(hi + 1), repeat=n) if lo <= sum(a) <= hi]


@dataclass
class ToddReport:
    n: int
    K: int
    todd: list
    exp: float = 0.0
    dx: float = 0.0
    iden: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def max_discrepancy(self):
        return max(self.exp, self.dx, self.iden)

    def passed(self, tol=TODD_TOL):
        return self.max_discrepancy <= tol


def verify_todd(R0, K=6, iden_order=2):
    """Compare both pipelines; returns a :class:`ToddReport`."""
    R0 = [[complex(v) for v in row] for row in np.atleast_2d(np.asarray(R0, dtype=complex))]
    n = len(R0)
    td = todd_series(R0, K)
    s = WeylWord.p_r_dp(R0, K + 1)
    # one extra weight level for the dx prefactor, which carries weight -1
    F1 = duhamel_exp(s, K + 1, max_excess=1)
    rep = ToddReport(n, K, [complex(c) for c in td.coefficients(0, K)])
    z = (0,) * n
    got = contract_word(WeylWord(n, F1.terms, K))
    rep.exp = _poly_discrepancy(got, {z: td}, K)
    worst = 0.0
    for i in range(n):
        got = contract_product(WeylWord.monomial(n, alpha=_unit(n, i), K=K), F1)
        want = {_unit(n, j): td.scale(1j * R0[j][i]) for j in range(n) if R0[j][i] != 0}
        d = _poly_discrepancy(got, want, K)
        rep.detail[f"dx{i}"] = d
        worst = max(worst, d)
    rep.dx = worst
    if iden_order:
        F2 = duhamel_exp(WeylWord.p_r_dp(R0, K), K, max_excess=iden_order)
        worst = 0.0
        for alpha in multi_indices(n, 1, iden_order):
            got = contract_product(iden_word(R0, alpha, K), F2)
            d = _poly_discrepancy(got, {}, K)
            rep.detail[f"iden{alpha}"] = d
            worst = max(worst, d)
        rep.iden = worst
    return rep


def random_rational_matrix(rng, n, bound=4):
    """Entries ``a/b`` with ``|a| <= bound`` and ``1 <= b <= bound``."""
    num = rng.integers(-bound, bound + 1, size=(n, n))
    den = rng.integers(1, bound + 1, size=(n, n))
    return num / den
