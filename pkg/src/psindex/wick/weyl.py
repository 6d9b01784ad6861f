"""Normal-ordered words in ``p_L``, ``d/dx`` and ``d/dp`` with eps-series coefficients.

A key ``(g, a, b)`` of multi-indices stands for ``p^g dx^a dp^b``: all
``p_L`` factors to the left.  Products are reordered with
``dp^b p^g = sum_mu C(b, mu) g!/(g-mu)! p^(g-mu) dp^(b-mu)``; ``dx``
commutes with everything else.

Truncation is by *weight* (eps-degree minus the number of ``dx``), which
is what a contraction ``<dx^a dp^a exp D> ~ eps^-|a|`` sees, or in
``raw`` mode by plain eps-degree.
"""

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from ..errors import CapExceeded, NegativeValuation
from .series import EpsSeries

CONTRACT_CAP = 8
CONJUGATION_CAP = 16


def _add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def counts(indices, n):
    """Turn an index list such as ``(0, 0, 2)`` into a multi-index of length ``n``."""
    out = [0] * n
    for i in indices:
        out[i] += 1
    return tuple(out)


def mfact(alpha):
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


@lru_cache(maxsize=None)
def _reorder(beta, gamma):
    """``[(mu, coeff)]`` for moving ``dp^beta`` past ``p^gamma``."""
    ranges = [range(min(b, g) + 1) for b, g in zip(beta, gamma)]
    out = []
    for mu in iproduct(*ranges):
        c = 1
        for b, g, m in zip(beta, gamma, mu):
            c *= math.comb(b, m) * math.perm(g, m)
        out.append((mu, c))
    return tuple(out)


def _series_to_sparse(c):
    if isinstance(c, EpsSeries):
        return {c.offset + j: complex(v) for j, v in enumerate(c.c) if v != 0}
    c = complex(c)
    return {0: c} if c != 0 else {}


class WeylWord:
    """Finite sum of normal-ordered monomials with eps-polynomial coefficients.

    Coefficients are held internally as sparse ``{eps power: complex}``
    maps for speed; :attr:`terms` exposes them as :class:`EpsSeries`.
    """

    __slots__ = ("n", "K", "raw", "_t")

    def __init__(self, n, terms=None, K=8, raw=False):
        self.n = n
        self.K = K
        self.raw = raw
        self._t = {}
        for key, coef in (terms or {}).items():
            self._acc(key, _series_to_sparse(coef))

    def _cap(self, key):
        return self.K if self.raw else self.K + sum(key[1])

    def _acc(self, key, poly, scale=1.0):
        cap = self._cap(key)
        cur = self._t.get(key)
        if cur is None:
            cur = {}
        for d, v in poly.items():
            if d > cap:
                continue
            cur[d] = cur.get(d, 0j) + v * scale
        for d in [d for d, v in cur.items() if v == 0]:
            del cur[d]
        if cur:
            self._t[key] = cur
        else:
            self._t.pop(key, None)

    def _empty(self):
        return WeylWord(self.n, None, self.K, self.raw)

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, n, K=8, raw=False):
        z = (0,) * n
        return cls(n, {(z, z, z): 1.0}, K, raw)

    @classmethod
    def monomial(cls, n, gamma=None, alpha=None, beta=None, coef=1.0, K=8, raw=False):
        z = (0,) * n
        key = (tuple(gamma or z), tuple(alpha or z), tuple(beta or z))
        return cls(n, {key: coef}, K, raw)

    @classmethod
    def delta(cls, n, K=8, raw=False):
        """``D = i eps sum_i dx_i dp_i``."""
        z = (0,) * n
        terms = {(z, _unit(n, i), _unit(n, i)): EpsSeries.eps(1, 1j, K + 1) for i in range(n)}
        return cls(n, terms, K, raw)

    @classmethod
    def p_r_dp(cls, R0, K=8, raw=False):
        """``s = sum_ij (eps R0)_ij p_i dp_j``."""
        n = len(R0)
        z = (0,) * n
        terms = {}
        for i in range(n):
            for j in range(n):
                if R0[i][j] != 0:
                    terms[(_unit(n, i), z, _unit(n, j))] = EpsSeries.eps(1, complex(R0[i][j]), K + 1)
        return cls(n, terms, K, raw)

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self):
        """``{(gamma, alpha, beta): EpsSeries}``."""
        out = {}
        for key, poly in self._t.items():
            lo, hi = min(poly), max(poly)
            arr = [poly.get(d, 0j) for d in range(lo, hi + 1)]
            out[key] = EpsSeries(arr, lo, self._cap(key))
        return out

    def coefficient(self, key):
        return self.terms.get(key, EpsSeries.zero(self._cap(key)))

    def keys(self):
        return self._t.keys()

    def is_zero(self):
        return not self._t

    def __len__(self):
        return len(self._t)

    def weight(self, key):
        """eps-valuation minus the number of dx in the given term."""
        return min(self._t[key]) - sum(key[1])

    def min_weight(self):
        return min((self.weight(k) for k in self._t), default=None)

    def max_abs(self):
        return max((abs(v) for p in self._t.values() for v in p.values()), default=0.0)

    def __repr__(self):
        return f"WeylWord(n={self.n}, terms={len(self._t)}, K={self.K}, raw={self.raw})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        out = self._empty()
        out._t = {k: dict(p) for k, p in self._t.items()}
        for key, p in other._t.items():
            out._acc(key, p)
        return out

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, z):
        out = self._empty()
        for key, p in self._t.items():
            out._acc(key, p, z)
        return out

    def scale_series(self, s):
        """Multiply every coefficient by an eps-series (scalar)."""
        sp = _series_to_sparse(s)
        out = self._empty()
        for key, p in self._t.items():
            out._acc(key, _poly_mul(p, sp, out._cap(key)))
        return out

    def __mul__(self, other):
        if not isinstance(other, WeylWord):
            return self.scale(other)
        return word_mul(self, other)

    def __rmul__(self, z):
        return self.scale(z)


def _poly_mul(p, q, cap):
    out = {}
    for d1, v1 in p.items():
        for d2, v2 in q.items():
            d = d1 + d2
            if d <= cap:
                out[d] = out.get(d, 0j) + v1 * v2
    return out


def word_mul(u, v):
    """Normal-ordered product ``u v``."""
    out = WeylWord(u.n, None, min(u.K, v.K), u.raw)
    for (g1, a1, b1), p1 in u._t.items():
        for (g2, a2, b2), p2 in v._t.items():
            alpha = _add(a1, a2)
            cap = out._cap(((), alpha, ()))
            c = _poly_mul(p1, p2, cap)
            if not c:
                continue
            for mu, k in _reorder(b1, g2):
                gamma = tuple(x + y - m for x, y, m in zip(g1, g2, mu))
                beta = tuple(x + y - m for x, y, m in zip(b1, b2, mu))
                out._acc((gamma, alpha, beta), c, k)
    return out


def commutator(u, v):
    return word_mul(u, v) - word_mul(v, u)


def contract(alpha, beta, K=8, cap=CONTRACT_CAP):
    """Closed form of ``<dx^alpha dp^beta exp D>``: ``delta_ab alpha! (i/eps)^|alpha|``.

    ``alpha`` and ``beta`` are multi-indices (exponent tuples).  The
    result is an EpsSeries with offset ``-|alpha|``.
    """
    if sum(alpha) > cap or sum(beta) > cap:
        raise CapExceeded("contraction order above cap", alpha=alpha, beta=beta, cap=cap)
    if tuple(alpha) != tuple(beta):
        return EpsSeries.zero(K)
    a = sum(alpha)
    return EpsSeries([mfact(alpha) * 1j ** a], -a, K)


def contract_word(word, cap=None):
    """Apply ``<. exp D>`` to every term; returns ``{gamma: EpsSeries}`` (a p-polynomial).

    Raises NegativeValuation if a term keeps a net negative eps power.
    """
    out = {}
    for (g, a, b), c in word.terms.items():
        if a != b:
            continue
        val = contract(a, b, c.K, cap if cap is not None else max(CONTRACT_CAP, sum(a)))
        term = (c * val).with_order(word.K if not word.raw else word.K - sum(a))
        if term.is_zero():
            continue
        if term.offset < 0:
            raise NegativeValuation("negative eps power survives contraction",
                                    gamma=g, alpha=a, valuation=term.offset)
        out[g] = out[g] + term if g in out else term
    return {g: s for g, s in out.items() if not s.is_zero()}


def contract_product(u, v):
    """``contract_word(u v)`` without forming ``u v`` when ``u`` has no ``dp``.

    A prefactor ``p^g dx^a`` commutes past nothing, so only the terms of
    ``v`` with ``beta = alpha_v + a`` survive the contraction.
    """
    if any(sum(b) for (_, _, b) in u.keys()):
        return contract_word(word_mul(u, v))
    K = min(u.K, v.K)
    out = WeylWord(u.n, None, K, u.raw)
    for (g1, a1, _), p1 in u._t.items():
        for (g2, a2, b2), p2 in v._t.items():
            alpha = _add(a1, a2)
            if alpha != b2:
                continue
            key = (_add(g1, g2), alpha, b2)
            out._acc(key, _poly_mul(p1, p2, out._cap(key)))
    return contract_word(out)


def conjugation_terms(delta, s, cap=CONJUGATION_CAP):
    """``[ad_D^l(s) / l!]`` for ``l = 0, 1, ...`` until the commutator vanishes."""
    terms = [s]
    cur = s
    for l in range(1, cap + 1):
        cur = commutator(delta, cur)
        if cur.is_zero():
            return terms
        terms.append(cur.scale(1.0 / math.factorial(l)))
    raise CapExceeded("ad_D does not terminate", cap=cap)


def _excess(key):
    return sum(key[2]) - sum(key[1])


def prune_excess(word, max_excess):
    """Drop terms whose ``|beta| - |alpha|`` exceeds ``max_excess``."""
    out = word._empty()
    out._t = {k: c for k, c in word._t.items() if _excess(k) <= max_excess}
    return out


def duhamel_exp(s, K=8, raw=False, max_excess=None):
    """``exp(D + s) exp(-D)`` as a normal-ordered word.

    Uses ``F' = F sigma^u(s)`` with ``sigma^u(s) = sum_l u^l/l! ad_D^l(s)``,
    so ``F(1) = sum_k G_k(1)`` with ``G_k(u) = int_0^u G_{k-1}(t) sigma^t(s) dt``.
    Each coefficient carries its power of ``u`` next to its eps-degree and
    the t-integrals are done exactly on monomials.  Every term of ``s`` must
    have positive weight (positive eps-degree in raw mode) so that ``G_k``
    vanishes past the truncation order.

    ``max_excess`` (optional) drops terms with ``|beta| - |alpha|`` above it.
    This is exact for later contractions against prefactors carrying at
    most ``max_excess`` derivatives in x, provided right multiplication by
    ``sigma^t(s)`` can never lower that excess; the condition is checked.
    """
    n = s.n
    s = WeylWord(n, s.terms, K, raw)
    for key, poly in s._t.items():
        w = min(poly) if raw else min(poly) - sum(key[1])
        if w < 1:
            raise ValueError("perturbation needs positive weight in every term")
    delta = WeylWord.delta(n, K, raw)
    sig = conjugation_terms(delta, s)
    if max_excess is not None:
        for w in sig:
            for key in w.keys():
                if _excess(key) - sum(key[0]) < 0:
                    raise ValueError("pruning is unsafe: a term of sigma(s) lowers the excess")
    total = WeylWord.identity(n, K, raw)
    z = (0,) * n
    g = {(z, z, z): {(0, 0): 1.0 + 0j}}
    inv = {}
    for _ in range(K + 1):
        nxt = {}
        for (g1, a1, b1), p1 in g.items():
            for l, sl in enumerate(sig):
                for (g2, a2, b2), p2 in sl._t.items():
                    alpha = _add(a1, a2)
                    cap = K if raw else K + sum(alpha)
                    prod = {}
                    for (d1, m1), v1 in p1.items():
                        for d2, v2 in p2.items():
                            d = d1 + d2
                            if d <= cap:
                                m = m1 + l + 1
                                if m not in inv:
                                    inv[m] = float(Fraction(1, m))
                                dm = (d, m)
                                prod[dm] = prod.get(dm, 0j) + v1 * v2 * inv[m]
                    if not prod:
                        continue
                    for mu, k in _reorder(b1, g2):
                        beta = tuple(x + y - q for x, y, q in zip(b1, b2, mu))
                        if max_excess is not None and sum(beta) - sum(alpha) > max_excess:
                            continue
                        gamma = tuple(x + y - q for x, y, q in zip(g1, g2, mu))
                        slot = nxt.setdefault((gamma, alpha, beta), {})
                        for dm, v in prod.items():
                            slot[dm] = slot.get(dm, 0j) + v * k
        g = {key: {dm: v for dm, v in p.items() if v != 0} for key, p in nxt.items()}
        g = {key: p for key, p in g.items() if p}
        if not g:
            return total
        step = total._empty()
        for key, p in g.items():
            at_one = {}
            for (d, _m), v in p.items():
                at_one[d] = at_one.get(d, 0j) + v
            step._acc(key, at_one)
        total = total + step
    raise CapExceeded("Duhamel series did not terminate", K=K)


def naive_exp(word, K):
    """``sum_m word^m / m!`` in raw truncation (every term needs eps-degree >= 1)."""
    out = WeylWord.identity(word.n, K, True)
    power = WeylWord.identity(word.n, K, True)
    word = WeylWord(word.n, word.terms, K, True)
    for m in range(1, K + 1):
        power = word_mul(power, word).scale(1.0 / m)
        out = out + power
    return out
