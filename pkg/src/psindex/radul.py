"""The derivation ``[log q, .]`` and the Radul cyclic one-cocycle.

Two ways to build the derivation are provided:

* ``canonical``: ``q = |p|``.  Since ``log|p|`` is x-independent the star
  expansion collapses to ``sum_k (-i)^k/k! d_p^k log|p| d_x^k a`` with
  ``d_p^k log|p| = (-1)^(k-1) (k-1)! p^(-k)``.  Exact; no depth is lost.
* ``general``: any scalar order-one ``q`` with positive leading symbol, via
  ``[log q, a] = sum_k (-1)^(k-1)/k ad_q^k(a) * q^(-k)``.  Each
  ``ad_q`` raises the trusted floor by one, so the result is one level
  shallower than the input.
"""

import numpy as np

from .errors import DepthExhausted, NotElliptic, ShapeMismatch
from .fourier import CoeffFn
from .residue import wres
from .symbol import (ClassicalSymbol, HomComponent, _dx_powers, sym_add, sym_parametrix,
                     sym_scale, sym_star)


def lift_scalar(q, dim):
    """``q`` tensored with the identity of size ``dim``."""
    if q.dim == dim:
        return q
    if q.dim != 1:
        raise ShapeMismatch("only scalar symbols can be lifted", dim=q.dim)
    eye = np.eye(dim)

    def lift(f):
        return CoeffFn(f.lo, f.c[:, 0, 0][:, None, None] * eye)

    comps = [HomComponent(c.degree, lift(c.plus), lift(c.minus)) for c in q.components]
    return ClassicalSymbol(q.order, q.depth, comps, dim)


class LogQ:
    """A choice of ``q`` for ``[log q, .]``.

    ``LogQ.canonical(depth)`` uses ``q = |p|``; ``LogQ.general(q, depth)``
    precomputes ``q^-1, ..., q^-(depth-1)`` as star powers of the
    parametrix of ``q``.
    """

    def __init__(self, mode, depth, q=None):
        if mode not in ("canonical", "general"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.depth = int(depth)
        self.q = q
        self._qinv = []
        if mode == "general":
            self._setup()

    @classmethod
    def canonical(cls, depth=4):
        return cls("canonical", depth)

    @classmethod
    def general(cls, q, depth=None):
        return cls("general", q.depth if depth is None else depth, q)

    @property
    def loss(self):
        """Depth levels lost by :meth:`commutator` relative to its input."""
        return 0 if self.mode == "canonical" else 1

    def _setup(self):
        q = self.q
        if q.dim != 1:
            raise ShapeMismatch("q must be scalar", dim=q.dim)
        if q.order != 1:
            raise ValueError(f"q must have order one, got {q.order}")
        if self.depth > q.depth:
            raise DepthExhausted("q is shallower than the requested depth",
                                 have=q.depth, want=self.depth)
        for g in (q.components[0].plus, q.components[0].minus):
            n = max(16, 8 * (g.bandwidth + 1))
            vals = g.samples(n)[:, 0, 0]
            if np.max(np.abs(vals.imag)) > 1e-10 or np.min(vals.real) <= 0:
                raise NotElliptic("q must have a real positive leading symbol")
        self.q = q.truncate(self.depth)
        inv = sym_parametrix(self.q, self.depth)
        power = inv
        self._qinv = [power]
        for _ in range(2, self.depth):
            power = sym_star(power, inv)
            self._qinv.append(power)

    def qinv_power(self, k, dim=1):
        return lift_scalar(self._qinv[k - 1], dim)

    def commutator(self, a):
        if self.mode == "canonical":
            return _log_abs_p_commutator(a, min(a.depth, self.depth))
        return self._general_commutator(a)

    def _general_commutator(self, a):
        n = min(a.depth, self.depth)
        if n < 2:
            raise DepthExhausted("general mode needs depth >= 2", depth=n)
        a = a.truncate(n)
        q = lift_scalar(self.q, a.dim)
        total = None
        ad = a
        for k in range(1, n):
            ad = (sym_star(q, ad) - sym_star(ad, q)).drop_leading(1)
            term = sym_scale(sym_star(ad, self.qinv_power(k, a.dim)), (-1) ** (k - 1) / k)
            total = term if total is None else sym_add(total, term)
        return total

    def __repr__(self):
        return f"LogQ(mode={self.mode!r}, depth={self.depth})"


def _log_abs_p_commutator(a, depth):
    """``[log|p|, a]``: order drops by one, trusted floor drops by one."""
    order = a.order - 1
    ax = _dx_powers(a.truncate(depth), depth + 1)
    zero = CoeffFn.zero((a.dim, a.dim))
    plus = [zero] * depth
    minus = [zero] * depth
    for ja in range(depth):
        for k in range(1, depth - ja + 1):
            j = ja + k - 1
            coef = (-1j) ** k * (-1) ** (k - 1) / k
            fp, fm = ax[ja][k]
            plus[j] = plus[j] + fp.scale(coef)
            minus[j] = minus[j] + fm.scale(coef * (-1) ** k)
    comps = [HomComponent(order - j, plus[j], minus[j]) for j in range(depth)]
    return ClassicalSymbol(order, depth, comps, a.dim)


def logq_commutator(L, a):
    """``[log q, a]`` of order ``order(a) - 1``."""
    return L.commutator(a)


def radul(L, a0, a1):
    """``c(a0, a1) = wres(tr(a0 * [log q, a1]))``."""
    if a0.order > 0 or a1.order > 0:
        raise ValueError("the cocycle is evaluated on symbols of order <= 0")
    return wres(sym_star(a0, logq_commutator(L, a1)))


def cyclic_check_b(L, a0, a1, a2):
    """Hochschild coboundary ``c(a0a1,a2) - c(a0,a1a2) + c(a2a0,a1)``."""
    return (radul(L, sym_star(a0, a1), a2) - radul(L, a0, sym_star(a1, a2))
            + radul(L, sym_star(a2, a0), a1))


def cyclic_check_antisym(L, a0, a1):
    """Antisymmetry defect ``c(a0,a1) + c(a1,a0)``."""
    return radul(L, a0, a1) + radul(L, a1, a0)


__all__ = ["LogQ", "logq_commutator", "radul", "cyclic_check_b",
           "cyclic_check_antisym", "lift_scalar"]
