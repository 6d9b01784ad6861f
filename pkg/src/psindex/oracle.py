"""Brute-force index: quantize on finitely many Fourier modes and count.

``quantize`` builds the exact matrix of ``Op(a)`` from the modes
``|k| <= K`` into ``|k| <= K + B``, where ``B`` bounds the x-bandwidth.
The index is ``dim ker - dim coker``, read off from small singular values
of this matrix and of the analogous matrix for the adjoint.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NoPlateau
from .fourier import CoeffFn

DEFAULT_MODES = (8, 12, 16, 20)
DEFAULT_TOL = 1e-8
PLATEAU_RUN = 3


@dataclass
class QuantizedOperator:
    """Dense matrix of a quantized symbol with its mode windows."""

    matrix: np.ndarray
    domain_modes: np.ndarray
    codomain_modes: np.ndarray
    meta: dict = field(default_factory=dict)


def symbol_at(a, k):
    """Coefficient array (lo, c) of ``x -> a(x, k)`` for an integer frequency ``k``."""
    total = None
    if k == 0:
        total = a.component_at(0).plus if a.order >= 0 else None
        if total is None:
            return CoeffFn.zero((a.dim, a.dim))
        return total
    for comp in a.components:
        f = comp.branch(1 if k > 0 else -1)
        if f.is_zero():
            continue
        term = f.scale(float(abs(k)) ** comp.degree)
        total = term if total is None else total + term
    if total is None:
        return CoeffFn.zero((a.dim, a.dim))
    return total


def _matrix(a, dom, cod, adjoint=False):
    m = a.dim
    idx = {k: i for i, k in enumerate(cod)}
    M = np.zeros((len(cod) * m, len(dom) * m), dtype=complex)
    if not adjoint:
        for c, k in enumerate(dom):
            f = symbol_at(a, int(k))
            for j, v in enumerate(f.c):
                r = idx.get(int(k) + f.lo + j)
                if r is not None:
                    M[r * m:(r + 1) * m, c * m:(c + 1) * m] = v
        return M
    # adjoint: (A*)_{c, r} = conj(A_{r, c}) with r in dom, c ranging over cod
    for c, k in enumerate(cod):
        f = symbol_at(a, int(k))
        for j, v in enumerate(f.c):
            r = int(k) + f.lo + j
            rr = idx.get(r)
            if rr is not None and abs(r) <= dom[-1]:
                col = int(np.searchsorted(dom, r))
                M[c * m:(c + 1) * m, col * m:(col + 1) * m] = np.conj(v).T
    return M


def quantize(a, K):
    """Exact matrix of ``Op(a)`` on modes ``|k| <= K`` with codomain ``|k| <= K + B``."""
    if a.order > 0:
        raise ValueError("quantization needs order <= 0")
    B = a.bandwidth()
    dom = np.arange(-K, K + 1)
    cod = np.arange(-K - B, K + B + 1)
    M = _matrix(a, dom, cod)
    return QuantizedOperator(M, dom, cod, {"K": K, "B": B, "shape": M.shape})


def quantize_adjoint(a, K):
    """Exact matrix of ``Op(a)*`` on modes ``|k| <= K`` (codomain ``|k| <= K + B``)."""
    B = a.bandwidth()
    dom = np.arange(-K, K + 1)
    cod = np.arange(-K - B, K + B + 1)
    M = _matrix(a, dom, cod, adjoint=True)
    return QuantizedOperator(M, dom, cod, {"K": K, "B": B, "shape": M.shape})


def nullity(M, tol=DEFAULT_TOL, smax=None):
    """Number of columns minus numerical rank (relative tolerance)."""
    s = np.linalg.svd(M, compute_uv=False)
    top = smax if smax is not None else (s[0] if len(s) else 0.0)
    return M.shape[1] - int(np.sum(s > tol * top))


def defect(a, K, tol=DEFAULT_TOL):
    """``d(K) = nullity(quantize) - nullity(adjoint quantization)``."""
    A = quantize(a, K).matrix
    As = quantize_adjoint(a, K).matrix
    smax = np.linalg.norm(A, 2)
    return nullity(A, tol, smax) - nullity(As, tol, smax)


def shift_exponents(a):
    """``(a, b)`` if the symbol is ``(c+ e^{iax}; c- e^{ibx})`` with nothing else, else None."""
    if a.dim != 1 or a.order != 0:
        return None
    if any(not c.is_zero() for c in a.components[1:]):
        return None
    out = []
    for f in (a.components[0].plus, a.components[0].minus):
        if len(f.c) != 1:
            return None
        out.append(f.lo)
    return tuple(out)


def exact_shift_index(ea, eb):
    """Index of ``e_k -> e_{k+ea}`` (k >= 0), ``e_k -> e_{k+eb}`` (k < 0).

    Images are ``[ea, inf)`` and ``(-inf, eb)``: an overlap of ``eb - ea``
    modes gives that many kernel directions, a gap of ``ea - eb`` modes is
    the cokernel.
    """
    kernel = max(eb - ea, 0)
    coker = max(ea - eb, 0)
    return kernel - coker


@dataclass
class OracleResult:
    index: int
    method: str
    defects: dict

    def __int__(self):
        return self.index


def find_plateau(values, run=PLATEAU_RUN):
    """Common value of the final run of >= ``run`` equal entries, else None."""
    if len(values) < run:
        return None
    last = values[-1]
    n = 0
    for v in reversed(values):
        if v != last:
            break
        n += 1
    return last if n >= run else None


def oracle_index(a, modes=DEFAULT_MODES, tol=DEFAULT_TOL, exact=True):
    """Fredholm index from kernel/cokernel counts; raises NoPlateau if unstable."""
    if exact:
        sh = shift_exponents(a)
        if sh is not None:
            return OracleResult(exact_shift_index(*sh), "exact", {})
    modes = sorted(modes)
    d = {K: defect(a, K, tol) for K in modes}
    value = find_plateau([d[K] for K in modes])
    if value is None:
        raise NoPlateau("d(K) did not stabilize", defects=d)
    return OracleResult(int(value), "svd", d)
