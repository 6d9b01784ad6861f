"""Analytic, topological and operator indices of elliptic order-zero symbols.

Sign conventions (fixed against the exact operator count for
``(e^{ix}; 1)``, whose index is -1):

* the pairing ``c(P, Q) = wres(P * [log q, Q])`` equals ``w_+ - w_-``;
* the index is ``w_- - w_+``, so ``analytic = -c(P, Q)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NonIntegerWinding, PsIndexError
from .oracle import DEFAULT_MODES, DEFAULT_TOL, oracle_index
from .radul import LogQ, radul
from .symbol import (ClassicalSymbol, ellipticity, sym_add, sym_leading, sym_parametrix,
                     sym_scale, sym_star)

INTEGER_TOL = 1e-6


def _require_order_zero(Q):
    if Q.order != 0:
        raise ValueError(f"index needs an order-zero symbol, got order {Q.order}")


def pairing(Q, L=None, depth=None):
    """Raw cocycle value ``c(P, Q)`` with ``P`` the parametrix of ``Q``."""
    _require_order_zero(Q)
    L = L or LogQ.canonical(Q.depth)
    P = sym_parametrix(Q, depth or Q.depth)
    return radul(L, P, Q)


def analytic_index(Q, L=None, depth=None):
    """Fredholm index from the Radul pairing: ``-c(P, Q)`` (complex, near an integer)."""
    return -pairing(Q, L, depth)


def winding(g):
    """Winding number of ``det g`` around the circle.

    The primary value is the trace integral ``(1/2 pi i) int tr(g^-1 g')``
    computed with a Fourier inverse; it is cross-checked against the
    unwrapped phase of ``det g`` on a grid of ``8 (B + 1)`` points.
    """
    ellipticity(g)
    ginv = g.inverse()
    w_trace = complex((ginv @ g.dx()).trace().mean()) / 1j
    m = g.shape[0]
    n = 8 * (m * g.bandwidth + 1)
    dets = np.linalg.det(g.samples(n))
    steps = np.angle(np.roll(dets, -1) / dets)
    w_phase = float(np.sum(steps)) / (2 * np.pi)
    w = int(round(w_trace.real))
    err = max(abs(w_trace - w), abs(w_phase - w))
    if err > INTEGER_TOL:
        raise NonIntegerWinding("winding is not an integer", trace=w_trace, phase=w_phase)
    return w, err


def branch_windings(Q):
    """``(w_+, w_-)`` of the two leading branches."""
    gp, gm = sym_leading(Q)
    return winding(gp)[0], winding(gm)[0]


def topological_index(Q):
    """``w_- - w_+`` (the Todd factor is one on the flat circle)."""
    _require_order_zero(Q)
    wp, wm = branch_windings(Q)
    return wm - wp


def parametrix_residual(Q, P):
    """Largest coefficient of ``P*Q - 1`` and ``Q*P - 1`` over the trusted window."""
    one = ClassicalSymbol.identity(min(P.depth, Q.depth), Q.dim)
    left = sym_add(sym_star(P, Q), sym_scale(one, -1.0)).max_abs()
    right = sym_add(sym_star(Q, P), sym_scale(one, -1.0)).max_abs()
    return left, right


@dataclass
class IndexReport:
    """Per-method results; missing values are ``None`` and the error is recorded."""

    pairing: complex = None
    analytic: complex = None
    analytic_rounded: int = None
    pairing_general: complex = None
    topological: int = None
    oracle: int = None
    oracle_method: str = None
    residuals: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    agree: bool = False

    def integers(self):
        return [v for v in (self.analytic_rounded, self.topological, self.oracle) if v is not None]

    def lines(self):
        """``key=value`` machine lines."""
        def cx(z):
            return f"{z.real + 0.0:.12g},{z.imag + 0.0:.12g}"

        out = []
        if self.analytic is not None:
            out.append(f"analytic={self.analytic_rounded}")
            out.append(f"analytic_raw={cx(self.analytic)}")
            out.append(f"pairing={cx(self.pairing)}")
        if self.pairing_general is not None:
            out.append(f"pairing_general={cx(self.pairing_general)}")
        if self.topological is not None:
            out.append(f"topological={self.topological}")
        if self.oracle is not None:
            out.append(f"oracle={self.oracle}")
            out.append(f"oracle_method={self.oracle_method}")
        for k in sorted(self.residuals):
            out.append(f"residual_{k}={self.residuals[k]:.3e}")
        for k in sorted(self.errors):
            out.append(f"error_{k}={self.errors[k]}")
        out.append(f"agree={'true' if self.agree else 'false'}")
        return out


def index_report(Q, methods=("analytic", "topological", "oracle"), q=None, depth=None,
                 modes=DEFAULT_MODES, tol=DEFAULT_TOL):
    """Run the requested methods; per-method failures land in ``errors``.

    ``q`` (an order-one scalar symbol) additionally evaluates the pairing in
    general mode and records its distance to the canonical value.
    """
    rep = IndexReport()
    depth = depth or Q.depth
    if "analytic" in methods:
        try:
            _require_order_zero(Q)
            P = sym_parametrix(Q, depth)
            rep.residuals["parametrix"] = max(parametrix_residual(Q, P))
            c = radul(LogQ.canonical(depth), P, Q)
            rep.pairing = c
            rep.analytic = -c
            rep.analytic_rounded = int(round(rep.analytic.real))
            rep.residuals["analytic"] = abs(rep.analytic - rep.analytic_rounded)
            if q is not None:
                cg = radul(LogQ.general(q, min(depth, q.depth)), P, Q)
                rep.pairing_general = cg
                rep.residuals["q_modes"] = abs(cg - c)
        except (PsIndexError, ValueError) as exc:
            rep.errors["analytic"] = _kind(exc)
    if "topological" in methods:
        try:
            rep.topological = topological_index(Q)
        except (PsIndexError, ValueError) as exc:
            rep.errors["topological"] = _kind(exc)
    if "oracle" in methods:
        try:
            res = oracle_index(Q, modes, tol)
            rep.oracle = res.index
            rep.oracle_method = res.method
        except (PsIndexError, ValueError) as exc:
            rep.errors["oracle"] = _kind(exc)
    ints = rep.integers()
    rep.agree = (not rep.errors and bool(ints) and len(set(ints)) == 1
                 and rep.residuals.get("analytic", 0.0) <= INTEGER_TOL
                 and rep.residuals.get("q_modes", 0.0) <= 1e-8)
    return rep


def _kind(exc):
    return getattr(exc, "kind", type(exc).__name__)
