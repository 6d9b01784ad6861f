"""Truncated classical symbols on the circle and their star product.

In one dimension the cosphere is the two-point set ``{p > 0, p < 0}``, so
a component homogeneous of degree ``d`` is an exact pair of coefficient
functions: ``a(x, p) = plus(x) |p|^d`` for ``p > 0`` and
``minus(x) |p|^d`` for ``p < 0``.  The p-derivative is then exact:
``d/dp |p|^d = +-d |p|^(d-1)`` with the sign of the branch.

A :class:`ClassicalSymbol` of order ``m`` and depth ``N`` holds the
components of degrees ``m, m-1, ..., m-N+1`` and claims nothing about
degrees ``<= m-N``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DepthExhausted, NotElliptic, NotInvertible, ShapeMismatch
from .fourier import INVERSE_FLOOR, INVERSE_TOL, BAND_CAP, CoeffFn

COND_MAX = 1e8


def _norm_order(m):
    m = float(m)
    return int(m) if m.is_integer() else m


def _lift(f, dim):
    """Accept scalars / scalar CoeffFns / matrix CoeffFns; return an (m, m) CoeffFn."""
    if not isinstance(f, CoeffFn):
        arr = np.asarray(f, dtype=complex)
        if arr.ndim == 0:
            return CoeffFn.constant(arr * np.eye(dim))
        return CoeffFn.constant(arr)
    if not f.shape:
        if dim != 1:
            return CoeffFn(f.lo, f.c[:, None, None] * np.eye(dim), residual=f.residual)
        return CoeffFn(f.lo, f.c[:, None, None], residual=f.residual)
    return f


def falling(d, k):
    """Falling factorial ``d (d-1) ... (d-k+1)``."""
    out = 1.0
    for i in range(k):
        out *= d - i
    return out


@dataclass(frozen=True)
class HomComponent:
    """One homogeneous term: ``plus(x)|p|^degree`` on p>0, ``minus(x)|p|^degree`` on p<0."""

    degree: float
    plus: CoeffFn
    minus: CoeffFn

    def __post_init__(self):
        if self.plus.shape != self.minus.shape:
            raise ShapeMismatch("branch shapes differ",
                                plus=self.plus.shape, minus=self.minus.shape)

    @property
    def dim(self):
        return self.plus.shape[0]

    def is_zero(self):
        return self.plus.is_zero() and self.minus.is_zero()

    def branch(self, sign):
        return self.plus if sign > 0 else self.minus


class ClassicalSymbol:
    """A classical symbol of given order known modulo degree ``order - depth``."""

    __slots__ = ("order", "depth", "components", "dim")

    def __init__(self, order, depth, components, dim=None):
        order = _norm_order(order)
        depth = int(depth)
        if depth < 1:
            raise DepthExhausted("symbol depth must be positive", depth=depth)
        comps = list(components)
        if dim is None:
            dim = comps[0].dim if comps else 1
        zero = CoeffFn.zero((dim, dim))
        if len(comps) > depth:
            comps = comps[:depth]
        while len(comps) < depth:
            comps.append(HomComponent(order - len(comps), zero, zero))
        for j, c in enumerate(comps):
            if c.dim != dim:
                raise ShapeMismatch("component matrix size differs", index=j, dim=c.dim)
            if abs(c.degree - (order - j)) > 1e-12:
                raise ValueError(f"component {j} has degree {c.degree}, expected {order - j}")
        self.order = order
        self.depth = depth
        self.components = tuple(comps)
        self.dim = dim

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_branches(cls, order, depth, branches, dim=None):
        """``branches`` maps component index ``j`` to a ``(plus, minus)`` pair.

        Entries may be numbers, scalar CoeffFns or matrix CoeffFns.
        """
        if dim is None:
            dim = 1
            for p, m in branches.values():
                for f in (p, m):
                    if isinstance(f, CoeffFn) and f.shape:
                        dim = f.shape[0]
                    elif not isinstance(f, CoeffFn) and np.ndim(f) == 2:
                        dim = np.shape(f)[0]
        order = _norm_order(order)
        zero = CoeffFn.zero((dim, dim))
        comps = []
        for j in range(depth):
            if j in branches:
                p, m = branches[j]
                comps.append(HomComponent(order - j, _lift(p, dim), _lift(m, dim)))
            else:
                comps.append(HomComponent(order - j, zero, zero))
        return cls(order, depth, comps, dim)

    @classmethod
    def identity(cls, depth, dim=1):
        return cls.from_branches(0, depth, {0: (1.0, 1.0)}, dim=dim)

    @classmethod
    def zero(cls, order, depth, dim=1):
        return cls.from_branches(order, depth, {}, dim=dim)

    @classmethod
    def block_diag(cls, *symbols):
        """Direct sum of symbols sharing order (depth = minimum)."""
        order = symbols[0].order
        if any(s.order != order for s in symbols):
            raise ShapeMismatch("block_diag needs equal orders")
        depth = min(s.depth for s in symbols)
        dim = sum(s.dim for s in symbols)
        comps = []
        for j in range(depth):
            halves = []
            for br in ("plus", "minus"):
                rows = [[CoeffFn.zero() for _ in range(dim)] for _ in range(dim)]
                off = 0
                for s in symbols:
                    f = getattr(s.components[j], br)
                    for r in range(s.dim):
                        for c in range(s.dim):
                            rows[off + r][off + c] = f.entry(r, c)
                    off += s.dim
                halves.append(CoeffFn.from_entries(rows))
            comps.append(HomComponent(order - j, halves[0], halves[1]))
        return cls(order, depth, comps, dim)

    # -- inspection ----------------------------------------------------------

    @property
    def degrees(self):
        return [c.degree for c in self.components]

    @property
    def floor(self):
        """Degrees ``<= floor`` are not trusted."""
        return self.order - self.depth

    def is_scalar(self):
        return self.dim == 1

    def component_at(self, degree):
        """Component of the given degree, zero if absent but trusted.

        Raises DepthExhausted when the degree is outside the trusted window.
        """
        j = self.order - degree
        if degree > self.order + 1e-12:
            z = CoeffFn.zero((self.dim, self.dim))
            return HomComponent(degree, z, z)
        if degree <= self.floor + 1e-12:
            raise DepthExhausted("degree below the trusted window",
                                 degree=degree, order=self.order, depth=self.depth)
        jr = round(j)
        if abs(j - jr) > 1e-12:
            z = CoeffFn.zero((self.dim, self.dim))
            return HomComponent(degree, z, z)
        return self.components[jr]

    def bandwidth(self):
        return max((max(c.plus.bandwidth, c.minus.bandwidth) for c in self.components),
                   default=0)

    def max_abs(self):
        return max((max(c.plus.sup_coeff(), c.minus.sup_coeff()) for c in self.components),
                   default=0.0)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __repr__(self):
        return (f"ClassicalSymbol(order={self.order}, depth={self.depth}, dim={self.dim}, "
                f"band={self.bandwidth()})")

    def __eq__(self, other):
        if not isinstance(other, ClassicalSymbol):
            return NotImplemented
        return (self.order == other.order and self.depth == other.depth
                and self.dim == other.dim and all(
                    a.plus == b.plus and a.minus == b.minus
                    for a, b in zip(self.components, other.components)))

    __hash__ = None

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        return sym_add(self, other)

    def __sub__(self, other):
        return sym_add(self, sym_scale(other, -1.0))

    def __neg__(self):
        return sym_scale(self, -1.0)

    def __mul__(self, z):
        if isinstance(z, ClassicalSymbol):
            return sym_star(self, z)
        return sym_scale(self, z)

    def __rmul__(self, z):
        return sym_scale(self, z)

    def __matmul__(self, other):
        return sym_star(self, other)

    def truncate(self, depth):
        if depth > self.depth:
            raise DepthExhausted("cannot extend a symbol's depth", have=self.depth, want=depth)
        return ClassicalSymbol(self.order, depth, self.components[:depth], self.dim)

    def map_branches(self, func):
        comps = [HomComponent(c.degree, func(c.plus), func(c.minus)) for c in self.components]
        return ClassicalSymbol(self.order, self.depth, comps, self.dim)

    def dx(self):
        """Symbol of the x-derivative ``d a / dx`` (same order and depth)."""
        return self.map_branches(lambda f: f.dx())

    def conj(self):
        """Pointwise conjugate transpose of every component (no adjoint corrections)."""
        return self.map_branches(lambda f: f.conj())

    def drop_leading(self, count=1, atol=None):
        """Reinterpret a symbol whose top ``count`` components vanish as one of lower order."""
        if count >= self.depth:
            raise DepthExhausted("nothing left after dropping components",
                                 depth=self.depth, count=count)
        if atol is not None:
            for c in self.components[:count]:
                if max(c.plus.sup_coeff(), c.minus.sup_coeff()) > atol:
                    raise ValueError("dropped component is not zero")
        return ClassicalSymbol(self.order - count, self.depth - count,
                               self.components[count:], self.dim)


def _check_dims(a, b):
    if a.dim != b.dim:
        raise ShapeMismatch("matrix sizes differ", left=a.dim, right=b.dim)


def sym_add(a, b):
    """Degree-aligned sum; the trusted window is the overlap of the two windows."""
    _check_dims(a, b)
    shift = a.order - b.order
    if abs(shift - round(shift)) > 1e-12:
        raise ShapeMismatch("orders differ by a non-integer", left=a.order, right=b.order)
    order = max(a.order, b.order)
    floor = max(a.floor, b.floor)
    depth = int(round(order - floor))
    if depth < 1:
        raise DepthExhausted("sum has an empty trusted window", left=a, right=b)
    zero = CoeffFn.zero((a.dim, a.dim))
    comps = []
    for j in range(depth):
        d = order - j
        plus, minus = zero, zero
        for s in (a, b):
            i = int(round(s.order - d))
            if 0 <= i < s.depth:
                plus = plus + s.components[i].plus
                minus = minus + s.components[i].minus
        comps.append(HomComponent(d, plus, minus))
    return ClassicalSymbol(order, depth, comps, a.dim)


def sym_scale(a, z):
    return a.map_branches(lambda f: f.scale(z))


def sym_conj(a):
    return a.conj()


def _dx_powers(sym, kmax):
    """``out[j][k] = (d^k plus_j, d^k minus_j)`` for k < kmax."""
    out = []
    for c in sym.components:
        row = [(c.plus, c.minus)]
        for _ in range(1, kmax):
            p, m = row[-1]
            row.append((p.dx(), m.dx()))
        out.append(row)
    return out


def sym_star(a, b):
    """Star product ``sum_k (-i)^k/k! d_p^k a d_x^k b`` truncated to the common depth."""
    _check_dims(a, b)
    depth = min(a.depth, b.depth)
    order = _norm_order(a.order + b.order)
    bx = _dx_powers(b.truncate(depth) if b.depth > depth else b, depth)
    zero = CoeffFn.zero((a.dim, a.dim))
    plus = [zero] * depth
    minus = [zero] * depth
    for ja in range(depth):
        ca = a.components[ja]
        if ca.is_zero():
            continue
        for k in range(depth - ja):
            fk = falling(ca.degree, k)
            if fk == 0.0:
                break
            coef = (-1j) ** k / math.factorial(k) * fk
            sgn = (-1) ** k
            for jb in range(depth - ja - k):
                bp, bm = bx[jb][k]
                j = ja + k + jb
                if not bp.is_zero() and not ca.plus.is_zero():
                    plus[j] = plus[j] + (ca.plus @ bp).scale(coef)
                if not bm.is_zero() and not ca.minus.is_zero():
                    minus[j] = minus[j] + (ca.minus @ bm).scale(coef * sgn)
    comps = [HomComponent(order - j, plus[j], minus[j]) for j in range(depth)]
    return ClassicalSymbol(order, depth, comps, a.dim)


def sym_commutator(a, b):
    """``a*b - b*a`` at the nominal order ``order(a)+order(b)``; its top component vanishes."""
    return sym_star(a, b) - sym_star(b, a)


def sym_leading(a):
    """Leading (degree ``order``) branch pair ``(g_plus, g_minus)``."""
    c = a.components[0]
    return c.plus, c.minus


def ellipticity(g, floor=INVERSE_FLOOR, cond_max=COND_MAX):
    """Grid check of a leading branch: returns ``(min |det|, max condition number)``.

    Raises NotElliptic when the determinant falls below ``floor`` or the
    condition number exceeds ``cond_max``.
    """
    n = 8
    while n <= 2 * g.bandwidth + 8:
        n *= 2
    n *= 4
    vals = g.samples(n)
    dets = np.abs(np.linalg.det(vals))
    mdet = float(dets.min())
    if mdet <= floor:
        raise NotElliptic("leading symbol is not invertible", min_det=mdet)
    cond = float(np.max(np.linalg.cond(vals)))
    if cond > cond_max:
        raise NotElliptic("leading symbol is ill-conditioned", cond=cond)
    return mdet, cond


def sym_parametrix(q, depth=None, band_cap=BAND_CAP, tol=INVERSE_TOL,
                   floor=INVERSE_FLOOR, cond_max=COND_MAX):
    """Left/right inverse of an elliptic symbol modulo degree ``-order - depth``.

    The leading branches are inverted once via :func:`cf_inverse`; each lower
    component is then solved from the vanishing of the corresponding
    component of ``b * q - 1``.
    """
    if depth is None:
        depth = q.depth
    if depth > q.depth:
        raise DepthExhausted("parametrix deeper than its input", have=q.depth, want=depth)
    g_plus, g_minus = sym_leading(q)
    inv = []
    for g in (g_plus, g_minus):
        ellipticity(g, floor, cond_max)
        try:
            inv.append(g.inverse(band_cap=band_cap, tol=tol, floor=floor))
        except NotInvertible as exc:
            raise NotElliptic(str(exc)) from exc
    order = _norm_order(-q.order)
    qx = _dx_powers(q.truncate(depth), depth)
    bp, bm = [inv[0]], [inv[1]]
    for j in range(1, depth):
        sp = CoeffFn.zero((q.dim, q.dim))
        sm = sp
        for ja in range(j):
            d = order - ja
            for k in range(j - ja + 1):
                jb = j - ja - k
                fk = falling(d, k)
                if fk == 0.0:
                    break
                coef = (-1j) ** k / math.factorial(k) * fk
                qp, qm = qx[jb][k]
                sp = sp + (bp[ja] @ qp).scale(coef)
                sm = sm + (bm[ja] @ qm).scale(coef * (-1) ** k)
        bp.append(-(sp @ inv[0]))
        bm.append(-(sm @ inv[1]))
    comps = [HomComponent(order - j, bp[j], bm[j]) for j in range(depth)]
    return ClassicalSymbol(order, depth, comps, q.dim)


def sym_residual(a, b):
    """Max coefficient of ``a*b - 1`` over its trusted window."""
    prod = sym_star(a, b)
    one = ClassicalSymbol.identity(prod.depth, prod.dim)
    diff = sym_add(prod, sym_scale(one, -1.0)) if prod.order == 0 else None
    if diff is None:
        raise ValueError("residual defined only for order-zero products")
    return diff.max_abs()


def sym_max_diff(a, b):
    """Largest coefficient of ``a - b`` over the common trusted window."""
    return (a - b).max_abs()
