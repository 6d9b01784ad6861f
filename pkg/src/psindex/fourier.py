"""Trigonometric-polynomial arithmetic on the circle.

A :class:`CoeffFn` stores the Fourier coefficients ``c_k`` of a smooth
periodic function ``f(x) = sum_k c_k exp(i k x)``.  Coefficients may be
scalars or square matrices (a matrix of coefficient functions is stored as
one array of shape ``(L, m, m)``).  Products are exact convolutions; only
inversion goes through a sampling grid.
"""

import numpy as np

from .errors import BandwidthExceeded, NotInvertible

PRUNE_TOL = 1e-14
INVERSE_FLOOR = 1e-10
INVERSE_TOL = 1e-12
BAND_CAP = 512


def _next_pow2(n):
    p = 1
    while p < n:
        p *= 2
    return p


class CoeffFn:
    """Finitely supported Fourier series with scalar or matrix values.

    Instances are immutable.  ``residual`` records the worst-case error
    inherited from an inversion (zero for exact constructions); it does not
    take part in equality.
    """

    __slots__ = ("lo", "c", "residual")

    def __init__(self, lo, coeffs, residual=0.0, prune=PRUNE_TOL):
        c = np.array(coeffs, dtype=complex)
        if c.ndim == 0:
            c = c.reshape(1)
        if prune:
            c[np.abs(c) < prune] = 0.0
        nz = np.flatnonzero(np.any(c.reshape(len(c), -1) != 0, axis=1)) if len(c) else []
        if len(nz) == 0:
            c = np.zeros((0,) + c.shape[1:], dtype=complex)
            lo = 0
        else:
            c = c[nz[0]:nz[-1] + 1]
            lo = int(lo) + int(nz[0])
        c.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "residual", float(residual))

    def __setattr__(self, name, value):
        raise AttributeError("CoeffFn is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_dict(cls, coeffs, shape=()):
        """Build from ``{frequency: amplitude}``."""
        if not coeffs:
            return cls.zero(shape)
        ks = sorted(coeffs)
        lo, hi = ks[0], ks[-1]
        arr = np.zeros((hi - lo + 1,) + tuple(shape), dtype=complex)
        for k in ks:
            arr[k - lo] = coeffs[k]
        return cls(lo, arr)

    @classmethod
    def zero(cls, shape=()):
        return cls(0, np.zeros((0,) + tuple(shape), dtype=complex))

    @classmethod
    def constant(cls, value, shape=None):
        value = np.asarray(value, dtype=complex)
        if shape is not None and value.shape != tuple(shape):
            value = value * np.eye(shape[0]) if shape else value
        return cls(0, value[None])

    @classmethod
    def identity(cls, m=None):
        if m is None:
            return cls.constant(1.0)
        return cls.constant(np.eye(m))

    @classmethod
    def monomial(cls, k, amplitude=1.0):
        """``amplitude * exp(i k x)``."""
        return cls(k, np.asarray([amplitude], dtype=complex))

    @classmethod
    def from_samples(cls, values, band=None):
        """Fourier-interpolate samples on the uniform grid ``2 pi j / N``.

        The Nyquist frequency is dropped; ``band`` truncates further.
        """
        values = np.asarray(values, dtype=complex)
        n = values.shape[0]
        hat = np.fft.fft(values, axis=0) / n
        half = (n - 1) // 2
        if band is not None:
            half = min(half, band)
        ks = np.arange(-half, half + 1)
        return cls(-half, hat[ks % n])

    @classmethod
    def from_entries(cls, rows):
        """Assemble a matrix function from a nested list of scalar CoeffFns."""
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise ValueError("matrix of coefficient functions must be square")
        entries = [f for r in rows for f in r]
        live = [f for f in entries if len(f.c)]
        if not live:
            return cls.zero((m, m))
        lo = min(f.lo for f in live)
        hi = max(f.hi for f in live)
        arr = np.zeros((hi - lo + 1, m, m), dtype=complex)
        for i in range(m):
            for j in range(m):
                f = rows[i][j]
                if len(f.c):
                    arr[f.lo - lo:f.lo - lo + len(f.c), i, j] = f.c
        return cls(lo, arr)

    # -- inspection ----------------------------------------------------------

    @property
    def shape(self):
        return self.c.shape[1:]

    @property
    def hi(self):
        return self.lo + len(self.c) - 1

    @property
    def bandwidth(self):
        if not len(self.c):
            return 0
        return max(abs(self.lo), abs(self.hi))

    @property
    def coeffs(self):
        """``{k: c_k}`` for the nonzero frequencies."""
        out = {}
        for j, v in enumerate(self.c):
            if np.any(v != 0):
                out[self.lo + j] = complex(v) if v.ndim == 0 else v.copy()
        return out

    def is_zero(self):
        return len(self.c) == 0

    def coefficient(self, k):
        j = k - self.lo
        if 0 <= j < len(self.c):
            return self.c[j]
        return np.zeros(self.shape, dtype=complex) if self.shape else 0j

    def entry(self, i, j):
        return CoeffFn(self.lo, self.c[:, i, j])

    def sup_coeff(self):
        return float(np.max(np.abs(self.c))) if len(self.c) else 0.0

    def l1_norm(self):
        """Sum of coefficient magnitudes; bounds the sup norm on the circle."""
        if not len(self.c):
            return 0.0
        return float(np.sum(np.abs(self.c).reshape(len(self.c), -1).max(axis=1)))

    def __eq__(self, other):
        if not isinstance(other, CoeffFn):
            return NotImplemented
        return (self.lo == other.lo and self.c.shape == other.c.shape
                and bool(np.array_equal(self.c, other.c)))

    def __hash__(self):
        return hash((self.lo, self.c.shape, self.c.tobytes()))

    def allclose(self, other, atol=1e-12):
        return (self - other).sup_coeff() <= atol

    def __repr__(self):
        if not self.shape:
            body = ", ".join(f"{k}: {v:.6g}" for k, v in self.coeffs.items())
            return f"CoeffFn({{{body}}})"
        return f"CoeffFn(shape={self.shape}, lo={self.lo}, len={len(self.c)})"

    # -- arithmetic ----------------------------------------------------------

    def _aligned(self, other):
        if len(self.c) == 0:
            return other.lo, np.zeros_like(other.c), other.c
        if len(other.c) == 0:
            return self.lo, self.c, np.zeros_like(self.c)
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        shape = np.broadcast_shapes(self.shape, other.shape)
        a = np.zeros((hi - lo + 1,) + shape, dtype=complex)
        b = np.zeros_like(a)
        a[self.lo - lo:self.lo - lo + len(self.c)] = self.c
        b[other.lo - lo:other.lo - lo + len(other.c)] = other.c
        return lo, a, b

    def __add__(self, other):
        if not isinstance(other, CoeffFn):
            other = CoeffFn.constant(other, self.shape)
        lo, a, b = self._aligned(other)
        return CoeffFn(lo, a + b, residual=self.residual + other.residual)

    __radd__ = __add__

    def __neg__(self):
        return CoeffFn(self.lo, -self.c, residual=self.residual)

    def __sub__(self, other):
        if not isinstance(other, CoeffFn):
            other = CoeffFn.constant(other, self.shape)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, z):
        return CoeffFn(self.lo, self.c * z, residual=self.residual * abs(z))

    def __mul__(self, other):
        if not isinstance(other, CoeffFn):
            return self.scale(other)
        return cf_mul(self, other)

    def __rmul__(self, z):
        return self.scale(z)

    def __matmul__(self, other):
        return cf_mul(self, other)

    def dx(self):
        return cf_dx(self)

    def mean(self):
        return cf_mean(self)

    def trace(self):
        if not self.shape:
            return self
        return CoeffFn(self.lo, np.trace(self.c, axis1=1, axis2=2))

    def conj(self):
        """Pointwise complex conjugate (conjugate-transpose for matrices)."""
        c = np.conj(self.c[::-1])
        if self.shape:
            c = np.swapaxes(c, 1, 2)
        return CoeffFn(-self.hi, c, residual=self.residual)

    def transpose(self):
        if not self.shape:
            return self
        return CoeffFn(self.lo, np.swapaxes(self.c, 1, 2))

    def shift(self, k):
        """Multiply by ``exp(i k x)``."""
        return CoeffFn(self.lo + k, self.c, residual=self.residual)

    # -- sampling ------------------------------------------------------------

    def samples(self, n):
        """Values on the uniform grid ``x_j = 2 pi j / n``; needs ``n > 2*bandwidth``."""
        if n <= 2 * self.bandwidth:
            raise ValueError(f"grid of {n} points aliases bandwidth {self.bandwidth}")
        hat = np.zeros((n,) + self.shape, dtype=complex)
        for j, v in enumerate(self.c):
            hat[(self.lo + j) % n] += v
        return np.fft.ifft(hat, axis=0) * n

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        ks = np.arange(self.lo, self.hi + 1)
        phases = np.exp(1j * np.multiply.outer(x, ks))
        return np.tensordot(phases, self.c, axes=([-1], [0])) if len(ks) else \
            np.zeros(x.shape + self.shape, dtype=complex)

    def inverse(self, band_cap=BAND_CAP, tol=INVERSE_TOL, floor=INVERSE_FLOOR):
        return cf_inverse(self, band_cap, tol, floor)


def _as_fn(f):
    return f if isinstance(f, CoeffFn) else CoeffFn.constant(f)


def cf_add(f, g):
    return _as_fn(f) + _as_fn(g)


def _conv_raw(f, g):
    """Unpruned coefficient convolution (lo, array) of two same-kind functions."""
    if not f.shape:
        return f.lo + g.lo, np.convolve(f.c, g.c)
    out = np.zeros((len(f.c) + len(g.c) - 1, f.shape[0], g.shape[1]), dtype=complex)
    for i in range(len(f.c)):
        out[i:i + len(g.c)] += np.matmul(f.c[i], g.c)
    return f.lo + g.lo, out


def cf_mul(f, g):
    """Pointwise product: a convolution of coefficient sequences.

    Matrix-valued inputs multiply as matrices (``f @ g`` pointwise).
    """
    f, g = _as_fn(f), _as_fn(g)
    res = f.residual * g.l1_norm() + g.residual * f.l1_norm()
    if f.is_zero() or g.is_zero():
        shape = np.broadcast_shapes(f.shape, g.shape) if not (f.shape and g.shape) \
            else (f.shape[0], g.shape[1])
        return CoeffFn.zero(shape)
    if not f.shape or not g.shape:
        if not f.shape and not g.shape:
            out = np.convolve(f.c, g.c)
        else:
            a = f.c.reshape((len(f.c),) + (1,) * len(g.shape)) if not f.shape else f.c
            b = g.c.reshape((len(g.c),) + (1,) * len(f.shape)) if not g.shape else g.c
            shape = f.shape or g.shape
            out = np.zeros((len(f.c) + len(g.c) - 1,) + shape, dtype=complex)
            for i in range(len(a)):
                out[i:i + len(b)] += a[i] * b
        return CoeffFn(f.lo + g.lo, out, residual=res)
    if f.shape[1] != g.shape[0]:
        raise ValueError(f"matrix shapes {f.shape} and {g.shape} do not compose")
    out = np.zeros((len(f.c) + len(g.c) - 1, f.shape[0], g.shape[1]), dtype=complex)
    if len(f.c) <= len(g.c):
        for i in range(len(f.c)):
            out[i:i + len(g.c)] += np.matmul(f.c[i], g.c)
    else:
        for i in range(len(g.c)):
            out[i:i + len(f.c)] += np.matmul(f.c, g.c[i])
    return CoeffFn(f.lo + g.lo, out, residual=res)


def cf_dx(f):
    """Derivative in x: ``c_k -> i k c_k``."""
    ks = np.arange(f.lo, f.lo + len(f.c))
    factor = (1j * ks).reshape((-1,) + (1,) * len(f.shape))
    return CoeffFn(f.lo, f.c * factor, residual=f.residual * max(f.bandwidth, 1))


def cf_mean(f):
    """``(1/2pi) * integral of f over the circle``, i.e. the zeroth coefficient."""
    v = f.coefficient(0)
    return complex(v) if not f.shape else np.array(v)


def cf_inverse(f, band_cap=BAND_CAP, tol=INVERSE_TOL, floor=INVERSE_FLOOR):
    """Pointwise inverse of a nonvanishing (or pointwise invertible) function.

    The reciprocal is formed on an oversampled grid and transformed back;
    the grid is doubled until the coefficient l1-norm of ``f*g - 1`` is at
    most ``tol``.  The achieved residual is stored on the result.
    """
    shape = f.shape
    one = CoeffFn.identity(shape[0] if shape else None)
    n = _next_pow2(4 * (f.bandwidth + 1))
    while True:
        vals = f.samples(n)
        if shape:
            dets = np.abs(np.linalg.det(vals))
            if dets.min() <= floor:
                raise NotInvertible("determinant vanishes on the grid",
                                    min_det=float(dets.min()))
            inv = np.linalg.inv(vals)
        else:
            mags = np.abs(vals)
            if mags.min() <= floor:
                raise NotInvertible("function vanishes on the grid",
                                    min_abs=float(mags.min()))
            inv = 1.0 / vals
        band = min((n - 1) // 2, band_cap)
        g = CoeffFn.from_samples(inv, band=band)
        lo, prod = _conv_raw(f, g)
        prod[-lo] -= one.c[0]
        resid = float(np.sum(np.abs(prod).reshape(len(prod), -1).max(axis=1)))
        if resid <= tol:
            return CoeffFn(g.lo, g.c, residual=resid)
        if band >= band_cap:
            raise BandwidthExceeded("inverse residual not reached within band cap",
                                    band_cap=band_cap, residual=resid, tol=tol)
        n *= 2


def cf_map(f, func, band_cap=BAND_CAP, tol=INVERSE_TOL):
    """Apply a pointwise analytic map (e.g. ``np.exp``) to a scalar function.

    Refines the grid until the trailing coefficients fall below ``tol``.
    """
    n = _next_pow2(4 * (f.bandwidth + 1))
    while True:
        g = CoeffFn.from_samples(func(f.samples(n)), band=min((n - 1) // 2, band_cap))
        edge = max(abs(g.coefficient(g.lo)) if len(g.c) else 0.0,
                   abs(g.coefficient(g.hi)) if len(g.c) else 0.0)
        if g.bandwidth < (n - 1) // 2 - 2 or edge <= tol:
            return g
        if (n - 1) // 2 >= band_cap:
            raise BandwidthExceeded("mapped function not resolved", band_cap=band_cap)
        n *= 2


def trig(cos=None, sin=None, const=0.0):
    """Convenience builder: ``const + sum a_k cos(kx) + sum b_k sin(kx)``."""
    out = {0: complex(const)}
    for k, a in (cos or {}).items():
        out[k] = out.get(k, 0) + a / 2
        out[-k] = out.get(-k, 0) + a / 2
    for k, b in (sin or {}).items():
        out[k] = out.get(k, 0) + b / 2j
        out[-k] = out.get(-k, 0) - b / 2j
    return CoeffFn.from_dict(out)
