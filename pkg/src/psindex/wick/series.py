"""Truncated power series in a formal parameter ``eps``.

A series stores ``c[j]`` as the coefficient of ``eps**(offset + j)`` and is
known up to and including ``eps**K``.  Coefficients are complex scalars or
complex square matrices (shape carried by the array).
"""

import numpy as np

from ..errors import NotInvertible


class EpsSeries:
    __slots__ = ("offset", "c", "K")

    def __init__(self, coeffs, offset=0, K=8):
        c = np.array(coeffs, dtype=complex)
        if c.ndim == 0:
            c = c.reshape(1)
        keep = K - offset + 1
        if keep <= 0:
            c = c[:0]
        elif len(c) > keep:
            c = c[:keep]
        nz = np.flatnonzero(np.any(c.reshape(len(c), -1) != 0, axis=1)) if len(c) else []
        if len(nz) == 0:
            self.c = np.zeros((0,) + c.shape[1:], dtype=complex)
            self.offset = 0
        else:
            self.c = c[nz[0]:nz[-1] + 1]
            self.offset = int(offset) + int(nz[0])
        self.K = int(K)

    # -- constructors --------------------------------------------------------

    @classmethod
    def const(cls, value, K=8):
        return cls([value], 0, K)

    @classmethod
    def eps(cls, power=1, value=1.0, K=8):
        """``value * eps**power``."""
        return cls([value], power, K)

    @classmethod
    def zero(cls, K=8, shape=()):
        return cls(np.zeros((0,) + tuple(shape)), 0, K)

    @classmethod
    def from_list(cls, coeffs, K=None):
        coeffs = list(coeffs)
        return cls(coeffs, 0, len(coeffs) - 1 if K is None else K)

    # -- inspection ----------------------------------------------------------

    @property
    def shape(self):
        return self.c.shape[1:]

    @property
    def valuation(self):
        """Lowest power with a nonzero coefficient (None for zero)."""
        return self.offset if len(self.c) else None

    def is_zero(self):
        return len(self.c) == 0

    def __getitem__(self, power):
        j = power - self.offset
        if power > self.K:
            raise IndexError(f"eps^{power} is beyond the truncation order {self.K}")
        if 0 <= j < len(self.c):
            return self.c[j]
        return np.zeros(self.shape, dtype=complex) if self.shape else 0j

    def coefficients(self, lo=0, hi=None):
        """Coefficients of ``eps^lo .. eps^hi`` as a list."""
        hi = self.K if hi is None else hi
        return [self[j] for j in range(lo, hi + 1)]

    def max_abs(self):
        return float(np.max(np.abs(self.c))) if len(self.c) else 0.0

    def __repr__(self):
        if self.shape:
            return f"EpsSeries(shape={self.shape}, offset={self.offset}, K={self.K})"
        terms = " + ".join(f"({v:.6g})e^{self.offset + j}" for j, v in enumerate(self.c) if v != 0)
        return f"EpsSeries({terms or '0'}; K={self.K})"

    # -- arithmetic ----------------------------------------------------------

    def truncate(self, K):
        return EpsSeries(self.c, self.offset, min(K, self.K))

    def with_order(self, K):
        """Same coefficients with truncation order ``K`` (callers vouch for exactness)."""
        return EpsSeries(self.c, self.offset, K)

    def __add__(self, other):
        if not isinstance(other, EpsSeries):
            other = EpsSeries.const(other * (np.eye(self.shape[0]) if self.shape else 1), self.K)
        K = min(self.K, other.K)
        if self.is_zero():
            return other.truncate(K)
        if other.is_zero():
            return self.truncate(K)
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.c), other.offset + len(other.c))
        shape = self.shape or other.shape
        out = np.zeros((hi - lo,) + shape, dtype=complex)
        out[self.offset - lo:self.offset - lo + len(self.c)] += self.c
        out[other.offset - lo:other.offset - lo + len(other.c)] += other.c
        return EpsSeries(out, lo, K)

    __radd__ = __add__

    def __neg__(self):
        return EpsSeries(-self.c, self.offset, self.K)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, z):
        return EpsSeries(self.c * z, self.offset, self.K)

    def shift(self, power):
        """Multiply by ``eps**power`` (the truncation order moves along)."""
        return EpsSeries(self.c, self.offset + power, self.K + power)

    def __mul__(self, other):
        if not isinstance(other, EpsSeries):
            return self.scale(other)
        return self._mul(other)

    def __rmul__(self, z):
        return self.scale(z)

    def __matmul__(self, other):
        return self._mul(other)

    def _mul(self, other):
        # a known mod eps^(Ka+1) times b with valuation vb is known mod eps^(Ka+vb+1)
        va = self.offset if len(self.c) else 0
        vb = other.offset if len(other.c) else 0
        K = min(self.K + vb, other.K + va)
        if self.is_zero() or other.is_zero():
            return EpsSeries.zero(K, self.shape or other.shape)
        n = min(len(self.c), K - va - vb + 1)
        m = min(len(other.c), K - va - vb + 1)
        if n <= 0 or m <= 0:
            return EpsSeries.zero(K, self.shape or other.shape)
        a, b = self.c[:n], other.c[:m]
        length = min(n + m - 1, K - va - vb + 1)
        if self.shape or other.shape:
            out = np.zeros((length,) + np.broadcast_shapes(a.shape[1:], b.shape[1:])
                           if not (self.shape and other.shape) else
                           (length, a.shape[1], b.shape[2]), dtype=complex)
            for i in range(min(n, length)):
                cnt = min(m, length - i)
                out[i:i + cnt] += np.matmul(a[i], b[:cnt]) if (self.shape and other.shape) \
                    else a[i] * b[:cnt]
        else:
            out = np.convolve(a, b)[:length]
        return EpsSeries(out, va + vb, K)

    def __pow__(self, k):
        out = EpsSeries.const(np.eye(self.shape[0]) if self.shape else 1.0, self.K)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self):
        """Multiplicative inverse; the constant term must be invertible."""
        if self.is_zero() or self.offset != 0:
            raise NotInvertible("series inverse needs an invertible eps^0 term")
        K = self.K
        a = [self[j] for j in range(K + 1)]
        if self.shape:
            b0 = np.linalg.inv(a[0])
            b = [b0]
            for j in range(1, K + 1):
                acc = sum(a[i] @ b[j - i] for i in range(1, j + 1))
                b.append(-b0 @ acc)
        else:
            if a[0] == 0:
                raise NotInvertible("zero constant term")
            b = [1.0 / a[0]]
            for j in range(1, K + 1):
                b.append(-sum(a[i] * b[j - i] for i in range(1, j + 1)) / a[0])
        return EpsSeries(b, 0, K)

    def entry(self, i, j):
        return EpsSeries(self.c[:, i, j], self.offset, self.K)

    def trace(self):
        return EpsSeries(np.trace(self.c, axis1=1, axis2=2), self.offset, self.K)


def det(matrix):
    """Determinant of a matrix-valued series by Laplace expansion on entries."""
    n = matrix.shape[0]
    entries = [[matrix.entry(i, j) for j in range(n)] for i in range(n)]
    return _det_entries(entries)


def _det_entries(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_entries(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def exp_like(R0, K, weights):
    """``sum_j weights[j] * (eps R0)^j`` as a matrix series truncated at ``K``."""
    R0 = np.asarray(R0, dtype=complex)
    n = R0.shape[0]
    coeffs = []
    power = np.eye(n, dtype=complex)
    for j in range(K + 1):
        coeffs.append(weights(j) * power)
        power = power @ R0
    return EpsSeries(coeffs, 0, K)
