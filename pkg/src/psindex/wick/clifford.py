"""Clifford (CAR) algebra on ``psi^1..psi^n`` and ``psibar_1..psibar_n``.

Relations: ``psi^i psibar_j + psibar_j psi^i = delta_ij``; all other pairs
anticommute and squares vanish.  A basis monomial is stored as
``(eta, theta)``: increasing ``psi`` indices followed by increasing
``psibar`` indices.
"""

from collections import defaultdict

PSI, BAR = 0, 1


def _normalize(word):
    """Expand a word of ``(kind, index)`` letters into ``{(eta, theta): coeff}``."""
    out = defaultdict(complex)
    stack = [(1.0 + 0j, list(word))]
    while stack:
        coef, w = stack.pop()
        for pos in range(len(w) - 1):
            (k1, i1), (k2, i2) = w[pos], w[pos + 1]
            # target order: all PSI (ascending) then all BAR (ascending)
            if (k1, i1) == (k2, i2):
                break
            if k1 == BAR and k2 == PSI:
                swapped = w[:pos] + [w[pos + 1], w[pos]] + w[pos + 2:]
                stack.append((-coef, swapped))
                if i1 == i2:
                    stack.append((coef, w[:pos] + w[pos + 2:]))
                break
            if k1 == k2 and i1 > i2:
                stack.append((-coef, w[:pos] + [w[pos + 1], w[pos]] + w[pos + 2:]))
                break
        else:
            eta = tuple(i for k, i in w if k == PSI)
            theta = tuple(i for k, i in w if k == BAR)
            out[(eta, theta)] += coef
            continue
        # a repeated adjacent letter squares to zero: drop the word
    return {k: v for k, v in out.items() if v != 0}


class CliffordElement:
    """Linear combination of normal-ordered monomials ``psi^eta psibar^theta``."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {}
        for (eta, theta), c in (terms or {}).items():
            word = [(PSI, i) for i in eta] + [(BAR, j) for j in theta]
            for key, v in _normalize(word).items():
                self.terms[key] = self.terms.get(key, 0) + c * v
        self.terms = {k: v for k, v in self.terms.items() if v != 0}

    @classmethod
    def one(cls, n):
        return cls(n, {((), ()): 1.0})

    @classmethod
    def psi(cls, n, i):
        return cls(n, {((i,), ()): 1.0})

    @classmethod
    def psibar(cls, n, j):
        return cls(n, {((), (j,)): 1.0})

    @classmethod
    def word(cls, n, letters):
        """Product of letters ``('psi', i)`` / ``('bar', j)`` in the given order."""
        w = [(PSI if k == "psi" else BAR, i) for k, i in letters]
        out = cls(n)
        out.terms = _normalize(w)
        return out

    def __add__(self, other):
        out = CliffordElement(self.n)
        out.terms = dict(self.terms)
        for k, v in other.terms.items():
            out.terms[k] = out.terms.get(k, 0) + v
        out.terms = {k: v for k, v in out.terms.items() if v != 0}
        return out

    def scale(self, z):
        out = CliffordElement(self.n)
        out.terms = {k: v * z for k, v in self.terms.items() if v * z != 0}
        return out

    def __rmul__(self, z):
        return self.scale(z)

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        out = defaultdict(complex)
        for (e1, t1), c1 in self.terms.items():
            for (e2, t2), c2 in other.terms.items():
                w = ([(PSI, i) for i in e1] + [(BAR, j) for j in t1]
                     + [(PSI, i) for i in e2] + [(BAR, j) for j in t2])
                for key, v in _normalize(w).items():
                    out[key] += c1 * c2 * v
        res = CliffordElement(self.n)
        res.terms = {k: v for k, v in out.items() if v != 0}
        return res

    def canonical(self):
        """Re-normalize (a no-op on already canonical elements)."""
        return CliffordElement(self.n, self.terms)

    def __eq__(self, other):
        return isinstance(other, CliffordElement) and self.n == other.n and \
            self.terms == other.terms

    def __repr__(self):
        return f"CliffordElement(n={self.n}, terms={self.terms})"


def top_sign(n):
    """``tr_s`` of the canonical top monomial ``psi^1..psi^n psibar_1..psibar_n``.

    Fixed so that ``tr_s(psi^1..psi^n psibar_n..psibar_1) = (-1)^n``; reversing
    the ``psibar`` block costs ``(-1)^(n(n-1)/2)``.
    """
    return (-1) ** n * (-1) ** (n * (n - 1) // 2)


def supertrace(c):
    """Coefficient of the top monomial times :func:`top_sign`; lower monomials give 0."""
    top = (tuple(range(1, c.n + 1)), tuple(range(1, c.n + 1)))
    return complex(c.terms.get(top, 0)) * top_sign(c.n)


def pi_element(n):
    """``psibar_1 psi^1 psibar_2 psi^2 ... psibar_n psi^n``."""
    letters = []
    for i in range(1, n + 1):
        letters += [("bar", i), ("psi", i)]
    return CliffordElement.word(n, letters)


def top_reversed(n):
    """``psi^1 .. psi^n psibar_n .. psibar_1``."""
    letters = [("psi", i) for i in range(1, n + 1)] + [("bar", j) for j in range(n, 0, -1)]
    return CliffordElement.word(n, letters)
