"""Wodzicki residue of a truncated symbol on the circle.

For ``n = 1`` the cosphere is two points, so the residue is the x-mean of
the trace of the degree ``-1`` component, summed over both branches.
"""

from .errors import DepthExhausted


def residue_window(a):
    """Return the trusted degree window ``(order, floor)`` used by :func:`wres`."""
    return a.order, a.floor


def wres(a):
    """``mean tr plus_{-1} + mean tr minus_{-1}`` (no relative branch sign).

    Symbols whose order is below ``-1`` have no degree ``-1`` term and give
    exactly zero.  Raises DepthExhausted when degree ``-1`` lies at or below
    the symbol's trusted floor.
    """
    if a.order < -1 - 1e-12:
        return 0j
    if a.floor >= -1 - 1e-12:
        raise DepthExhausted("degree -1 is outside the trusted window",
                             order=a.order, depth=a.depth)
    comp = a.component_at(-1)
    return complex(comp.plus.trace().mean() + comp.minus.trace().mean())
