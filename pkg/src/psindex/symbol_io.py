"""Plain-text symbol files.

::

    # comment
    order 0
    depth 3
    matrix 2            (optional, default 1)
    component 0         (degree = order - 0)
    plus: [ exp(i*1*x) , 0 ; 0 , 1 ]
    minus: 1

Expressions: ``+ - *``, parentheses, decimal numbers, ``i``, and the x-trig
atoms ``exp(i*k*x)``, ``exp(-i*k*x)``, ``cos(k*x)``, ``sin(k*x)``.  A
leading unary minus and exponent notation in numbers are also accepted so
that rendered output always parses back.  Missing components are zero;
in a matrix symbol a bare scalar expression means that multiple of the
identity.
"""

import re

import numpy as np

from .errors import ParseError
from .fourier import CoeffFn
from .symbol import ClassicalSymbol

_TOKEN = re.compile(r"""
    (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_]+)
  | (?P<op>[-+*()\[\];,])
  | (?P<ws>\s+)
""", re.VERBOSE)


def _tokenize(text, line, col0):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), col0 + pos + 1))
        pos = m.end()
    out.append(("end", "", col0 + len(text) + 1))
    return out


class _ExprParser:
    def __init__(self, tokens, line):
        self.toks = tokens
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None, kind=None):
        tok = self.toks[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            got = tok[1] or "end of line"
            raise ParseError(f"expected {want!r}, found {got!r}", self.line, tok[2])
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek()[1] == "*":
            self.take("*")
            val = val * self.factor()
        return val

    def _int(self):
        tok = self.take()
        if tok[0] != "num" or not tok[1].isdigit():
            raise ParseError(f"expected an integer frequency, found {tok[1]!r}", self.line, tok[2])
        return int(tok[1])

    def factor(self):
        kind, text, col = self.peek()
        if text == "-":
            self.take()
            return -self.factor()
        if kind == "num":
            self.take()
            return CoeffFn.constant(float(text))
        if text == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if kind == "name":
            self.take()
            if text == "i":
                return CoeffFn.constant(1j)
            if text == "exp":
                self.take("(")
                sign = 1
                if self.peek()[1] == "-":
                    self.take()
                    sign = -1
                self.take("i")
                self.take("*")
                k = self._int()
                self.take("*")
                self.take("x")
                self.take(")")
                return CoeffFn.monomial(sign * k)
            if text in ("cos", "sin"):
                self.take("(")
                k = self._int()
                self.take("*")
                self.take("x")
                self.take(")")
                if text == "cos":
                    return CoeffFn.from_dict({k: 0.5, -k: 0.5}) if k else CoeffFn.constant(1.0)
                return CoeffFn.from_dict({k: -0.5j, -k: 0.5j}) if k else CoeffFn.zero()
            raise ParseError(f"unknown name {text!r}", self.line, col)
        raise ParseError(f"unexpected {text or 'end of line'!r}", self.line, col)


def parse_expr(text, line=1, col0=1):
    """Parse one scalar expression into a CoeffFn."""
    p = _ExprParser(_tokenize(text, line, col0), line)
    val = p.expr()
    p.take(kind="end")
    return val


def _parse_matrix(text, dim, line, col0):
    toks = _tokenize(text, line, col0)
    p = _ExprParser(toks, line)
    if p.peek()[1] != "[":
        val = p.expr()
        p.take(kind="end")
        if dim == 1:
            return CoeffFn(val.lo, val.c[:, None, None])
        return CoeffFn(val.lo, val.c[:, None, None] * np.eye(dim))
    p.take("[")
    rows = [[p.expr()]]
    while p.peek()[1] in (",", ";"):
        sep = p.take()[1]
        if sep == ",":
            rows[-1].append(p.expr())
        else:
            rows.append([p.expr()])
    p.take("]")
    p.take(kind="end")
    if len(rows) != dim or any(len(r) != dim for r in rows):
        shape = "x".join(str(len(r)) for r in rows)
        raise ParseError(f"matrix entry has shape {len(rows)} rows ({shape}), expected {dim}x{dim}",
                         line, col0)
    return CoeffFn.from_entries(rows)


def parse_symbol(text):
    """Parse the text format into a :class:`ClassicalSymbol`."""
    header = {}
    comps = {}
    current = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        col0 = len(body) - len(body.lstrip()) + 1
        word = stripped.split(None, 1)[0].rstrip(":")
        if word in ("order", "depth", "matrix") and not stripped.startswith(("plus", "minus")):
            parts = stripped.split()
            if len(parts) != 2:
                raise ParseError(f"'{word}' takes exactly one value", ln, col0)
            if word in header:
                raise ParseError(f"duplicate '{word}' line", ln, col0)
            expected = {"order": 0, "depth": 1, "matrix": 2}[word]
            if len(header) != expected and not (word == "matrix" and len(header) == 2):
                raise ParseError(f"'{word}' out of place (header is order, depth, [matrix])",
                                 ln, col0)
            if comps:
                raise ParseError(f"'{word}' after the first component", ln, col0)
            try:
                header[word] = float(parts[1]) if word == "order" else int(parts[1])
            except ValueError:
                raise ParseError(f"malformed {word} value {parts[1]!r}", ln,
                                 col0 + stripped.index(parts[1])) from None
            continue
        if len(header) < 2:
            raise ParseError("header must start with 'order' and 'depth'", ln, col0)
        dim = header.get("matrix", 1)
        if word == "component":
            parts = stripped.split()
            if len(parts) != 2 or not re.fullmatch(r"\d+", parts[1]):
                raise ParseError("malformed component line (expected 'component <int>')", ln, col0)
            j = int(parts[1])
            if j >= header["depth"]:
                raise ParseError(f"component {j} outside depth {header['depth']}", ln, col0)
            if j in comps:
                raise ParseError(f"duplicate component {j}", ln, col0)
            if current is not None and len(comps[current]) < 2:
                raise ParseError(f"component {current} is missing a branch", ln, col0)
            comps[j] = {}
            current = j
            continue
        if stripped.startswith(("plus:", "minus:")):
            if current is None:
                raise ParseError("branch line before any component", ln, col0)
            name, rest = stripped.split(":", 1)
            if name in comps[current]:
                raise ParseError(f"duplicate {name} branch", ln, col0)
            offset = col0 + len(name) + 1
            comps[current][name] = _parse_matrix(rest, dim, ln, offset)
            continue
        raise ParseError(f"unrecognized line starting with {word!r}", ln, col0)
    if len(header) < 2:
        raise ParseError("missing 'order'/'depth' header", None, None)
    if current is not None and len(comps[current]) < 2:
        raise ParseError(f"component {current} is missing a branch", None, None)
    order, depth, dim = header["order"], header["depth"], header.get("matrix", 1)
    if depth < 1:
        raise ParseError("depth must be positive", None, None)
    if dim < 1:
        raise ParseError("matrix size must be positive", None, None)
    branches = {j: (c["plus"], c["minus"]) for j, c in comps.items()}
    return ClassicalSymbol.from_branches(order, depth, branches, dim=dim)


def _fmt_real(v):
    return repr(float(v))


def _fmt_coeff(z):
    z = complex(z)
    re_, im = z.real + 0.0, z.imag + 0.0
    if im == 0:
        return _fmt_real(re_)
    if re_ == 0:
        return f"{_fmt_real(im)}*i"
    sign = "-" if im < 0 else "+"
    return f"({_fmt_real(re_)}{sign}{_fmt_real(abs(im))}*i)"


def render_expr(f):
    """Text for a scalar CoeffFn; parses back to the same coefficients."""
    parts = []
    for k, c in sorted(f.coeffs.items()):
        coef = _fmt_coeff(c)
        if k == 0:
            parts.append(coef)
        else:
            atom = f"exp(i*{k}*x)" if k > 0 else f"exp(-i*{-k}*x)"
            parts.append(atom if complex(c) == 1 else f"{coef}*{atom}")
    return " + ".join(parts) if parts else "0"


def _render_matrix(f, dim):
    if dim == 1:
        return render_expr(CoeffFn(f.lo, f.c[:, 0, 0]))
    rows = []
    for i in range(dim):
        rows.append(" , ".join(render_expr(f.entry(i, j)) for j in range(dim)))
    return "[ " + " ; ".join(rows) + " ]"


def render_symbol(a):
    """Text form of a symbol; zero components are omitted."""
    order = a.order
    lines = [f"order {order!r}" if not float(order).is_integer() else f"order {int(order)}",
             f"depth {a.depth}"]
    if a.dim > 1:
        lines.append(f"matrix {a.dim}")
    for j, c in enumerate(a.components):
        if c.is_zero():
            continue
        lines.append(f"component {j}")
        lines.append(f"plus: {_render_matrix(c.plus, a.dim)}")
        lines.append(f"minus: {_render_matrix(c.minus, a.dim)}")
    return "\n".join(lines) + "\n"


def read_symbol(path):
    with open(path, encoding="utf-8") as fh:
        return parse_symbol(fh.read())


def write_symbol(path, a):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_symbol(a))


__all__ = ["parse_symbol", "render_symbol", "parse_expr", "render_expr", "read_symbol",
           "write_symbol"]
