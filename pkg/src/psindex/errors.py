"""Exception types shared by the engines.

Every error carries a ``kind`` string so the CLI can render it uniformly.
"""


class PsIndexError(Exception):
    kind = "Error"

    def __init__(self, message="", **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self):
        if not self.context:
            return f"{self.kind}: {self.message}"
        ctx = ", ".join(f"{k}={v!r}" for k, v in self.context.items())
        return f"{self.kind}: {self.message} ({ctx})"


# -- fourier -----------------------------------------------------------------

class NotInvertible(PsIndexError):
    kind = "NotInvertible"


class BandwidthExceeded(PsIndexError):
    kind = "BandwidthExceeded"


# -- symbol calculus ---------------------------------------------------------

class SymbolGradeError(PsIndexError):
    """Grading / shape / parse failures of the symbol calculus."""

    kind = "SymbolGradeError"


class DepthExhausted(SymbolGradeError):
    kind = "DepthExhausted"


class NotElliptic(SymbolGradeError):
    kind = "NotElliptic"


class ShapeMismatch(SymbolGradeError):
    kind = "ShapeMismatch"


class ParseError(SymbolGradeError):
    kind = "ParseError"

    def __init__(self, message, line=None, column=None):
        super().__init__(message, line=line, column=column)
        self.line = line
        self.column = column

    def __str__(self):
        where = f"line {self.line}" if self.line is not None else "input"
        if self.column is not None:
            where += f", column {self.column}"
        return f"ParseError at {where}: {self.message}"


# -- index / oracle ----------------------------------------------------------

class NonIntegerWinding(PsIndexError):
    kind = "NonIntegerWinding"


class NoPlateau(PsIndexError):
    kind = "NoPlateau"


# -- wick engine -------------------------------------------------------------

class CapExceeded(PsIndexError):
    kind = "CapExceeded"


class NegativeValuation(PsIndexError):
    """A net negative power of epsilon survived a contraction."""

    kind = "NegativeValuation"


class ConfigError(PsIndexError):
    kind = "ConfigError"
