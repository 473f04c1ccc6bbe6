"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class AXBError(Exception):
    """Base class for all errors raised by axbc."""


class ShapeError(AXBError, ValueError):
    """Operands are not conformable."""


class ParseError(AXBError, ValueError):
    """Malformed matrix text, with a 1-based line/column position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class InvalidInverseError(AXBError, ValueError):
    """A matrix passed as a {1}-inverse does not satisfy A G A = A."""


class InvalidWitnessError(AXBError, ValueError):
    """An injected rank normal form fails Q A P = E_A or regularity."""


class UnboundParameterError(AXBError, KeyError):
    """A parametric matrix was evaluated without a value for every parameter."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class NoSolutionError(AXBError):
    """The equation A X B = C is inconsistent.

    ``certificate`` maps a block label (``C'12``, ``C'21``, ``C'22`` or
    ``c''tail``) to an :class:`axbc.solver.Offender` holding the nonzero block
    of the transformed right-hand side.
    """

    def __init__(self, message: str, certificate: dict | None = None):
        super().__init__(message)
        self.certificate = dict(certificate or {})
