"""Exceptions raised by the series engine and the verification layers."""


class QSchwarzError(Exception):
    """Base class for every error raised by qschwarz."""
    pass


class SeriesError(QSchwarzError):
    """A series operation could not be carried out."""
    pass


class ZeroSeries(SeriesError):
    """The series has no nonzero term below its truncation."""
    pass


class DivisionByZeroSeries(SeriesError):
    """Division by (or square root of) a series that is zero to its truncation."""
    pass


class UnsupportedGrid(SeriesError):
    """The exponent grid does not allow the requested exact substitution."""
    pass


class InsufficientPrecision(QSchwarzError):
    """The requested order exceeds the truncation the inputs justify."""

    def __init__(self, requested, available):
        self.requested = requested
        self.available = available
        super().__init__(f"requested order {requested} exceeds justified truncation {available}")


class DegenerateMobius(QSchwarzError):
    """A Möbius quadruple with ad - bc = 0."""
    pass


class Resonance(QSchwarzError):
    """The Frobenius recurrence hits a zero leading factor at step k."""

    def __init__(self, k: int):
        self.k = k
        super().__init__(f"resonant Frobenius recurrence at k={k}")


class LevelOutOfRange(QSchwarzError):
    """Level m outside the admissible range 2..5."""

    def __init__(self, m: int):
        self.m = m
        super().__init__(f"level {m} is outside 2..5")


class NonIntegralDegree(QSchwarzError):
    """(6n - m)·nu_inf is not divisible by 12."""
    pass


class DomainError(QSchwarzError):
    """A point of the upper half-plane is too close to the real line."""
    pass
