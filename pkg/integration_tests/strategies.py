import operator
from fractions import Fraction

from hypothesis import strategies as st

from qschwarz.qseries import QSeries

coefficients = st.fractions(min_value=-9, max_value=9, max_denominator=4)
nonzero_coefficients = coefficients.filter(bool)
grids = st.sampled_from([1, 2, 3])
exponents = st.sampled_from([Fraction(1, 2), Fraction(2, 3), Fraction(3, 2), Fraction(2), Fraction(3)])


def _on_grid(grid, min_index, head, tail, extra):
    terms = [(Fraction(n, grid), c) for n, c in enumerate([head] + tail, start=min_index)]
    top = min_index + 1 + len(tail)
    return QSeries.from_terms(terms, Fraction(top, grid) + extra)


def series(grid=None, min_index=0, nonzero_head=False):
    """Series with small rational coefficients on ``q^(1/grid)``, starting at index ``min_index``."""
    return st.builds(
        _on_grid,
        grids if grid is None else st.just(grid),
        st.just(min_index),
        nonzero_coefficients if nonzero_head else coefficients,
        st.lists(coefficients, min_size=2, max_size=7),
        st.integers(min_value=0, max_value=2),
    )


def units(grid=None):
    """Series with a nonzero constant term."""
    return st.builds(operator.add, series(grid, min_index=1), nonzero_coefficients)


def nonunits(grid=None):
    """Series with positive valuation and a nonzero leading coefficient."""
    return series(grid, min_index=1, nonzero_head=True)


@st.composite
def mobius_matrices(draw, bound=5):
    """Integer ``(a, b, c, d)`` with ``ad - bc != 0`` and ``d != 0``."""
    small = st.integers(min_value=-bound, max_value=bound)
    a, b, c = draw(small), draw(small), draw(small)
    d = draw(small.filter(bool))
    if a * d - b * c == 0:
        a += 1
    return a, b, c, d
