from fractions import Fraction

from hypothesis import strategies as st

small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def exact_complex():
    from biuniv.scalars import QQi
    return st.builds(QQi, small_fractions, small_fractions)


def binomial(r, k):
    """Generalized binomial coefficient, exact for rational r."""
    out = Fraction(1)
    for j in range(k):
        out = out * (Fraction(r) - j) / (j + 1)
    return out
