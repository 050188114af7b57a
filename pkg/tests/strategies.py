from hypothesis import strategies as st

from goldman_torus.lattice import Element

exponents = st.integers(-6, 6)
classes = st.tuples(exponents, exponents)
rationals = st.fractions(min_value=-9, max_value=9, max_denominator=6)
integers = st.integers(-9, 9)


def elements(coefficients=rationals, max_terms=4, integral=False):
    return st.lists(st.tuples(classes, coefficients), max_size=max_terms).map(
        lambda terms: Element(terms, integral=integral)
    )
