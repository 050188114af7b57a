"""SplitMix64, the seeded generator behind every randomised check.

It is spelled out here (rather than using :mod:`random`) so that a failing
seed reproduces bit-for-bit in any language:

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output z ^ (z >> 31)

Integers in ``[lo, hi]`` are ``lo + output mod (hi - lo + 1)``.  A random
element draws ``1 + output mod max_terms`` terms, each as ``i``, ``j``,
coefficient in that order.
"""

from __future__ import annotations

from .lattice import Element

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def integer(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)

    def element(self, bound: int, max_terms: int = 3, max_coefficient: int = 9, *, integral: bool = False) -> Element:
        n = 1 + self.next() % max_terms
        terms = []
        for _ in range(n):
            i = self.integer(-bound, bound)
            j = self.integer(-bound, bound)
            c = self.integer(-max_coefficient, max_coefficient)
            terms.append(((i, j), c))
        return Element(terms, integral=integral)
