"""Constructive finite generation of the torus Goldman algebra over Q.

Every class ``a^i b^j`` other than the trivial loop is an explicit nested
bracket of ``a, b, a^-1, b^-1`` with rational scalars.  The recursion is:

* pure powers ``a^n`` and ``a^-n`` from ``[b^-1, a^(+-n) b]``, and ``b^(+-n)``
  from ``[a^-1, a b^(+-n)]``
* diagonal classes ``a^(+-n) b^(+-n)`` from ``[a^(+-n), b^(+-n)]``
* the rows and columns next to the axes by peeling one generator at a
  time, e.g. ``a^n b = [a, a^(n-1) b]``
* everything else from a diagonal class bracketed with a pure power of the
  longer direction, e.g. ``a^i b^j ~ [a^i b^i, b^(j-i)]``.

Scalars are never hard-coded: each ``Scale`` node holds the reciprocal of
the bracket coefficient actually produced by its two children.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .expr import Bracket, BracketExpr, Leaf, Scale, Sum, evaluate, leaves, substitute
from .lattice import A, A_INV, B, B_INV, Element, LoopClass, bracket_basis

__all__ = [
    "GeneratorSet",
    "STANDARD",
    "REFINED",
    "REFINED_GENERATOR",
    "TrivialLoopError",
    "synthesize_witness",
    "bootstrap_refined",
    "generator_set",
]


class TrivialLoopError(ValueError):
    """The trivial loop is not a bracket, so it has no witness."""


class GeneratorSet:
    """An ordered, duplicate-free, nonempty list of generating elements."""

    def __init__(self, elements: Iterable[Element], name: str | None = None):
        elements = tuple(elements)
        if not elements:
            raise ValueError("a generator set must be nonempty")
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate generators")
        self.elements = elements
        self.name = name

    def __contains__(self, x: Element) -> bool:
        return x in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and set(self.elements) == set(other.elements)

    def __hash__(self):
        return hash(frozenset(self.elements))

    def __repr__(self):
        label = self.name or ", ".join(str(e) for e in self.elements)
        return f"GeneratorSet({label})"


STANDARD = GeneratorSet(
    [Element.basis(*A), Element.basis(*B), Element.basis(*A_INV), Element.basis(*B_INV)],
    name="standard",
)
# a^-1 b^-1 + b + 1
REFINED_GENERATOR = Element({(-1, -1): 1, (0, 1): 1, (0, 0): 1})
REFINED = GeneratorSet([Element.basis(*A), REFINED_GENERATOR, Element.basis(*B)], name="refined")


def generator_set(name: str) -> GeneratorSet:
    try:
        return {"standard": STANDARD, "refined": REFINED}[name]
    except KeyError:
        raise ValueError(f"unknown generator set {name!r}; expected 'standard' or 'refined'") from None


def _sign(n: int) -> int:
    return 1 if n > 0 else -1


def _via(u: LoopClass, v: LoopClass) -> BracketExpr:
    """Witness for ``u + v`` as a rescaled bracket of the witnesses of ``u`` and ``v``."""
    coef = bracket_basis(u, v).coefficient_at(u + v)
    if coef == 0:
        raise AssertionError(f"degenerate bracket [{u}, {v}]")
    node = Bracket(_standard(u), _standard(v))
    return node if coef == 1 else Scale(1 / coef, node)


@lru_cache(maxsize=None)
def _standard(t: LoopClass) -> BracketExpr:
    i, j = t
    if i == 0 and j == 0:
        raise TrivialLoopError(
            "the trivial loop a^0b^0 has no witness: every bracket [a^i b^j, a^k b^l] "
            "landing on the origin has coefficient i*(-j) - j*(-i) = 0"
        )
    if abs(i) + abs(j) == 1:
        return Leaf(Element.basis(i, j))
    if j == 0:
        return _via(B_INV, LoopClass(i, 1))
    if i == 0:
        return _via(A_INV, LoopClass(1, j))
    if abs(i) == abs(j):
        return _via(LoopClass(i, 0), LoopClass(0, j))
    if j == 1 and i > 0:
        return _via(A, LoopClass(i - 1, 1))
    if i == 1 and j > 0:
        return _via(B, LoopClass(1, j - 1))
    if j == 1 and i < 0:
        return _via(A_INV, LoopClass(i + 1, 1))
    if i == -1 and j > 0:
        return _via(A_INV, LoopClass(0, j))
    if i == 1 and j < 0:
        return _via(B_INV, LoopClass(1, j + 1))
    if abs(i) < abs(j):
        s = _sign(j) * abs(i)
        return _via(LoopClass(i, s), LoopClass(0, j - s))
    s = _sign(i) * abs(j)
    return _via(LoopClass(s, j), LoopClass(i - s, 0))


def synthesize_witness(target, gens: GeneratorSet = STANDARD) -> BracketExpr:
    """A bracket expression over ``gens`` that evaluates exactly to ``1 * target``.

    ``gens`` must be :data:`STANDARD` or :data:`REFINED`; for the refined set
    the standard witness is rewritten through :func:`bootstrap_refined`.
    Raises :class:`TrivialLoopError` for the trivial loop.
    """
    t = LoopClass(*target)
    expr = _standard(t)
    if gens == STANDARD:
        return expr
    if gens == REFINED:
        return substitute(expr, bootstrap_refined())
    raise ValueError(f"no witness synthesis for {gens!r}; use the standard or refined set")


@lru_cache(maxsize=None)
def _bootstrap() -> dict:
    a, b = Leaf(Element.basis(*A)), Leaf(Element.basis(*B))
    g = Leaf(REFINED_GENERATOR)
    table = {
        Element.basis(*A): a,
        Element.basis(*B): b,
        # [g, b] = -a^-1
        Element.basis(*A_INV): Scale(Fraction(-1), Bracket(g, b)),
        # [g, a] = b^-1 - ab and [a, b] = ab
        Element.basis(*B_INV): Sum((Bracket(g, a), Bracket(a, b))),
    }
    for target, expr in table.items():
        if evaluate(expr) != target:
            raise AssertionError(f"bootstrap entry for {target} does not evaluate correctly")
        if not leaves(expr) <= set(REFINED.elements):
            raise AssertionError("bootstrap entry uses a leaf outside the refined set")
    return table


def bootstrap_refined() -> dict:
    """Map each standard generator to an expression over the refined set
    ``{a, a^-1 b^-1 + b + 1, b}``."""
    return dict(_bootstrap())
