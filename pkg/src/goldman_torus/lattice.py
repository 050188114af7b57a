"""Exact arithmetic in the Goldman Lie algebra of the closed torus.

Free homotopy classes of loops on the torus are the words ``a^i b^j``, so a
class is a lattice point ``(i, j)``.  An :class:`Element` is a finite formal
sum of classes with rational (or integer) coefficients, and the bracket of two
classes is

    [a^i b^j, a^k b^l] = (i*l - j*k) a^(i+k) b^(j+l)

extended bilinearly.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

__all__ = [
    "LoopClass",
    "Element",
    "ModeError",
    "ORIGIN",
    "A",
    "B",
    "A_INV",
    "B_INV",
    "as_coefficient",
    "bracket_basis",
    "bracket",
    "add",
    "scale",
    "negate",
    "coefficient_at",
]

Scalar = Union[int, Fraction]


class ModeError(ValueError):
    """Raised when integer-mode and rational-mode values are mixed, or a
    non-integral scalar reaches an integer-mode element."""


class LoopClass(NamedTuple):
    """The free homotopy class ``a^i b^j``; ``(0, 0)`` is the contractible loop."""

    i: int
    j: int

    def __add__(self, other):  # lattice addition, not tuple concatenation
        return LoopClass(self.i + other[0], self.j + other[1])

    def is_trivial(self) -> bool:
        return self.i == 0 and self.j == 0


ORIGIN = LoopClass(0, 0)
A = LoopClass(1, 0)
B = LoopClass(0, 1)
A_INV = LoopClass(-1, 0)
B_INV = LoopClass(0, -1)


def as_coefficient(value) -> Fraction:
    """Coerce ``value`` to an exact rational; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact coefficient: {value!r}")


def _as_class(c) -> LoopClass:
    if isinstance(c, LoopClass):
        return c
    i, j = c
    return LoopClass(int(i), int(j))


class Element:
    """A finite formal sum ``sum c_t * t`` over loop classes ``t``.

    Zero coefficients are never stored, so two elements are equal exactly when
    their term maps are equal.  ``integral=True`` marks an element of the
    integer form of the algebra: its coefficients must be integers and it
    refuses to combine with rational-mode elements.  Equality ignores the mode.
    """

    __slots__ = ("_terms", "_integral", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), *, integral: bool = False):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[LoopClass, Fraction] = {}
        for cls, coef in items:
            cls = _as_class(cls)
            acc[cls] = acc.get(cls, Fraction(0)) + as_coefficient(coef)
        clean = {c: v for c, v in acc.items() if v != 0}
        if integral:
            for c, v in clean.items():
                if v.denominator != 1:
                    raise ModeError(f"coefficient {v} at {c} is not an integer")
        self._terms = clean
        self._integral = bool(integral)
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, integral: bool) -> "Element":
        # terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._integral = integral
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, i: int, j: int, coefficient: Scalar = 1, *, integral: bool = False) -> "Element":
        return cls({LoopClass(i, j): coefficient}, integral=integral)

    @classmethod
    def zero(cls, *, integral: bool = False) -> "Element":
        return cls._raw({}, integral)

    @property
    def integral(self) -> bool:
        return self._integral

    @property
    def mode(self) -> str:
        return "integer" if self._integral else "rational"

    @property
    def terms(self) -> dict[LoopClass, Fraction]:
        """A copy of the term map."""
        return dict(self._terms)

    def support(self) -> list[LoopClass]:
        return sorted(self._terms)

    def items(self) -> list[tuple[LoopClass, Fraction]]:
        """Terms in printing order (lexicographic by ``(i, j)``)."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[LoopClass, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient_at(self, c) -> Fraction:
        return self._terms.get(_as_class(c), Fraction(0))

    def is_single_class(self) -> bool:
        return len(self._terms) == 1

    def with_mode(self, integral: bool) -> "Element":
        return Element(self._terms, integral=integral)

    def _check_mode(self, other: "Element") -> None:
        if self._integral != other._integral:
            raise ModeError(f"cannot combine a {self.mode}-mode element with a {other.mode}-mode element")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_mode(other)
        out = dict(self._terms)
        for c, v in other._terms.items():
            s = out.get(c, 0) + v
            if s:
                out[c] = s
            else:
                out.pop(c, None)
        return Element._raw(out, self._integral)

    def __neg__(self):
        return Element._raw({c: -v for c, v in self._terms.items()}, self._integral)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        s = as_coefficient(scalar)
        if self._integral and s.denominator != 1:
            raise ModeError(f"cannot scale an integer-mode element by {s}")
        if s == 0:
            return Element._raw({}, self._integral)
        return Element._raw({c: v * s for c, v in self._terms.items()}, self._integral)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        from .syntax import format_element

        tag = ", integral=True" if self._integral else ""
        return f"Element({format_element(self)!r}{tag})"

    def __str__(self):
        from .syntax import format_element

        return format_element(self)


def bracket_basis(x, y, *, integral: bool = False) -> Element:
    """Bracket of two loop classes: ``(x.i*y.j - x.j*y.i) * (x + y)``."""
    x, y = _as_class(x), _as_class(y)
    s = x.i * y.j - x.j * y.i
    if s == 0:
        return Element._raw({}, integral)
    return Element._raw({x + y: Fraction(s)}, integral)


def bracket(x: Element, y: Element) -> Element:
    """Bilinear extension of :func:`bracket_basis`."""
    x._check_mode(y)
    out: dict[LoopClass, Fraction] = {}
    for (i, j), u in x._terms.items():
        for (k, l), v in y._terms.items():
            s = i * l - j * k
            if s == 0:
                continue
            key = LoopClass(i + k, j + l)
            val = out.get(key, 0) + s * u * v
            if val:
                out[key] = val
            else:
                del out[key]
    return Element._raw(out, x._integral)


def add(x: Element, y: Element) -> Element:
    return x + y


def scale(c, x: Element) -> Element:
    return x * c


def negate(x: Element) -> Element:
    return -x


def coefficient_at(x: Element, c) -> Fraction:
    return x.coefficient_at(c)
