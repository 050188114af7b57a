"""Bracket-expression trees: constructive witnesses that an element lies in a
generated Lie subalgebra.

A tree has four node kinds.  ``Leaf`` holds an element (normally a
generator), ``Bracket`` takes the Lie bracket of its two children, ``Scale``
multiplies its child by an exact rational, and ``Sum`` adds its children.

Trees have two serial forms that round-trip:

* prefix text, e.g. ``scale 1/2 (bracket (leaf a^2b^2) (leaf b^1))``
* JSON, with a ``kind`` tag on every node.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Union

from .lattice import Element, as_coefficient, bracket

__all__ = [
    "Leaf",
    "Bracket",
    "Scale",
    "Sum",
    "BracketExpr",
    "WitnessStats",
    "evaluate",
    "leaves",
    "substitute",
    "witness_stats",
    "to_text",
    "from_text",
    "to_json",
    "from_json",
    "TreeSyntaxError",
]


@dataclass(frozen=True, eq=True)
class Leaf:
    value: Element

    @classmethod
    def of(cls, i: int, j: int) -> "Leaf":
        return cls(Element.basis(i, j))


@dataclass(frozen=True, eq=True)
class Bracket:
    left: "BracketExpr"
    right: "BracketExpr"


@dataclass(frozen=True, eq=True)
class Scale:
    coefficient: Fraction
    child: "BracketExpr"

    def __post_init__(self):
        object.__setattr__(self, "coefficient", as_coefficient(self.coefficient))


@dataclass(frozen=True, eq=True)
class Sum:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


BracketExpr = Union[Leaf, Bracket, Scale, Sum]


class WitnessStats(NamedTuple):
    depth: int
    node_count: int
    max_scalar_denominator: int


def _fold(expr, visit: Callable):
    # Witness trees share subtrees, so memoise on node identity.
    memo: dict[int, object] = {}

    def go(node):
        key = id(node)
        if key not in memo:
            if isinstance(node, Leaf):
                kids = ()
            elif isinstance(node, Bracket):
                kids = (go(node.left), go(node.right))
            elif isinstance(node, Scale):
                kids = (go(node.child),)
            elif isinstance(node, Sum):
                kids = tuple(go(c) for c in node.children)
            else:
                raise TypeError(f"not a bracket expression node: {node!r}")
            memo[key] = visit(node, kids)
        return memo[key]

    return go(expr)


def evaluate(expr: BracketExpr) -> Element:
    """The element denoted by ``expr``."""

    def visit(node, kids):
        if isinstance(node, Leaf):
            return node.value
        if isinstance(node, Bracket):
            return bracket(kids[0], kids[1])
        if isinstance(node, Scale):
            return kids[0] * node.coefficient
        total = kids[0] if kids else Element.zero()
        for k in kids[1:]:
            total = total + k
        return total

    return _fold(expr, visit)


def witness_stats(expr: BracketExpr) -> WitnessStats:
    """Depth (edges on the longest root-to-leaf path), node count of the tree
    (shared subtrees counted once per occurrence) and the largest denominator
    among ``Scale`` coefficients."""

    def visit(node, kids):
        if not kids:
            depth, count, den = 0, 1, 1
        else:
            depth = 1 + max(k.depth for k in kids)
            count = 1 + sum(k.node_count for k in kids)
            den = max(k.max_scalar_denominator for k in kids)
        if isinstance(node, Scale):
            den = max(den, node.coefficient.denominator)
        return WitnessStats(depth, count, den)

    return _fold(expr, visit)


def leaves(expr: BracketExpr) -> set[Element]:
    found: set[Element] = set()

    def visit(node, kids):
        if isinstance(node, Leaf):
            found.add(node.value)

    _fold(expr, visit)
    return found


def substitute(expr: BracketExpr, mapping: dict) -> BracketExpr:
    """Replace every leaf whose element is a key of ``mapping`` by the mapped
    subtree.  Leaves without an entry are kept."""

    def visit(node, kids):
        if isinstance(node, Leaf):
            return mapping.get(node.value, node)
        if isinstance(node, Bracket):
            return Bracket(kids[0], kids[1])
        if isinstance(node, Scale):
            return Scale(node.coefficient, kids[0])
        return Sum(kids)

    return _fold(expr, visit)


# -- serialisation -----------------------------------------------------------


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"offset {offset}: {message}")
        self.offset = offset


def _coef_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(expr: BracketExpr) -> str:
    from .syntax import format_element

    def visit(node, kids):
        if isinstance(node, Leaf):
            return f"leaf {format_element(node.value)}"
        if isinstance(node, Bracket):
            return f"bracket ({kids[0]}) ({kids[1]})"
        if isinstance(node, Scale):
            return f"scale {_coef_text(node.coefficient)} ({kids[0]})"
        return " ".join(["sum"] + [f"({k})" for k in kids])

    return _fold(expr, visit)


def from_text(text: str) -> BracketExpr:
    """Inverse of :func:`to_text`."""
    from .syntax import ParseError, parse_element

    n = len(text)

    def skip(pos):
        while pos < n and text[pos].isspace():
            pos += 1
        return pos

    def word(pos):
        start = pos
        while pos < n and not text[pos].isspace() and text[pos] not in "()":
            pos += 1
        return text[start:pos], pos

    def group(pos):
        # '(' node ')'
        pos = skip(pos)
        if pos >= n or text[pos] != "(":
            raise TreeSyntaxError("expected '('", pos)
        node, pos = body(pos + 1, closing=True)
        pos = skip(pos)
        if pos >= n or text[pos] != ")":
            raise TreeSyntaxError("expected ')'", pos)
        return node, pos + 1

    def body(pos, closing):
        pos = skip(pos)
        kw, pos = word(pos)
        if kw == "leaf":
            start = pos
            depth = 0
            while pos < n:
                ch = text[pos]
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    if depth == 0:
                        break
                    depth -= 1
                pos += 1
            if not closing and pos < n:
                raise TreeSyntaxError("unbalanced ')'", pos)
            try:
                value = parse_element(text[start:pos])
            except ParseError as exc:
                raise TreeSyntaxError(f"bad leaf element: {exc}", start) from exc
            return Leaf(value), pos
        if kw == "bracket":
            left, pos = group(pos)
            right, pos = group(pos)
            return Bracket(left, right), pos
        if kw == "scale":
            pos = skip(pos)
            tok, pos = word(pos)
            try:
                c = Fraction(tok)
            except (ValueError, ZeroDivisionError):
                raise TreeSyntaxError(f"bad scalar {tok!r}", pos - len(tok)) from None
            child, pos = group(pos)
            return Scale(c, child), pos
        if kw == "sum":
            kids = []
            while True:
                pos = skip(pos)
                if pos < n and text[pos] == "(":
                    kid, pos = group(pos)
                    kids.append(kid)
                else:
                    return Sum(tuple(kids)), pos
        raise TreeSyntaxError(f"unknown node kind {kw!r}", pos - len(kw))

    pos = skip(0)
    if pos < n and text[pos] == "(":
        node, pos = group(pos)
    else:
        node, pos = body(pos, closing=False)
    pos = skip(pos)
    if pos != n:
        raise TreeSyntaxError("trailing input", pos)
    return node


def to_json(expr: BracketExpr) -> dict:
    from .syntax import format_element

    def visit(node, kids):
        if isinstance(node, Leaf):
            return {"kind": "leaf", "element": format_element(node.value)}
        if isinstance(node, Bracket):
            return {"kind": "bracket", "left": kids[0], "right": kids[1]}
        if isinstance(node, Scale):
            return {"kind": "scale", "coefficient": _coef_text(node.coefficient), "child": kids[0]}
        return {"kind": "sum", "children": list(kids)}

    return _fold(expr, visit)


def from_json(data: dict) -> BracketExpr:
    from .syntax import parse_element

    kind = data.get("kind")
    if kind == "leaf":
        return Leaf(parse_element(data["element"]))
    if kind == "bracket":
        return Bracket(from_json(data["left"]), from_json(data["right"]))
    if kind == "scale":
        return Scale(Fraction(data["coefficient"]), from_json(data["child"]))
    if kind == "sum":
        return Sum(tuple(from_json(c) for c in data["children"]))
    raise ValueError(f"unknown node kind {kind!r}")
