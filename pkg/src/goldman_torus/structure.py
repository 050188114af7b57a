"""Membership certificates for the derived algebra and the lower central series,
the integer obstruction to finite generation, and centrality checks.

Over Z, the span of brackets is

    [G, G] = span{ gcd(i, j) * a^i b^j,  n * a^n,  n * b^n }

with the trivial loop excluded, and every later term of the lower central
series equals it.  Over Q the rule reduces to "no trivial-loop term".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional

from .expr import Bracket, BracketExpr, Leaf, Scale, Sum, evaluate, to_json, to_text
from .lattice import Element, LoopClass, bracket, bracket_basis
from .syntax import format_class, format_coefficient, format_element

__all__ = [
    "xgcd",
    "bezout",
    "Obstruction",
    "MembershipCertificate",
    "DerivedIdentity",
    "CenterVerdict",
    "derived_membership",
    "derived_witness",
    "lcs_member",
    "z_generation_obstruction",
    "center_check",
    "normalize_mode",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def bezout(i: int, j: int) -> tuple[int, int, int]:
    """Bezout pair for ``x*i + y*j == d``, normalised so that ``|y|`` is
    minimal over the solution family ``(x + t*j/d, y - t*i/d)``; ties prefer
    smaller ``|x|``, then nonnegative ``y``."""
    d, x, y = xgcd(i, j)
    if d == 0:
        raise ValueError("gcd(0, 0) is undefined")
    si, sj = i // d, j // d
    if si == 0:
        return d, x, y
    t0 = y // si
    candidates = [(x + t * sj, y - t * si) for t in (t0 - 1, t0, t0 + 1, t0 + 2)]
    x, y = min(candidates, key=lambda p: (abs(p[1]), abs(p[0]), p[1] < 0))
    return d, x, y


def normalize_mode(mode: str) -> str:
    m = mode.lower()
    if m in ("z", "integer", "int"):
        return "integer"
    if m in ("q", "rational"):
        return "rational"
    raise ValueError(f"unknown mode {mode!r}; expected 'z'/'integer' or 'q'/'rational'")


def _modulus(c: LoopClass) -> int:
    # gcd(i, 0) = |i|; the origin only ever carries coefficient 0, i.e. 0*Z
    return gcd(c.i, c.j)


@dataclass(frozen=True)
class Obstruction:
    """``modulus`` does not divide the numerator of ``coefficient`` at ``cls``.

    Modulus 0 is used for the trivial loop: its only achievable coefficient
    is 0, and 0 divides nothing else."""

    cls: LoopClass
    coefficient: Fraction
    modulus: int

    def holds(self) -> bool:
        if self.modulus == 0:
            return self.coefficient != 0
        return self.coefficient.denominator == 1 and self.coefficient.numerator % self.modulus != 0

    def to_json(self) -> dict:
        return {
            "class": [self.cls.i, self.cls.j],
            "coefficient": format_coefficient(self.coefficient),
            "modulus": self.modulus,
        }

    def describe(self) -> str:
        where = format_class(self.cls)
        if self.modulus == 0:
            return f"coefficient {format_coefficient(self.coefficient)} on the trivial loop; no bracket reaches the origin"
        return (
            f"coefficient {format_coefficient(self.coefficient)} at {where} is not divisible "
            f"by gcd({self.cls.i}, {self.cls.j}) = {self.modulus}"
        )


@dataclass(frozen=True)
class MembershipCertificate:
    query: Element
    member: bool
    mode: str
    depth: int = 1
    witness: Optional[BracketExpr] = None
    obstruction: Optional[Obstruction] = None

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non-member"

    def verify(self) -> bool:
        """Re-check the certificate from scratch."""
        if self.member:
            return self.witness is not None and evaluate(self.witness) == self.query
        ob = self.obstruction
        if ob is None or not ob.holds():
            return False
        if self.query.coefficient_at(ob.cls) != ob.coefficient:
            return False
        if ob.cls == (0, 0):
            return ob.modulus == 0
        return self.mode == "integer" and ob.modulus == gcd(ob.cls.i, ob.cls.j)

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "mode": self.mode,
            "depth": self.depth,
            "query": format_element(self.query),
        }
        if self.witness is not None:
            out["witness"] = to_json(self.witness)
            out["witness_text"] = to_text(self.witness)
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction.to_json()
        return out


class DerivedIdentity(NamedTuple):
    """``[u, v] == coefficient * target``."""

    u: LoopClass
    v: LoopClass
    coefficient: int
    target: LoopClass

    def as_expr(self) -> BracketExpr:
        return Bracket(Leaf(Element.basis(*self.u)), Leaf(Element.basis(*self.v)))


def derived_witness(c: int, target) -> DerivedIdentity:
    """Classes ``u, v`` with ``[u, v] = c * target`` where ``|c| = gcd(target)``.

    With ``x*i + y*j = d`` the pair is ``u = (i + y, j - x)``, ``v = (-y, x)``;
    for ``c = -d`` the factors are swapped.
    """
    t = LoopClass(*target)
    if t == (0, 0):
        raise ValueError("the trivial loop is not in the image of the bracket")
    d, x, y = bezout(t.i, t.j)
    if c not in (d, -d):
        raise ValueError(f"coefficient {c} is not +-gcd({t.i}, {t.j}) = +-{d}")
    u, v = LoopClass(t.i + y, t.j - x), LoopClass(-y, x)
    if c < 0:
        u, v = v, u
    if bracket_basis(u, v) != Element.basis(t.i, t.j, c):
        raise AssertionError(f"identity [{u}, {v}] = {c}*{t} failed to verify")
    return DerivedIdentity(u, v, c, t)


def _nested_witness(t: LoopClass, depth: int) -> BracketExpr:
    """A left-normed bracket of ``depth + 1`` basis classes equal to ``gcd(t) * t``.

    The right factor ``(-y, x)`` has coprime exponents, so it is itself a
    depth-``(depth-1)`` bracket with coefficient 1."""
    ident = derived_witness(gcd(t.i, t.j), t)
    left = Leaf(Element.basis(*ident.u))
    if depth == 1:
        return Bracket(left, Leaf(Element.basis(*ident.v)))
    return Bracket(left, _nested_witness(ident.v, depth - 1))


def lcs_member(x: Element, depth: int, mode: str = "integer") -> MembershipCertificate:
    """Is ``x`` in ``G_depth`` (``G_0 = G``, ``G_k = [G, G_(k-1)]``)?

    The verdict does not depend on ``depth >= 1``.  Member certificates carry
    a witness whose bracket terms are nested ``depth`` deep, so the witness
    lies in ``G_depth`` by construction.  Non-members cite the first failing
    term in ``(i, j)`` order.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    mode = normalize_mode(mode)
    if (mode == "integer") != x.integral:
        raise ValueError(f"{mode}-mode query needs a {mode}-mode element; got {x.mode}")
    for cls, c in x.items():
        m = _modulus(cls)
        if cls == (0, 0):
            return MembershipCertificate(x, False, mode, depth, obstruction=Obstruction(cls, c, 0))
        if mode == "integer" and c.numerator % m:
            return MembershipCertificate(x, False, mode, depth, obstruction=Obstruction(cls, c, m))
    parts = []
    for cls, c in x.items():
        node = _nested_witness(cls, depth)
        k = c / _modulus(cls)
        parts.append(node if k == 1 else Scale(k, node))
    witness = parts[0] if len(parts) == 1 else Sum(tuple(parts))
    return MembershipCertificate(x, True, mode, depth, witness=witness)


def derived_membership(x: Element, mode: str = "integer") -> MembershipCertificate:
    """Membership in the derived algebra ``[G, G]``; see :func:`lcs_member`."""
    return lcs_member(x, 1, mode)


def z_generation_obstruction(n: int) -> MembershipCertificate:
    """Certificate that ``(n - 1) a^n`` is not in the integer span of brackets.

    Any bracket landing on ``a^n`` is ``[a^i b^j, a^(n-i) b^-j] = -j*n a^n``,
    so its coefficient is a multiple of ``n``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    x = Element.basis(n, 0, n - 1, integral=True)
    cert = derived_membership(x, "integer")
    ob = cert.obstruction
    if cert.member or ob is None or ob.modulus != n:
        raise AssertionError(f"expected an obstruction with modulus {n}")
    return cert


@dataclass(frozen=True)
class CenterVerdict:
    query: Element
    window: int
    central: bool
    partner: Optional[LoopClass] = None
    value: Optional[Element] = None

    def to_json(self) -> dict:
        out = {
            "verdict": "central-on-window" if self.central else "non-central",
            "window": self.window,
            "query": format_element(self.query),
        }
        if self.partner is not None:
            out["partner"] = [self.partner.i, self.partner.j]
            out["bracket"] = format_element(self.value)
        return out


def center_check(x: Element, window: int) -> CenterVerdict:
    """Does ``x`` commute with every ``a^k b^l``, ``|k|, |l| <= window``?

    If some term of ``x`` has ``i != 0`` then ``b`` is a partner, because
    ``[x, b]`` has the nonzero term ``c*i a^i b^(j+1)`` for each such term and
    distinct terms cannot cancel.  Otherwise ``a`` works for any ``j != 0``.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    y = x.with_mode(False) if x.integral else x
    candidates = []
    if any(c.i for c in y.support()):
        candidates.append(LoopClass(0, 1))
    elif any(c.j for c in y.support()):
        candidates.append(LoopClass(1, 0))
    else:
        candidates = [LoopClass(k, l) for k in range(-window, window + 1) for l in range(-window, window + 1)]
    for p in candidates:
        value = bracket(y, Element.basis(*p))
        if value:
            return CenterVerdict(x, window, False, p, value)
    return CenterVerdict(x, window, True)
