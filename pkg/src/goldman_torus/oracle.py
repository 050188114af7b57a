"""Brute-force checks that do not go through the witness synthesiser or the
gcd membership rule.

``reachable_classes`` computes the Lie subalgebra generated by a finite set
inside a window, as an exact integer lattice: level 0 is the span of the
generators, level ``d`` adds the brackets of every pair of basis vectors of
level ``d - 1``.  Brackets are computed here from the closed formula on
plain integer dictionaries, not through :mod:`goldman_torus.lattice`.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional

from .lattice import Element, LoopClass, bracket
from .rng import SplitMix64
from .structure import normalize_mode, xgcd
from .syntax import format_element

log = logging.getLogger(__name__)

__all__ = [
    "Window",
    "ReachReport",
    "AchievableCoefficients",
    "FuzzReport",
    "reachable_classes",
    "achievable_coefficients",
    "jacobi_fuzz",
    "default_budget",
    "BUDGET_ENV",
]

BUDGET_ENV = "GOLDMAN_TORUS_BUDGET"
DEFAULT_BUDGET = 200_000


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


@dataclass(frozen=True)
class Window:
    """Exponent bound ``n`` (|i|, |j| <= n), largest divisor ``m`` allowed in
    rational mode, and bracket depth ``depth``."""

    n: int
    m: int = 10
    depth: int = 4

    def __post_init__(self):
        for name in ("n", "m", "depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"window bound {name} must be at least 1")

    def classes(self) -> list[LoopClass]:
        r = range(-self.n, self.n + 1)
        return [LoopClass(i, j) for i in r for j in r]

    def contains(self, c) -> bool:
        return abs(c[0]) <= self.n and abs(c[1]) <= self.n

    def estimate(self) -> int:
        """Upper bound on bracket evaluations: every level brackets all pairs
        of a basis of at most ``(2n+1)^2`` vectors."""
        w = (2 * self.n + 1) ** 2
        return self.depth * w * (w - 1) // 2


class _IntegerLattice:
    """Row echelon basis of a sublattice of Z^dim, kept keyed by pivot column."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict[int, list[int]] = {}

    def insert(self, v: list[int]) -> bool:
        changed = False
        v = list(v)
        for col in range(self.dim):
            q = v[col]
            if q == 0:
                continue
            row = self.rows.get(col)
            if row is None:
                if q < 0:
                    v = [-e for e in v]
                self._reduce_above(col, v)
                self.rows[col] = v
                return True
            p = row[col]
            if q % p == 0:
                f = q // p
                v = [e - f * r for e, r in zip(v, row)]
                continue
            g, s, t = xgcd(p, q)
            new_row = [s * r + t * e for r, e in zip(row, v)]
            v = [(p // g) * e - (q // g) * r for r, e in zip(row, v)]
            self._reduce_above(col, new_row)
            self.rows[col] = new_row
            changed = True
        return changed

    def _reduce_above(self, col: int, pivot_row: list[int]) -> None:
        # keeps entries small: other rows' entries in a pivot column lie in [0, pivot)
        p = pivot_row[col]
        for c, row in self.rows.items():
            if c < col and row[col]:
                f = row[col] // p
                if f:
                    self.rows[c] = [e - f * r for e, r in zip(row, pivot_row)]

    def basis(self) -> list[list[int]]:
        return [self.rows[c] for c in sorted(self.rows)]

    def index_of_unit(self, col: int) -> Optional[int]:
        """Smallest ``q > 0`` with ``q * e_col`` in the lattice, or None if
        ``e_col`` is not in its rational span."""
        basis = self.basis()
        pivots = sorted(self.rows)
        lam = []
        for k, c in enumerate(pivots):
            target = 1 if c == col else 0
            acc = Fraction(target) - sum((lam[h] * basis[h][c] for h in range(k)), Fraction(0))
            lam.append(acc / basis[k][c])
        for c in range(self.dim):
            got = sum((lam[h] * basis[h][c] for h in range(len(basis))), Fraction(0))
            if got != (1 if c == col else 0):
                return None
        q = 1
        for x in lam:
            q = lcm(q, x.denominator)
        return q


def _prime_factors_at_most(q: int, m: int) -> bool:
    p = 2
    while p * p <= q:
        while q % p == 0:
            if p > m:
                return False
            q //= p
        p += 1
    return q == 1 or q <= m


def _raw_bracket(x: dict, y: dict) -> dict:
    out: dict = {}
    for (i, j), u in x.items():
        for (k, l), v in y.items():
            s = i * l - j * k
            if s:
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + s * u * v
    return {c: v for c, v in out.items() if v}


@dataclass
class ReachReport:
    window: Window
    mode: str
    generators: list[str]
    estimate: int
    budget: int
    brackets_evaluated: int = 0
    discarded_out_of_window: int = 0
    origin_hits: int = 0
    truncated: bool = False
    saturated: bool = False
    level_ranks: list[int] = field(default_factory=list)
    index: dict = field(default_factory=dict)
    reachable: list[LoopClass] = field(default_factory=list)
    unreached: list[LoopClass] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "window": {"n": self.window.n, "m": self.window.m, "depth": self.window.depth},
            "mode": self.mode,
            "generators": self.generators,
            "estimate": self.estimate,
            "budget": self.budget,
            "brackets_evaluated": self.brackets_evaluated,
            "discarded_out_of_window": self.discarded_out_of_window,
            "origin_hits": self.origin_hits,
            "truncated": self.truncated,
            "saturated": self.saturated,
            "level_ranks": self.level_ranks,
            "reachable": [list(c) for c in self.reachable],
            # bounded search: absence is "unreached within budget", not a proof
            "unreached_within_budget": [list(c) for c in self.unreached],
            "achievable": [
                {"class": list(c), "index": self.index[c]} for c in sorted(self.index)
            ],
        }


def reachable_classes(gens: Iterable[Element], window: Window, mode: str = "rational", budget: int | None = None) -> ReachReport:
    """Classes ``t`` in the window with ``1 * t`` in the generated subalgebra.

    For each class the report keeps the *index*: the least ``q > 0`` with
    ``q * t`` in the computed integer span (``None`` if ``t`` is outside its
    rational span).  In integer mode ``t`` is reached iff the index is 1; in
    rational mode iff every prime factor of the index is at most ``window.m``.

    Bracket results with a term outside the window are dropped, so the search
    is sound but not complete.  ``origin_hits`` counts evaluated brackets with
    a nonzero trivial-loop coefficient.
    """
    mode = normalize_mode(mode)
    budget = default_budget() if budget is None else budget
    gens = list(gens)
    classes = window.classes()
    col = {c: k for k, c in enumerate(classes)}
    report = ReachReport(
        window=window,
        mode=mode,
        generators=[format_element(g) for g in gens],
        estimate=window.estimate(),
        budget=budget,
    )
    log.info("closure of %d generators on %s: at most %d brackets (budget %d)", len(gens), window, report.estimate, budget)

    lat = _IntegerLattice(len(classes))
    for g in gens:
        terms = g.terms
        if not all(window.contains(c) for c in terms):
            report.discarded_out_of_window += 1
            continue
        den = 1
        for v in terms.values():
            den = lcm(den, v.denominator)
        if den != 1 and mode == "integer":
            raise ValueError(f"integer-mode closure needs integral generators, got {format_element(g)}")
        vec = [0] * len(classes)
        for c, v in terms.items():
            vec[col[c]] = int(v * den)
        lat.insert(vec)
    report.level_ranks.append(len(lat.rows))

    for _ in range(window.depth):
        basis = [{classes[k]: e for k, e in enumerate(row) if e} for row in lat.basis()]
        changed = False
        for p in range(len(basis)):
            for q in range(p + 1, len(basis)):
                if report.brackets_evaluated >= budget:
                    report.truncated = True
                    break
                report.brackets_evaluated += 1
                out = _raw_bracket(basis[p], basis[q])
                if not out:
                    continue
                if out.get((0, 0)):
                    report.origin_hits += 1
                if not all(window.contains(c) for c in out):
                    report.discarded_out_of_window += 1
                    continue
                vec = [0] * len(classes)
                for c, v in out.items():
                    vec[col[c]] = v
                changed |= lat.insert(vec)
            if report.truncated:
                break
        report.level_ranks.append(len(lat.rows))
        if report.truncated:
            log.warning("closure truncated after %d brackets", report.brackets_evaluated)
            break
        if not changed:
            report.saturated = True
            break

    for c in classes:
        q = lat.index_of_unit(col[c])
        report.index[c] = q
        if q is None:
            ok = False
        elif mode == "integer":
            ok = q == 1
        else:
            ok = _prime_factors_at_most(q, window.m)
        (report.reachable if ok else report.unreached).append(c)
    return report


@dataclass(frozen=True)
class AchievableCoefficients:
    target: LoopClass
    bound: int
    values: frozenset

    @property
    def gcd(self) -> int:
        g = 0
        for v in self.values:
            g = gcd(g, v)
        return g

    def to_json(self) -> dict:
        return {"target": list(self.target), "bound": self.bound, "values": sorted(self.values), "gcd": self.gcd}


def achievable_coefficients(target, bound: int) -> AchievableCoefficients:
    """All scalars of single brackets ``[a^k b^l, a^(i-k) b^(j-l)]`` with
    ``|k|, |l| <= bound`` landing on ``target = (i, j)``."""
    t = LoopClass(*target)
    if t == (0, 0):
        raise ValueError("target must not be the trivial loop")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    values = set()
    for k in range(-bound, bound + 1):
        for l in range(-bound, bound + 1):
            values.add(k * (t.j - l) - l * (t.i - k))
    return AchievableCoefficients(t, bound, frozenset(values))


@dataclass
class FuzzReport:
    trials: int
    seed: int
    bound: int
    trials_run: int = 0
    failure: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.failure is None and self.trials_run == self.trials

    def to_json(self) -> dict:
        out = {
            "trials": self.trials,
            "seed": self.seed,
            "bound": self.bound,
            "trials_run": self.trials_run,
            "passed": self.passed,
            "rng": "splitmix64",
        }
        if self.failure is not None:
            out["failure"] = self.failure
        return out


def jacobi_fuzz(trials: int, bound: int = 20, seed: int = 42) -> FuzzReport:
    """Check antisymmetry and the Jacobi identity on seeded random triples
    (up to 3 terms each, exponents in ``[-bound, bound]``, coefficients in
    ``[-9, 9]``).  Stops at the first failure and records the triple."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = SplitMix64(seed)
    report = FuzzReport(trials, seed, bound)
    for n in range(trials):
        x, y, z = (rng.element(bound) for _ in range(3))
        antisym = bracket(x, y) + bracket(y, x)
        jac = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)
        report.trials_run = n + 1
        if antisym or jac:
            report.failure = {
                "trial": n,
                "x": format_element(x),
                "y": format_element(y),
                "z": format_element(z),
                "antisymmetry_defect": format_element(antisym),
                "jacobi_defect": format_element(jac),
            }
            break
    return report
