import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from goldman_torus.expr import (
    Bracket,
    Leaf,
    Scale,
    Sum,
    TreeSyntaxError,
    evaluate,
    from_json,
    from_text,
    leaves,
    to_json,
    to_text,
    witness_stats,
)
from goldman_torus.generation import (
    REFINED,
    REFINED_GENERATOR,
    STANDARD,
    GeneratorSet,
    TrivialLoopError,
    bootstrap_refined,
    synthesize_witness,
)
from goldman_torus.lattice import Element

a, b = Leaf.of(1, 0), Leaf.of(0, 1)
A, B = Leaf.of(-1, 0), Leaf.of(0, -1)
nonzero_targets = st.tuples(st.integers(-15, 15), st.integers(-15, 15)).filter(lambda t: t != (0, 0))


def count_nodes(expr):
    # plain recursive count, separate from witness_stats
    if isinstance(expr, Leaf):
        return 1
    if isinstance(expr, Bracket):
        return 1 + count_nodes(expr.left) + count_nodes(expr.right)
    if isinstance(expr, Scale):
        return 1 + count_nodes(expr.child)
    return 1 + sum(count_nodes(c) for c in expr.children)


class TestEvaluate:
    def test_a_b(self):
        assert evaluate(Bracket(a, b)) == Element.basis(1, 1)

    def test_scale_zero(self):
        assert evaluate(Scale(0, Bracket(a, b))) == Element.zero()

    def test_nested(self):
        assert evaluate(Bracket(a, Bracket(a, b))) == Element.basis(2, 1)

    def test_empty_sum(self):
        assert evaluate(Sum(())) == Element.zero()


class TestStats:
    def test_leaf(self):
        assert tuple(witness_stats(a)) == (0, 1, 1)

    def test_bracket(self):
        assert tuple(witness_stats(Bracket(a, b))) == (1, 3, 1)

    def test_item_one_chain(self):
        # [a,[a,...[a,b]]] with n a's: n brackets + n+1 leaves
        n = 30
        w = synthesize_witness((n, 1))
        assert tuple(witness_stats(w)) == (30, 61, 1)
        assert count_nodes(w) == 2 * n + 1

    @given(nonzero_targets)
    def test_node_count_matches_plain_count(self, t):
        w = synthesize_witness(t)
        assert witness_stats(w).node_count == count_nodes(w)

    def test_linear_size(self):
        for n in (10, 20, 40):
            for t in [(n, n - 1), (-n, 3), (2, -n), (n, 0), (n, -n)]:
                assert witness_stats(synthesize_witness(t)).node_count <= 8 * (abs(t[0]) + abs(t[1])) + 8

    def test_max_denominator(self):
        # a^5b^5 = (1/25)[a^5, b^5]
        assert witness_stats(synthesize_witness((5, 5))).max_scalar_denominator == 25


class TestSynthesis:
    def test_item_one(self):
        assert synthesize_witness((3, 1)) == Bracket(a, Bracket(a, Bracket(a, b)))

    def test_pure_power_scalar_recomputed(self):
        # [b^-1, a^2 b] = (0*1 - (-1)*2) a^2 = 2a^2, so the scale is +1/2
        w = synthesize_witness((2, 0))
        assert w == Scale(Fraction(1, 2), Bracket(B, synthesize_witness((2, 1))))

    def test_case_1a(self):
        # [a^2b^2, b] = 2 a^2b^3
        w = synthesize_witness((2, 3))
        assert w == Scale(Fraction(1, 2), Bracket(synthesize_witness((2, 2)), b))

    def test_diagonal_uses_pure_powers(self):
        w = synthesize_witness((3, 3))
        assert w == Scale(Fraction(1, 9), Bracket(synthesize_witness((3, 0)), synthesize_witness((0, 3))))

    @pytest.mark.parametrize(
        "target, left, right, scalar",
        [
            ((-3, 0), (0, -1), (-3, 1), Fraction(-1, 3)),  # negative a-power
            ((0, 4), (-1, 0), (1, 4), Fraction(-1, 4)),
            ((0, -4), (-1, 0), (1, -4), Fraction(1, 4)),
            ((1, -3), (0, -1), (1, -2), 1),
            ((-1, 3), (-1, 0), (0, 3), Fraction(-1, 3)),
            ((-3, 1), (-1, 0), (-2, 1), -1),
            ((1, 3), (0, 1), (1, 2), -1),
        ],
    )
    def test_axis_items(self, target, left, right, scalar):
        inner = Bracket(synthesize_witness(left), synthesize_witness(right))
        expected = inner if scalar == 1 else Scale(scalar, inner)
        assert synthesize_witness(target) == expected

    def test_generators_are_leaves(self):
        for t in [(1, 0), (0, 1), (-1, 0), (0, -1)]:
            assert synthesize_witness(t) == Leaf.of(*t)

    def test_trivial_loop_rejected(self):
        with pytest.raises(TrivialLoopError, match="origin"):
            synthesize_witness((0, 0))

    def test_unsupported_generator_set(self):
        with pytest.raises(ValueError):
            synthesize_witness((1, 1), GeneratorSet([Element.basis(1, 0)]))

    @given(nonzero_targets)
    def test_soundness_and_leaf_discipline(self, t):
        w = synthesize_witness(t)
        assert evaluate(w) == Element.basis(*t)
        assert leaves(w) <= set(STANDARD.elements)


class TestRefined:
    g = Leaf(REFINED_GENERATOR)

    def test_table(self):
        table = bootstrap_refined()
        assert table[Element.basis(1, 0)] == a
        assert table[Element.basis(0, 1)] == b
        assert table[Element.basis(-1, 0)] == Scale(-1, Bracket(self.g, b))
        assert table[Element.basis(0, -1)] == Sum((Bracket(self.g, a), Bracket(a, b)))
        for target, expr in table.items():
            assert evaluate(expr) == target

    def test_paper_identities(self):
        assert evaluate(Bracket(self.g, b)) == Element.basis(-1, 0, -1)
        assert evaluate(Bracket(self.g, a)) == Element({(0, -1): 1, (1, 1): -1})

    @pytest.mark.parametrize("i", range(-6, 7))
    def test_completeness(self, i):
        for j in range(-6, 7):
            if (i, j) == (0, 0):
                continue
            w = synthesize_witness((i, j), REFINED)
            assert evaluate(w) == Element.basis(i, j)
            assert leaves(w) <= set(REFINED.elements)


class TestGeneratorSet:
    def test_rejects_empty_and_duplicates(self):
        with pytest.raises(ValueError):
            GeneratorSet([])
        with pytest.raises(ValueError):
            GeneratorSet([Element.basis(1, 0), Element.basis(1, 0)])

    def test_membership(self):
        assert REFINED_GENERATOR in REFINED
        assert Element.basis(0, -1) not in REFINED


def test_item_fourteen_is_zero():
    # [ab^-1, 1/2 a^-1 b]: scalar 1*1 - (-1)(-1) = 0
    expr = Bracket(Leaf.of(1, -1), Scale(Fraction(1, 2), Leaf.of(-1, 1)))
    assert evaluate(expr) == Element.zero()


class TestSerialisation:
    def test_text_form(self):
        assert to_text(Scale(Fraction(1, 2), Bracket(Leaf.of(2, 2), b))) == "scale 1/2 (bracket (leaf a^2b^2) (leaf b^1))"

    def test_parse_loose_text(self):
        assert from_text("scale 1/2 (bracket (leaf a^2b^2) (leaf b))") == Scale(Fraction(1, 2), Bracket(Leaf.of(2, 2), b))
        assert from_text("(sum)") == Sum(())

    def test_leaf_with_sum(self):
        expr = Bracket(Leaf(REFINED_GENERATOR), a)
        assert from_text(to_text(expr)) == expr

    @pytest.mark.parametrize("bad", ["", "leaf", "bracket (leaf a)", "scale x (leaf a)", "twist (leaf a)", "leaf a)", "(leaf a"])
    def test_errors(self, bad):
        with pytest.raises((TreeSyntaxError, ValueError)):
            from_text(bad)

    @given(nonzero_targets, st.sampled_from([STANDARD, REFINED]))
    def test_round_trips(self, t, gens):
        w = synthesize_witness(t, gens)
        assert from_text(to_text(w)) == w
        assert from_json(json.loads(json.dumps(to_json(w)))) == w
