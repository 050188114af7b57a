"""Exact computations in the Goldman Lie algebra of the closed torus."""

from .expr import Bracket, Leaf, Scale, Sum, evaluate, witness_stats
from .generation import REFINED, STANDARD, GeneratorSet, bootstrap_refined, synthesize_witness
from .lattice import (
    Element,
    LoopClass,
    ModeError,
    add,
    bracket,
    bracket_basis,
    coefficient_at,
    negate,
    scale,
)
from .structure import (
    MembershipCertificate,
    center_check,
    derived_membership,
    derived_witness,
    lcs_member,
    z_generation_obstruction,
)
from .syntax import ParseError, format_element, parse, parse_element

__version__ = "0.1.0"
