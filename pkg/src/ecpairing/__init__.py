"""Pairings on elliptic curves over finite fields: Weil, Tate, ate family, R-ate, Hess."""

from .curve import Curve, Line, Point, hash_to_subgroup, make_curve, make_twist
from .divisors import Divisor, LineProduct, divisor_of, evaluate, function_from_divisor
from .errors import PairingError, SupportCollision
from .fields import Field, FieldElement, embed_field, make_field
from .miller import Chain, build_chain, miller, miller_multi
from .optimal import FREEMAN_K10, CurveFamily, build_lattice, family_instantiate, lll_reduce, shortest_vector
from .pairings import (
    PairingContext,
    PairingValue,
    ate_family,
    hess,
    make_context,
    nondegeneracy_exponent,
    r_ate,
    tate,
    torsion_representative,
    weil,
)

from .presets import PRESETS, preset

__version__ = "0.1.0"
