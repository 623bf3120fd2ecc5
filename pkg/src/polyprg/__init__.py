"""Pseudorandom generators for low-degree polynomials over finite fields."""

from .algebra import (
    check_hypothesis_H,
    content,
    mpoly_gcd,
    resultant,
    restrict,
    substitute_rb,
    substitute_sa,
    sylvester,
)
from .errors import *  # noqa: F401,F403
from .fields import Field, FieldElem, PrimeField, absolute_trace
from .hitting import PHSG, HsgSpec, PolyPoint, SamplerParams, hsg_over_extension, hsg_sample, phsg_sample, sampler_draw
from .poly import MultiPoly, UniPoly, parse_poly
from .prg import PRG, PRGParams, Seed, choose_params, prg_generate, seed_length, trace_prg
from .tower import (
    TowerFailure,
    TowerField,
    TowerSpec,
    build_tower,
    canonical_tower,
    extension_field,
    is_irreducible_univariate,
    quadratic_irreducible_fast,
    tower_lift,
    tower_reduce,
)

__version__ = "0.1.0"
