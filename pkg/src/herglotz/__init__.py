"""Exact verification and synthesis of rational Herglotz functions."""

from __future__ import annotations

from .arith import GaussRat, Rat, refinement_cap
from .debranges import (
    DeBrangesInput,
    R_from_Q_subspace,
    build_RQ,
    check_debranges,
    check_hb_n,
    schur_quotient,
    split_AB,
    upper_halfplane_root_count,
)
from .divisors import (
    DivisorFn,
    colour_decompose,
    divisor_of,
    interval_sum,
    is_n_interlacing,
    min_interlacing_order,
)
from .errors import HerglotzError, MalformedInput, Undecided
from .linalg import CMat, MatRatFn, moore_penrose_const, moore_penrose_ratfn, principal_minors
from .matrix import (
    PartialFractionRep,
    check_hypotheses,
    extract_partial_fractions,
    factor_determinant,
    sample_criterion_i,
    verify_criterion_ii,
    verify_criterion_iii,
)
from .poly import Poly
from .ratfn import RatFn
from .roots import RealRoot
from .scalar import (
    FactoredFn,
    InterlacingData,
    check_scalar_herglotz,
    classical_hb_check,
    factor_into_herglotz,
    scalar_partial_fractions,
    synth_from_interlacing,
    winding_oracle,
)
from .verdict import Check, Outcome, Verdict

__version__ = "0.1.0"
