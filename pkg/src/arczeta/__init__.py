"""Exact invariants of real analytic germs.

The package computes virtual Poincare polynomials of constructible piece
descriptions and motivic zeta functions of monomial and diagonal germs by
three independent routes: direct jet-space decomposition, evaluation of
resolution data, and convolution of one-variable factors, together with the
classification of two-variable Brieskorn germs built on top.
"""

from .brieskorn import (
    BrieskornClass,
    ClassStatus,
    SignValue,
    classify,
    recover_p,
    recover_q,
    recover_signs,
)
from .errors import ArczetaError, ClassifyError, InputError, UnsupportedComputationError
from .jets import (
    DiagonalGerm,
    Germ,
    JetStratum,
    MonomialGerm,
    TieCurveRule,
    UnsupportedGermError,
    germ_to_str,
    jet_beta,
    jet_beta_sign,
    jet_strata,
    parse_germ,
    tie_curve_beta,
    tie_curve_rule,
    zeta_direct,
)
from .oracle import JET_SPACE_CAP, count_jets_with_order
from .ring import (
    DEFAULT_ORDER,
    LaurentPoly,
    ZetaExpr,
    ZetaSeries,
    ZetaTerm,
    expand_term,
    format_poly,
    format_series,
    parse_poly,
    zeta_expr,
    zeta_term,
)
from .vpoly import (
    Affine,
    BetaScript,
    BlowupDef,
    Custom,
    Difference,
    DisjointUnion,
    ExprDef,
    Points,
    Product,
    ProjSpace,
    PuncturedAffine,
    Ref,
    Sphere,
    Torus,
    VerificationResult,
    beta_atom,
    beta_expr,
    blowup_solve,
    count_points,
    difference,
    expr_dim,
    product,
    run_script,
    script_from_json,
    script_to_json,
    union,
    verify_polynomial_count,
)
from .zeta import (
    Component,
    Distinguished,
    InvariantTriple,
    NotDistinguished,
    ResolutionDatum,
    StratumData,
    closed_form,
    compare_invariants,
    dl_expr,
    dl_naive,
    dl_sign,
    germ_invariants,
    resolution_from_json,
    resolution_to_json,
    ts_coefficients,
    ts_convolve,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
