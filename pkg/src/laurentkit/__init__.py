"""Exact Laurent polynomial arithmetic and Laurentness checks for recurrences."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    COMMON_FACTOR,
    COPRIME,
    LaurentPoly,
    NotDivisible,
    NotLaurent,
    VarSpace,
    lp_compose,
    lp_content_split,
    lp_coprime_probable,
    lp_divide_out_max_power,
    lp_exact_div,
    lp_set_zero,
    lp_specialize,
    lp_subst_inverse_ratio,
)
from .parsing import PolySyntaxError, UnknownVariable, parse_poly  # noqa: E402
from .exchange import (  # noqa: E402
    Edge,
    ExchangePattern,
    check_caterpillar_conditions,
    gcd_probe,
    propagate,
)
from .cyclic import CyclicSpec, build_g_sequence, cyclic_caterpillar, verify_cyclic  # noqa: E402
from .stencil import StencilRecurrence, spine_window, verify_stencil  # noqa: E402
from .recurrences import (  # noqa: E402
    RecurrenceSpec,
    TermTable,
    catalog,
    compute_numeric,
    compute_sequence_numeric,
    compute_term_symbolic,
    compute_terms_symbolic,
    gale_robinson_embed,
    lookup,
    two_term_embed,
)
from .homogeneous import (  # noqa: E402
    HomogeneousPattern,
    SymbolicPoint,
    apply_word,
    builtin_family,
    check_homogeneous,
)

__all__ = [
    "COMMON_FACTOR",
    "COPRIME",
    "LaurentPoly",
    "NotDivisible",
    "NotLaurent",
    "VarSpace",
    "lp_compose",
    "lp_content_split",
    "lp_coprime_probable",
    "lp_divide_out_max_power",
    "lp_exact_div",
    "lp_set_zero",
    "lp_specialize",
    "lp_subst_inverse_ratio",
    "Edge",
    "ExchangePattern",
    "check_caterpillar_conditions",
    "gcd_probe",
    "propagate",
    "RecurrenceSpec",
    "TermTable",
    "catalog",
    "compute_numeric",
    "compute_sequence_numeric",
    "compute_term_symbolic",
    "compute_terms_symbolic",
    "gale_robinson_embed",
    "lookup",
    "two_term_embed",
    "HomogeneousPattern",
    "SymbolicPoint",
    "apply_word",
    "builtin_family",
    "check_homogeneous",
    "CyclicSpec",
    "build_g_sequence",
    "cyclic_caterpillar",
    "verify_cyclic",
    "StencilRecurrence",
    "spine_window",
    "verify_stencil",
    "PolySyntaxError",
    "UnknownVariable",
    "parse_poly",
]
