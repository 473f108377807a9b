"""Regularised integrals and sums of radial log-polyhomogeneous symbols."""
from .chen import (
    chen_cutoff_integral,
    nested_chen,
    p_operator,
    top_log_coefficient,
    verify_integral_shuffle,
    verify_symbol_shuffle,
)
from .cutoff import AsymptoticExpansion, ball_expansion, cutoff_integral, multi_cutoff_integral, rescaled_finite_part
from .discrete import (
    SumSpec,
    bernoulli,
    cutoff_sum,
    cutoff_sum_family,
    discrete_chen_sum,
    discrete_p,
    em_interpolant,
    mixable_shuffles,
    mzv,
    verify_stuffle,
)
from .meromorphic import MeromorphicGerm, chen_germ, germ_of_integral, kv_coefficients, regularised_integral, riesz_family
from .renorm import GermWord, birkhoff, counterterm, obstruction, rbar, renormalise
from .scalars import (
    LaurentSeries,
    MultiLaurent,
    RationalFunction,
    finite_part,
    laurent_of_rational,
    multi_constant_term,
    multi_restrict,
    pole_part,
    residue_at_order,
)
from .symbols import (
    Exponent,
    LogSymbol,
    TensorWord,
    d_param,
    d_radial,
    evaluate,
    order,
    sym_add,
    sym_mul,
    wodzicki_residue,
)

__version__ = "0.1.0"
