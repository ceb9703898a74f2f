"""Measurings between finite algebras and coalgebras of endofunctors.

The main entry points are re-exported here; see the submodules for the rest.
"""

__version__ = "0.1.0"

from .errors import BoundExceeded, FunctorMismatch, MlabError, NotSaturated, ParseError, PreconditionError, Refused
from .functor import (
    BOOL_AND,
    ID_PLUS_ONE,
    Comp,
    ConstMonoid,
    Exp,
    FinSet,
    Fn,
    Id,
    Inl,
    Inr,
    Pair,
    Prod,
    Sum,
    check_lax_axioms,
    eta,
    eval_on_map,
    eval_on_set,
    nabla,
    parse_functor,
)
from .structures import (
    INF,
    NATURALS,
    FinAlgebra,
    FinCoalgebra,
    LazyAlgebra,
    Subterminal,
    index_of,
    lazy_saturation,
    product_coalgebra,
    quotient_algebras,
    std_algebra,
    std_coalgebra,
    subcoalgebras,
    succ_algebra,
    succ_coalgebra,
    unit_coalgebra,
)
from .measuring import (
    Measuring,
    compose_measurings,
    convolution_algebra,
    convolution_lazy,
    count_measurings,
    enumerate_alg_homs,
    enumerate_measurings,
    is_measuring,
    partial_induction,
)
from .universal import classify_universal, dual_algebra, dual_coalgebra_classified, measuring_graph, measuring_tensor
from .initiality import is_C_initial_bounded, terminal_C_initial_bounded, unique_map_to_dual
from .mixed import MooreCoalgebra, automaton, gf_algebra, gf_convolution, gf_measuring_count
from .textio import format_structure, parse_structure

__all__ = [
    "BoundExceeded",
    "FunctorMismatch",
    "MlabError",
    "NotSaturated",
    "ParseError",
    "PreconditionError",
    "Refused",
    "BOOL_AND",
    "ID_PLUS_ONE",
    "Comp",
    "ConstMonoid",
    "Exp",
    "FinSet",
    "Fn",
    "Id",
    "Inl",
    "Inr",
    "Pair",
    "Prod",
    "Sum",
    "check_lax_axioms",
    "eta",
    "eval_on_map",
    "eval_on_set",
    "nabla",
    "parse_functor",
    "INF",
    "NATURALS",
    "FinAlgebra",
    "FinCoalgebra",
    "LazyAlgebra",
    "Subterminal",
    "index_of",
    "lazy_saturation",
    "product_coalgebra",
    "quotient_algebras",
    "std_algebra",
    "std_coalgebra",
    "subcoalgebras",
    "succ_algebra",
    "succ_coalgebra",
    "unit_coalgebra",
    "Measuring",
    "compose_measurings",
    "convolution_algebra",
    "convolution_lazy",
    "count_measurings",
    "enumerate_alg_homs",
    "enumerate_measurings",
    "is_measuring",
    "partial_induction",
    "classify_universal",
    "dual_algebra",
    "dual_coalgebra_classified",
    "measuring_graph",
    "measuring_tensor",
    "is_C_initial_bounded",
    "terminal_C_initial_bounded",
    "unique_map_to_dual",
    "MooreCoalgebra",
    "automaton",
    "gf_algebra",
    "gf_convolution",
    "gf_measuring_count",
    "format_structure",
    "parse_structure",
]
