"""Exact invariant-theory toolkit for the odd orthogonal groups in
characteristic 2: finite-field tables, packed-exponent polynomial rings,
Steenrod operations, the generator tower, and a verification harness.
"""

from .errors import (
    AmbiguousSolution,
    BudgetExceeded,
    CapExceeded,
    NonSquareInput,
    NoSolution,
    NotInSubalgebra,
    OrthoinvError,
)
from .gf import Field, embed_table, field_for_order
from .group import generators, group_order_bfs, variety_point_check
from .harness import SUITES, ConfigError, RunConfig, TextCache, run
from .invariants import (
    InvariantSet,
    dickson_full,
    dickson_tilde_table,
    evaluator_for,
    natural_u,
    u_tilde,
    xi,
    xi_gens,
    xibar_poly,
)
from .relations import CheckContext, CheckResult, verify_lemma_suite, verify_relations
from .ring import GREVLEX, LEX, MonomialOrder, Poly, RingSpec, sigma
from .steenrod import steenrod_full, steenrod_k, steenrod_xi
from .xialg import (
    XiAlg,
    XiEvaluator,
    XiPoly,
    det_xi,
    divide_xi,
    express_in_xi,
    natural_monomials,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousSolution",
    "BudgetExceeded",
    "CapExceeded",
    "CheckContext",
    "CheckResult",
    "ConfigError",
    "Field",
    "GREVLEX",
    "InvariantSet",
    "LEX",
    "MonomialOrder",
    "NonSquareInput",
    "NoSolution",
    "NotInSubalgebra",
    "OrthoinvError",
    "Poly",
    "RingSpec",
    "RunConfig",
    "SUITES",
    "TextCache",
    "XiAlg",
    "XiEvaluator",
    "XiPoly",
    "det_xi",
    "dickson_full",
    "dickson_tilde_table",
    "divide_xi",
    "embed_table",
    "evaluator_for",
    "express_in_xi",
    "field_for_order",
    "generators",
    "group_order_bfs",
    "natural_monomials",
    "natural_u",
    "run",
    "sigma",
    "steenrod_full",
    "steenrod_k",
    "steenrod_xi",
    "u_tilde",
    "variety_point_check",
    "verify_lemma_suite",
    "verify_relations",
    "xi",
    "xi_gens",
    "xibar_poly",
    "__version__",
]
