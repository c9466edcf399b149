"""Chow rings, spinor bundles, cohomology tables and minimal-monad classification on smooth quadrics."""
from .bundles import (
    Atom,
    BundleError,
    BundleExpr,
    ChernUnavailable,
    ParseError,
    dual,
    line,
    parse_bundle_expr,
    rank,
    restrict,
    spinor,
    sym2,
    total_chern,
    twist,
    wedge2,
)
from .chow import ChowClass, ChowError, QuadricSpace, degree, divide, format_class, parse_class
from .classify import (
    ClassificationResult,
    SearchConfig,
    classify,
    classify_rank2,
    classify_rank3,
    counterexample_rank4,
    enumerate_candidates,
    expected_results,
)
from .cohomology import (
    CohomologyTable,
    GradedModule,
    LESInconsistency,
    betti0,
    betti0j,
    les_propagate,
    serre_dual,
)
from .monads import (
    CheckReport,
    MonadCandidate,
    check_injectivity_feasible,
    check_minimality,
    check_surjectivity_feasible,
    check_theorem_conditions,
    dualize,
    extend_with_line_bundle,
    kernel_top_chern_test,
    restrict_monad,
    run_all_checks,
)

__version__ = "0.1.0"

__all__ = [
    "ChowClass",
    "ChowError",
    "QuadricSpace",
    "degree",
    "divide",
    "format_class",
    "parse_class",
    "Atom",
    "BundleError",
    "BundleExpr",
    "ChernUnavailable",
    "ParseError",
    "dual",
    "line",
    "parse_bundle_expr",
    "rank",
    "restrict",
    "spinor",
    "sym2",
    "total_chern",
    "twist",
    "wedge2",
    "ClassificationResult",
    "SearchConfig",
    "classify",
    "classify_rank2",
    "classify_rank3",
    "counterexample_rank4",
    "enumerate_candidates",
    "expected_results",
    "CohomologyTable",
    "GradedModule",
    "LESInconsistency",
    "betti0",
    "betti0j",
    "les_propagate",
    "serre_dual",
    "CheckReport",
    "MonadCandidate",
    "check_injectivity_feasible",
    "check_minimality",
    "check_surjectivity_feasible",
    "check_theorem_conditions",
    "dualize",
    "extend_with_line_bundle",
    "kernel_top_chern_test",
    "restrict_monad",
    "run_all_checks",
]
