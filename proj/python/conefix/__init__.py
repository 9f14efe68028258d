"""Fixed points of T-Kannan and T-Chatterjea contractions on cone metric spaces.

Thin wrapper over the C++ core. The main entry points:

    >>> import conefix
    >>> problem = conefix.load_problem("example_3_2")
    >>> result = conefix.solve(problem.to_problem(), tol=1e-9)
    >>> result.converged
    True
"""

from ._core import (  # noqa: F401
    AxiomReport,
    AxiomViolation,
    BaseDistance,
    Certificate,
    ConeKind,
    ConeMetricSpace,
    ConeSpec,
    ConefixError,
    ContractionKind,
    ContractionReport,
    ContractionViolation,
    EVector,
    FixedPointResult,
    InjectivityCollision,
    InjectivityReport,
    MapCapabilities,
    MapExpr,
    NormalityReport,
    OrderRelation,
    OrderReport,
    Problem,
    ProblemFile,
    apriori_bound,
    check_condition,
    compare,
    cone_contains,
    cone_interior_contains,
    distance,
    estimate_min_constant,
    eval_map,
    eval_weight,
    fixture_json,
    fixture_names,
    is_cauchy,
    iterations_needed,
    kannan_reduction_check,
    load_problem,
    parse_map,
    parse_problem_json,
    run_report,
    sequence_converges,
    solve,
    spot_check_injective,
    uniqueness_probe,
    verify_cone_axioms,
    verify_decay,
    verify_metric_axioms,
    verify_normality,
)

__all__ = [name for name in dir() if not name.startswith("_")]
