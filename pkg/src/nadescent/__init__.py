"""Effective nonabelian descent toolkit.

A pipeline of exact-integer and capped-precision p-adic computations:
graded Lie-algebra dimension tables, Selmer/de-Rham bound tables with their
halting level, iterated-integral observables, Newton-polygon zero isolation
with a separation modulus, local annihilators with prime-set enlargement,
and a two-sided search driver that runs until its two enumerations agree.
"""

from .arith import (
    DEFAULT_FACTOR_BUDGET,
    divisors,
    factorize,
    is_prime,
    mobius,
    prime_factors,
    v_p,
)
from .descent_arith import (
    JacobianLocalData,
    WeilBoundWarning,
    annihilator_N,
    count_from_frobenius_poly,
    enlarged_prime_set,
    jacobian_order_mod,
)
from .errors import (
    AllZeroPolygonError,
    ContainmentViolatedError,
    DomainError,
    FactorizationTimeoutError,
    HullPrecisionError,
    InvariantError,
    IrregularFormError,
    IsolationError,
    MonotonicityError,
    MultipleRootSuspectedError,
    NadescentError,
    ParityError,
    PrecisionError,
    PrecisionExhaustedError,
    PrimeMismatchError,
)
from .iterated_words import (
    FormSystem,
    Observable,
    evaluate_observable,
    iterated_integral,
    observable_product,
    shuffle,
)
from .lie_dims import (
    DEFAULT_LEVEL_CAP,
    GradedDims,
    cumulative_dim,
    graded_dims,
    lucas_sequence,
)
from .padic_series import (
    DEFAULT_PRECISION,
    Chart,
    DiskSeries,
    IsolationFailure,
    NewtonPolygon,
    PadicNumber,
    PadicSeries,
    SeparationReport,
    SeparationStatus,
    ZeroDisk,
    isolate_zeros,
    newton_polygon,
    root_count_positive_valuation,
    separation_modulus,
)
from .selmer_bounds import (
    BoundRow,
    BoundTable,
    CurveParams,
    ParityMode,
    Place,
    bound_table,
    derham_lb_table,
    h1_step_bound,
    halting_level,
    local_h2_bound,
    middle_hodge_component_bound,
    minus_dim_bound,
    selmer_ub_table,
)
from .two_sided_search import (
    DescentOutcome,
    LevelEnumerator,
    TableEnumerator,
    run_descent,
)

__version__ = "0.1.0"

__all__ = [
    "AllZeroPolygonError",
    "BoundRow",
    "BoundTable",
    "Chart",
    "ContainmentViolatedError",
    "CurveParams",
    "DEFAULT_FACTOR_BUDGET",
    "DEFAULT_LEVEL_CAP",
    "DEFAULT_PRECISION",
    "DescentOutcome",
    "DiskSeries",
    "DomainError",
    "FactorizationTimeoutError",
    "FormSystem",
    "GradedDims",
    "HullPrecisionError",
    "InvariantError",
    "IrregularFormError",
    "IsolationError",
    "IsolationFailure",
    "JacobianLocalData",
    "LevelEnumerator",
    "MonotonicityError",
    "MultipleRootSuspectedError",
    "NadescentError",
    "NewtonPolygon",
    "Observable",
    "PadicNumber",
    "PadicSeries",
    "ParityError",
    "ParityMode",
    "Place",
    "PrecisionError",
    "PrecisionExhaustedError",
    "PrimeMismatchError",
    "SeparationReport",
    "SeparationStatus",
    "TableEnumerator",
    "WeilBoundWarning",
    "ZeroDisk",
    "annihilator_N",
    "bound_table",
    "count_from_frobenius_poly",
    "cumulative_dim",
    "derham_lb_table",
    "divisors",
    "enlarged_prime_set",
    "evaluate_observable",
    "factorize",
    "graded_dims",
    "h1_step_bound",
    "halting_level",
    "is_prime",
    "isolate_zeros",
    "iterated_integral",
    "jacobian_order_mod",
    "local_h2_bound",
    "lucas_sequence",
    "middle_hodge_component_bound",
    "minus_dim_bound",
    "mobius",
    "newton_polygon",
    "observable_product",
    "prime_factors",
    "root_count_positive_valuation",
    "run_descent",
    "selmer_ub_table",
    "separation_modulus",
    "shuffle",
    "v_p",
]
