"""Round-robin allocation of indivisible goods under strategic agents.

Exact-rational tooling for the round-robin picking mechanism: valuation
oracles with class certification, bluff/truthful/greedy reporting
strategies, exact best responses and equilibrium factors, and envy-freeness
scoring, plus benchmark fixtures, random generators, and a CLI.
"""

from .equilibria import (
    BestResponse,
    BoundCheck,
    BoundRule,
    EquilibriumReport,
    NoApplicableBoundError,
    ProfileEvaluation,
    ScanRecord,
    applicable_bound_rule,
    best_response,
    evaluate_profile,
    pne_factor,
    profile_space_scan,
    verify_fairness_bound,
)
from .fairness import (
    UNBOUNDED,
    FairnessReport,
    ef1_factor,
    ef1_from_perspective,
    ef_factor,
)
from .instances import (
    FIXTURES,
    ConstraintError,
    GeneratorSpec,
    SchemaError,
    additive_tightness_instance,
    bluff_tightness_instance,
    build_fixture,
    generate,
    load,
    no_pne_instance,
    oxs_lower_bound_instance,
    save,
)
from .mechanism import (
    Allocation,
    PickStep,
    Profile,
    Ranking,
    Trace,
    pad_to_multiple,
    round_robin,
    strip_padding,
)
from .profiles import (
    BluffOrder,
    bluff_order,
    bluff_profile,
    deviation_renaming,
    greedy_response,
    truthful_profile,
    truthful_ranking,
)
from .valuations import (
    OXS,
    Additive,
    BudgetAdditive,
    Bundle,
    ClassCheck,
    GoodId,
    Instance,
    SizeGuardError,
    Table,
    UnitDemand,
    Valuation,
    is_additive,
    is_cancelable,
    is_monotone,
    is_subadditive,
    is_submodular,
    submodular_by_extension_bound,
)

__version__ = "0.1.0"

__all__ = [
    "Additive",
    "Allocation",
    "BestResponse",
    "BluffOrder",
    "BoundCheck",
    "BoundRule",
    "BudgetAdditive",
    "Bundle",
    "ClassCheck",
    "ConstraintError",
    "EquilibriumReport",
    "FairnessReport",
    "FIXTURES",
    "GeneratorSpec",
    "GoodId",
    "Instance",
    "NoApplicableBoundError",
    "OXS",
    "PickStep",
    "Profile",
    "ProfileEvaluation",
    "Ranking",
    "ScanRecord",
    "SchemaError",
    "SizeGuardError",
    "Table",
    "Trace",
    "UNBOUNDED",
    "UnitDemand",
    "Valuation",
    "additive_tightness_instance",
    "applicable_bound_rule",
    "best_response",
    "bluff_order",
    "bluff_profile",
    "bluff_tightness_instance",
    "build_fixture",
    "deviation_renaming",
    "ef1_factor",
    "ef1_from_perspective",
    "ef_factor",
    "evaluate_profile",
    "generate",
    "greedy_response",
    "is_additive",
    "is_cancelable",
    "is_monotone",
    "is_subadditive",
    "is_submodular",
    "load",
    "no_pne_instance",
    "oxs_lower_bound_instance",
    "pad_to_multiple",
    "pne_factor",
    "profile_space_scan",
    "round_robin",
    "save",
    "strip_padding",
    "submodular_by_extension_bound",
    "truthful_profile",
    "truthful_ranking",
    "verify_fairness_bound",
]
