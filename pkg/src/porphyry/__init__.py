"""First-order definition systems over finite models.

The package provides a small first-order AST (`syntax`), finite-model
evaluation and bounded entailment (`semantics`), ordered definition
systems with validation and unfolding (`defsys`), a text format for all
of it (`parser`), an exact decision procedure for the unary fragment
(`monadic`), classification of defining conditions against a
genus-species hierarchy (`predicabilia`), reconstruction of definitions
from set families (`extensional`), a worked example (`magma`), and a
command-line interface (`cli`).
"""

from .defsys import (
    ConstantCheck,
    ConstantDef,
    DefinitionSystem,
    DependencyGraph,
    PredicateDef,
    RedundancyWarning,
    ValidationReport,
    Violation,
    dependency_graph,
    expand_model,
    irreducibility_warnings,
    unfold,
    validate,
)
from .extensional import (
    ExtensionFamily,
    Laminar,
    NotLaminar,
    ReconstructedSystem,
    Undefinable,
    check_laminar,
    extensions,
    reconstruct,
)
from .magma import demo_dsl, demo_magma
from .monadic import (
    MonadicNormalForm,
    Sat,
    Unsat,
    decide_entails,
    decide_sat,
    is_monadic,
    monadic_normal_form,
    quantifier_depth,
)
from .parser import (
    ParseError,
    ParsedFile,
    parse,
    parse_formula,
    parse_formulas_infer,
    parse_path,
)
from .predicabilia import (
    Accident,
    Difference,
    PorphyryEdge,
    PorphyryTree,
    Property,
    ProximateGenusResult,
    TheorySet,
    Unrelated,
    classify_formula,
    generators,
    porphyry_tree,
    proximate_genus,
)
from .semantics import (
    DEFAULT_CEILING,
    Countermodel,
    FiniteModel,
    Holds,
    HoldsUpTo,
    ResourceCeilingError,
    bounded_entails,
    count_models,
    default_bound,
    enumerate_models,
    evaluate,
)
from .syntax import (
    And,
    Const,
    Eq,
    Exists,
    Falsum,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    Signature,
    Var,
    Verum,
    big_and,
    big_or,
    free_vars,
    nnf,
    node_count,
    render,
    rename_apart,
    subst,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Accident",
    "Const",
    "ConstantCheck",
    "ConstantDef",
    "Countermodel",
    "DEFAULT_CEILING",
    "DefinitionSystem",
    "DependencyGraph",
    "Difference",
    "Eq",
    "Exists",
    "ExtensionFamily",
    "Falsum",
    "FiniteModel",
    "Forall",
    "Holds",
    "HoldsUpTo",
    "Iff",
    "Implies",
    "Laminar",
    "MonadicNormalForm",
    "Not",
    "NotLaminar",
    "Or",
    "ParseError",
    "ParsedFile",
    "PorphyryEdge",
    "PorphyryTree",
    "Pred",
    "PredicateDef",
    "Property",
    "ProximateGenusResult",
    "ReconstructedSystem",
    "RedundancyWarning",
    "ResourceCeilingError",
    "Sat",
    "Signature",
    "TheorySet",
    "Undefinable",
    "Unrelated",
    "Unsat",
    "ValidationReport",
    "Var",
    "Verum",
    "Violation",
    "big_and",
    "big_or",
    "bounded_entails",
    "check_laminar",
    "classify_formula",
    "count_models",
    "decide_entails",
    "decide_sat",
    "default_bound",
    "demo_dsl",
    "demo_magma",
    "dependency_graph",
    "enumerate_models",
    "evaluate",
    "expand_model",
    "extensions",
    "free_vars",
    "generators",
    "irreducibility_warnings",
    "is_monadic",
    "monadic_normal_form",
    "nnf",
    "node_count",
    "parse",
    "parse_formula",
    "parse_formulas_infer",
    "parse_path",
    "porphyry_tree",
    "proximate_genus",
    "quantifier_depth",
    "reconstruct",
    "render",
    "rename_apart",
    "subst",
    "unfold",
    "validate",
]
