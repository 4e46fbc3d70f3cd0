"""Fuzzy linguistic variables, if-then rules, and Mamdani inference.

The package turns heterogeneous measurements into words (linguistic terms
with membership functions), lets you write if-then rules over those words,
and evaluates the rules into crisp outputs.  Term sets can be written by
hand or elicited automatically from 1-D samples via subtractive clustering,
fuzzy c-means and a two-term Gaussian fit.
"""

from .elicit import (
    ClusterModel,
    ElicitConfig,
    ElicitResult,
    Gauss2Fit,
    TrainingSet,
    elicit_variable,
    fcm,
    fit_gauss2,
    subtractive_clusters,
)
from .errors import (
    DatasetError,
    DefinitionError,
    DomainError,
    ElicitationError,
    EvaluationError,
    LingmapError,
    NoRuleFiredError,
    RuleSyntaxError,
    RuleValidationError,
    SchemaError,
)
from .dataio import (
    SCHEMA_VERSION,
    Catalog,
    dumps_catalog,
    load_catalog,
    load_fis,
    load_training_csv,
    save_catalog,
    save_fis,
)
from .inference import FuzzyInferenceSystem, defuzzify_coa, evaluate, firing_strengths, infer
from .membership import CrispLabel, Gauss2, Trapezoid, eval_membership, gauss2_sum
from .rules import (
    Condition,
    Diagnostic,
    Rule,
    RuleBase,
    check_rules,
    format_rules,
    parse_rules,
    validate_rules,
)
from .variables import (
    CodeList,
    FuzzifiedValue,
    Interval,
    LinguisticVariable,
    coverage_gaps,
    fuzzify,
)

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "ClusterModel",
    "CodeList",
    "Condition",
    "CrispLabel",
    "DatasetError",
    "DefinitionError",
    "Diagnostic",
    "DomainError",
    "ElicitConfig",
    "ElicitResult",
    "ElicitationError",
    "EvaluationError",
    "FuzzifiedValue",
    "FuzzyInferenceSystem",
    "Gauss2",
    "Gauss2Fit",
    "Interval",
    "LingmapError",
    "LinguisticVariable",
    "NoRuleFiredError",
    "Rule",
    "RuleBase",
    "RuleSyntaxError",
    "RuleValidationError",
    "SCHEMA_VERSION",
    "SchemaError",
    "TrainingSet",
    "Trapezoid",
    "check_rules",
    "coverage_gaps",
    "defuzzify_coa",
    "dumps_catalog",
    "elicit_variable",
    "eval_membership",
    "evaluate",
    "fcm",
    "firing_strengths",
    "fit_gauss2",
    "format_rules",
    "fuzzify",
    "gauss2_sum",
    "infer",
    "load_catalog",
    "load_fis",
    "load_training_csv",
    "parse_rules",
    "save_catalog",
    "save_fis",
    "subtractive_clusters",
    "validate_rules",
    "__version__",
]
