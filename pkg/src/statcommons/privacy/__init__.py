from .anonymize import (
    GeneralizationHierarchy,
    PlanStep,
    anonymize_k,
    generalize,
    suppress,
    swap,
)
from .classify import classify_attributes, default_lexicon, load_lexicon
from .mechanisms import (
    DpParams,
    debiased_proportion,
    laplace_noise,
    laplace_release,
    randomized_response,
    randomized_response_bits,
    report_probability,
)
from .microdata import Attribute, MicrodataTable, Role
from .risk import (
    Decision,
    RiskFigures,
    RiskReport,
    RiskThresholds,
    check_k_anonymity,
    check_l_diversity,
    check_t_closeness,
    gate,
    infer_risk,
    partition,
    reid_risk,
)

__all__ = [
    "Attribute",
    "Decision",
    "DpParams",
    "GeneralizationHierarchy",
    "MicrodataTable",
    "PlanStep",
    "RiskFigures",
    "RiskReport",
    "RiskThresholds",
    "Role",
    "anonymize_k",
    "check_k_anonymity",
    "check_l_diversity",
    "check_t_closeness",
    "classify_attributes",
    "debiased_proportion",
    "default_lexicon",
    "gate",
    "generalize",
    "infer_risk",
    "laplace_noise",
    "laplace_release",
    "load_lexicon",
    "partition",
    "randomized_response",
    "randomized_response_bits",
    "reid_risk",
    "report_probability",
    "suppress",
    "swap",
]
