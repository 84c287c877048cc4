"""Pseudo-group channel codes over dihedral groups.

Exact D6 arithmetic, the random generator-pair code ensemble, achievable-rate
formulas against Abelian Z6 group codes, exact collision-counting oracles, a
constrained entropy-maximization verifier, and a Monte Carlo channel
simulator.
"""

from .channels import (
    Channel,
    ChannelFormatError,
    Labeling,
    builtin_channel,
    default_labeling,
    group_noise_channel,
    load_channel,
    relabel,
    save_channel,
    transmit,
)
from .counting import (
    BoundParams,
    DifferenceType,
    abc_functions,
    brute_force_collision_prob,
    count_message_types,
    pairwise_collision_prob,
    per_coordinate_prob,
    thresholds,
)
from .ensemble import (
    ConstructionSpec,
    GeneratorPair,
    GeneratorTable,
    MessageWord,
    PseudoGroupCode,
    admissible_pairs,
    beta_profile,
    encode,
    encode_windowed,
    enumerate_codebook,
    sample_code,
    sample_generator_pair,
)
from .group import (
    D6,
    IDENTITY,
    DihedralElement,
    DihedralGroup,
    PartitionLabel,
    coset_label,
)
from .maxent import (
    closed_form_entropy,
    entropy_inequality_check,
    intersection_bound,
    numeric_entropy_max,
    optimal_joint_pmf,
    typical_intersection_count,
)
from .rates import (
    RateBreakdown,
    TypicalityParams,
    abelian_rate,
    best_labeling,
    conditional_entropy,
    count_occurrences,
    is_jointly_typical,
    pseudo_group_rate,
    rate_breakdown,
    symmetric_capacity,
)
from .simulate import TrialReport, estimate_error, ml_decode, typicality_decode

__all__ = [
    "Channel",
    "ChannelFormatError",
    "Labeling",
    "builtin_channel",
    "default_labeling",
    "group_noise_channel",
    "load_channel",
    "relabel",
    "save_channel",
    "transmit",
    "BoundParams",
    "DifferenceType",
    "abc_functions",
    "brute_force_collision_prob",
    "count_message_types",
    "pairwise_collision_prob",
    "per_coordinate_prob",
    "thresholds",
    "ConstructionSpec",
    "GeneratorPair",
    "GeneratorTable",
    "MessageWord",
    "PseudoGroupCode",
    "admissible_pairs",
    "beta_profile",
    "encode",
    "encode_windowed",
    "enumerate_codebook",
    "sample_code",
    "sample_generator_pair",
    "D6",
    "IDENTITY",
    "DihedralElement",
    "DihedralGroup",
    "PartitionLabel",
    "coset_label",
    "closed_form_entropy",
    "entropy_inequality_check",
    "intersection_bound",
    "numeric_entropy_max",
    "optimal_joint_pmf",
    "typical_intersection_count",
    "RateBreakdown",
    "TypicalityParams",
    "abelian_rate",
    "best_labeling",
    "conditional_entropy",
    "count_occurrences",
    "is_jointly_typical",
    "pseudo_group_rate",
    "rate_breakdown",
    "symmetric_capacity",
    "TrialReport",
    "estimate_error",
    "ml_decode",
    "typicality_decode",
]

__version__ = "0.1.0"
