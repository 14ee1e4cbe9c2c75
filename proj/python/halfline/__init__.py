"""Lattice random walks: traces, fluctuation laws, half-plane factorization and reconstruction."""

from ._halfline import (
    DomainError,
    Error,
    Factorization,
    InsufficientData,
    InvalidInput,
    LadderTable,
    Measure,
    NearSingularity,
    NumericError,
    VerificationFailure,
    WHPoint,
    binomial_check,
    blaschke_eval,
    characteristic_function,
    convolve,
    counterexample_char,
    counterexample_ratio_check,
    degenerate_witness,
    evaluate_rational_exp,
    extension_phi,
    factorize,
    generate_measure,
    is_nondegenerate,
    ladder_joint_dist,
    mixed_trace,
    nonpositive_part_zeros,
    outer_modulus,
    positive_part_dist,
    power,
    reconstruct,
    restrict_nonpos,
    restrict_pos,
    restriction_identity_check,
    running_max_dist,
    singular_modulus,
    traces,
    traces_required,
    verify_lemma,
    wh_factor_from_ladder,
    wh_factor_from_traces,
)

__version__ = "0.1.0"
