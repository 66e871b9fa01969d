"""Numerical toolkit for quantum entropy-inequality chains.

Builds flagged (branch-recording) channels and their partial-isometry
dilations from any Kraus-represented CPT map, evaluates the associated
relative-entropy sandwich and conditional-entropy chains with signed slacks,
and searches unitary remixes of a Kraus representation for tighter bounds.
All entropies are in nats.
"""

from ._core import (
    ConsistencyError,
    DensityMatrix,
    DilationResult,
    KrausSet,
    KrausValidation,
    RemixEvaluation,
    RemixTrace,
    SeededGenerator,
    SlackReport,
    SlackTerm,
    SystemLayout,
    __version__,
    apply_channel,
    apply_ls_channel,
    build_dilation,
    check_fin_equivalence,
    check_ls9,
    check_ls_main,
    check_monotonicity_form,
    check_sandwich,
    check_ssa,
    conditional_entropy,
    conditional_via_relative,
    embed_on_subsystem,
    evaluate_objective,
    fixture_channel,
    fixture_state,
    kron,
    matrix_log_on_support,
    parametrize_unitary,
    partial_trace,
    random_density_matrix,
    random_kraus_set,
    random_unitary,
    relative_entropy,
    remix_kraus,
    support_projector,
    tighten,
    validate_kraus,
    von_neumann_entropy,
)

__all__ = [
    "ConsistencyError",
    "DensityMatrix",
    "DilationResult",
    "KrausSet",
    "KrausValidation",
    "RemixEvaluation",
    "RemixTrace",
    "SeededGenerator",
    "SlackReport",
    "SlackTerm",
    "SystemLayout",
    "__version__",
    "apply_channel",
    "apply_ls_channel",
    "build_dilation",
    "check_fin_equivalence",
    "check_ls9",
    "check_ls_main",
    "check_monotonicity_form",
    "check_sandwich",
    "check_ssa",
    "conditional_entropy",
    "conditional_via_relative",
    "embed_on_subsystem",
    "evaluate_objective",
    "fixture_channel",
    "fixture_state",
    "kron",
    "matrix_log_on_support",
    "parametrize_unitary",
    "partial_trace",
    "random_density_matrix",
    "random_kraus_set",
    "random_unitary",
    "relative_entropy",
    "remix_kraus",
    "support_projector",
    "tighten",
    "validate_kraus",
    "von_neumann_entropy",
]
