"""Correlation Bell inequalities: lifting constructions, exact facet
certificates, and numerical quantum violation analysis."""

from .documents import DocumentError, parse_expression, serialize_expression
from .expressions import (
    BellExpression,
    DeterministicStrategy,
    Scenario,
    SignedSettingMap,
    apply_signed_setting_map,
    evaluate,
    linear_combine,
    permute_parties,
)
from .lifting import (
    LiftDiagnostics,
    compatibility_condition_count,
    compatibility_holds,
    four_party_19,
    four_party_comparison,
    lift2,
    lift3,
    mabk,
    symmetry_images,
    wbz333,
)
from .polytope import (
    ENUMERATION_CAP,
    EnumerationCapExceeded,
    TightnessReport,
    distinct_vertices,
    enumerate_facets_brute,
    enumerate_strategies,
    lr_max,
    lr_max_with_witness,
    tightness,
)
from .quantum import (
    PAULIS,
    CorrelationTensor,
    MeasurementSettings,
    QuantumState,
    SeesawConfig,
    SeesawResult,
    Spectrum,
    bell_operator,
    contract_coefficients,
    correlation_tensor,
    expectation,
    mabk_critical_lambda,
    mabk_optimal_settings,
    make_state,
    seesaw_maximize,
    spectrum,
    sum_squared_correlations,
)
from .report import Report, ReportRow, format_table, reproduce_report

__version__ = "0.1.0"

__all__ = [
    "BellExpression",
    "CorrelationTensor",
    "DeterministicStrategy",
    "DocumentError",
    "ENUMERATION_CAP",
    "EnumerationCapExceeded",
    "LiftDiagnostics",
    "MeasurementSettings",
    "PAULIS",
    "QuantumState",
    "Report",
    "ReportRow",
    "Scenario",
    "SeesawConfig",
    "SeesawResult",
    "SignedSettingMap",
    "Spectrum",
    "TightnessReport",
    "apply_signed_setting_map",
    "bell_operator",
    "compatibility_condition_count",
    "compatibility_holds",
    "contract_coefficients",
    "correlation_tensor",
    "distinct_vertices",
    "enumerate_facets_brute",
    "enumerate_strategies",
    "evaluate",
    "expectation",
    "format_table",
    "four_party_19",
    "four_party_comparison",
    "lift2",
    "lift3",
    "linear_combine",
    "lr_max",
    "lr_max_with_witness",
    "mabk",
    "mabk_critical_lambda",
    "mabk_optimal_settings",
    "make_state",
    "parse_expression",
    "permute_parties",
    "reproduce_report",
    "seesaw_maximize",
    "serialize_expression",
    "spectrum",
    "sum_squared_correlations",
    "symmetry_images",
    "tightness",
    "wbz333",
]
