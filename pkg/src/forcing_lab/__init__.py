"""Forcing sequences and exact saving exponents for finite nilpotent groups.

The package splits into a permutation-group engine (groups, classify,
catalog, groupspec), the forcing-sequence builder and its independent
brute-force verifier (forcing), the exact rational exponent calculus
(exponents), tamper-evident certificate files (certio), and a CLI (cli).
"""

from .catalog import (
    CatalogEntry,
    PRESETS,
    TWISTED_C4_SPEC,
    build_preset,
    catalog_entries,
    p_group_specs,
    two_group_specs,
)
from .certio import (
    CertificateDocument,
    DIGEST_ALG,
    FILE_EXTENSION,
    SCHEMA_VERSION,
    document_digest,
    emit,
    parse,
    read_document,
    write_document,
)
from .classify import (
    PGroupProfile,
    SylowDecomposition,
    count_involutions,
    count_order_p_subgroups,
    generator_rank,
    is_cyclic,
    is_elementary_abelian,
    is_generalized_quaternion,
    is_nilpotent,
    is_p_group,
    p_class,
    p_group_profile,
    prime_power_of,
    sylow_decomposition,
)
from .errors import (
    CyclicGroup,
    DegenerateDegree,
    DigestMismatch,
    EvenPrimeBase,
    ForcingLabError,
    GroupSpecError,
    InvalidPermutation,
    Malformed,
    MalformedCertificate,
    NotAPGroup,
    NotNilpotent,
    NotNormal,
    OrderCapExceeded,
    PNotDividing,
    PreconditionViolated,
    QuaternionGroup,
    RankOne,
    SchemaVersionUnknown,
    SylowHypothesisViolated,
    UnverifiedCertificate,
)
from .exponents import (
    AnalyticConstants,
    ClosedFormCheck,
    CrossoverReport,
    DEFAULT_CONSTANTS,
    DeltaReport,
    TraceRecord,
    base_delta_elementary_abelian,
    closed_form_lower_bound,
    compositum_delta,
    crossover_report,
    delta_cap,
    delta_for_nilpotent,
    delta_for_p_group,
    eta0,
    extend_delta,
    format_rational,
    parse_rational,
    replay_trace,
)
from .forcing import (
    BUILDER_VERSION,
    CheckResult,
    ForcingCertificate,
    ForcingStep,
    ForcingWitness,
    VerificationReport,
    build_forcing_sequence,
    central_step_witness,
    is_forcing,
    verify_certificate,
)
from .groups import (
    ConjugacyClass,
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    Permutation,
    QuotientMap,
    Subgroup,
    direct_product,
    from_generators,
    subgroup_as_group,
)
from .groupspec import parse_group_spec, spec_text

__version__ = "0.1.0"

__all__ = [
    "AnalyticConstants",
    "BUILDER_VERSION",
    "CatalogEntry",
    "CertificateDocument",
    "CheckResult",
    "ClosedFormCheck",
    "ConjugacyClass",
    "CrossoverReport",
    "CyclicGroup",
    "DEFAULT_CONSTANTS",
    "DEFAULT_ORDER_CAP",
    "DIGEST_ALG",
    "DegenerateDegree",
    "DeltaReport",
    "DigestMismatch",
    "EvenPrimeBase",
    "FILE_EXTENSION",
    "FiniteGroup",
    "ForcingCertificate",
    "ForcingLabError",
    "ForcingStep",
    "ForcingWitness",
    "GroupSpecError",
    "InvalidPermutation",
    "Malformed",
    "MalformedCertificate",
    "NotAPGroup",
    "NotNilpotent",
    "NotNormal",
    "OrderCapExceeded",
    "PGroupProfile",
    "PNotDividing",
    "PRESETS",
    "Permutation",
    "PreconditionViolated",
    "QuaternionGroup",
    "QuotientMap",
    "RankOne",
    "SCHEMA_VERSION",
    "SchemaVersionUnknown",
    "Subgroup",
    "SylowDecomposition",
    "SylowHypothesisViolated",
    "TWISTED_C4_SPEC",
    "TraceRecord",
    "UnverifiedCertificate",
    "VerificationReport",
    "base_delta_elementary_abelian",
    "build_forcing_sequence",
    "build_preset",
    "catalog_entries",
    "central_step_witness",
    "closed_form_lower_bound",
    "compositum_delta",
    "count_involutions",
    "count_order_p_subgroups",
    "crossover_report",
    "delta_cap",
    "delta_for_nilpotent",
    "delta_for_p_group",
    "direct_product",
    "document_digest",
    "emit",
    "eta0",
    "extend_delta",
    "format_rational",
    "from_generators",
    "generator_rank",
    "is_cyclic",
    "is_elementary_abelian",
    "is_forcing",
    "is_generalized_quaternion",
    "is_nilpotent",
    "is_p_group",
    "p_class",
    "p_group_profile",
    "p_group_specs",
    "parse",
    "parse_group_spec",
    "parse_rational",
    "prime_power_of",
    "read_document",
    "replay_trace",
    "spec_text",
    "subgroup_as_group",
    "sylow_decomposition",
    "two_group_specs",
    "verify_certificate",
    "write_document",
]
