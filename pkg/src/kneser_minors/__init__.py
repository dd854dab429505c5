"""Complete-minor and proper-coloring certificates for complements of Kneser
graphs, built constructively and verified independently."""

from .baranyai import (
    AlmostRegularPartition,
    CoveredPartition,
    DEFAULT_EDGE_CAP,
    PartitionPlan,
    almost_regular_partition,
    exhaustive_partition_feasible,
    partition_A,
    partition_C,
    uniform_sizes,
)
from .chromatic import ColoringCertificate, alpha_oracle, build_coloring, chi, chi_of
from .core import (
    MAX_LABELS,
    Params,
    binomial,
    covered_labels,
    enumerate_family,
    family_A,
    family_C,
    hockey_stick,
    intersects,
    kset_labels,
    kset_mask,
    kset_text,
    params_grid,
    union_mask,
)
from .errors import (
    ConstructionError,
    KneserMinorError,
    OutOfScopeError,
    ParameterError,
    ResourceCapError,
)
from .minors import (
    CaseTag,
    K3Params,
    K3TableRow,
    K3_TABLE_REFERENCE,
    MinorCertificate,
    S4BoundReport,
    S4Params,
    TraceEntry,
    bound_check_s4,
    build_14_3,
    build_minor,
    build_s2_case1,
    build_s2_case2,
    build_s3,
    build_s4_k3,
    build_s4_kge4,
    closed_form_lower_bound,
    k3_table_rows,
    replay_trace,
    route_case,
)
from .verify import CheckResult, VerificationReport, verify_coloring, verify_minor, verify_partition

__version__ = "0.1.0"

__all__ = [
    "AlmostRegularPartition",
    "CaseTag",
    "CheckResult",
    "ColoringCertificate",
    "ConstructionError",
    "CoveredPartition",
    "DEFAULT_EDGE_CAP",
    "K3Params",
    "K3TableRow",
    "K3_TABLE_REFERENCE",
    "KneserMinorError",
    "MAX_LABELS",
    "MinorCertificate",
    "OutOfScopeError",
    "ParameterError",
    "Params",
    "PartitionPlan",
    "ResourceCapError",
    "S4BoundReport",
    "S4Params",
    "TraceEntry",
    "VerificationReport",
    "almost_regular_partition",
    "alpha_oracle",
    "binomial",
    "bound_check_s4",
    "build_14_3",
    "build_coloring",
    "build_minor",
    "build_s2_case1",
    "build_s2_case2",
    "build_s3",
    "build_s4_k3",
    "build_s4_kge4",
    "chi",
    "chi_of",
    "closed_form_lower_bound",
    "covered_labels",
    "enumerate_family",
    "exhaustive_partition_feasible",
    "family_A",
    "family_C",
    "hockey_stick",
    "intersects",
    "k3_table_rows",
    "kset_labels",
    "kset_mask",
    "kset_text",
    "params_grid",
    "partition_A",
    "partition_C",
    "replay_trace",
    "route_case",
    "uniform_sizes",
    "union_mask",
    "verify_coloring",
    "verify_minor",
    "verify_partition",
]
