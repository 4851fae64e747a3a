"""Tight quasitrees in 3-hypergraphs and Hamilton cycles in line graphs."""

from .core import (
    INFINITY,
    Hypergraph3,
    Multigraph,
    edge_connectivity_report,
)
from .errors import (
    DomainError,
    GenerationExhausted,
    InvariantViolation,
    QuasitreeError,
    RejectionError,
    SearchExhausted,
    SizeGuardError,
)
from .narrow_wide import (
    check_witness,
    finest_narrow,
    finest_wide,
    has_tight_complement,
    is_narrow,
    is_wide,
)
from .partitions import Partition, meet, meet_all
from .pipeline import (
    GraphAnalysis,
    TrailCertificate,
    analyze_graph,
    build_hypergraph,
    hamilton_cycle_in_line_graph,
    hamilton_path_in_line_graph,
    line_graph,
    spanning_eulerian,
)
from .quasigraph import QuasiClass, Quasigraph, classify
from .skeletal import find_tight_quasitree

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "DomainError",
    "GenerationExhausted",
    "GraphAnalysis",
    "Hypergraph3",
    "InvariantViolation",
    "Multigraph",
    "Partition",
    "QuasiClass",
    "Quasigraph",
    "QuasitreeError",
    "RejectionError",
    "SearchExhausted",
    "SizeGuardError",
    "TrailCertificate",
    "analyze_graph",
    "build_hypergraph",
    "check_witness",
    "classify",
    "edge_connectivity_report",
    "finest_narrow",
    "finest_wide",
    "find_tight_quasitree",
    "hamilton_cycle_in_line_graph",
    "hamilton_path_in_line_graph",
    "has_tight_complement",
    "is_narrow",
    "is_wide",
    "line_graph",
    "meet",
    "meet_all",
    "spanning_eulerian",
    "__version__",
]
