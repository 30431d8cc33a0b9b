"""Topological diagnostics for serverless call graphs.

Models a service as an oriented cellular complex (functions, calls,
saga faces), splits observed edge flows into gradient, curl, and
harmonic components via the combinatorial Hodge decomposition, and
reports the invariants (Betti numbers, spectra, harmonic stress and
localization) that separate locally correctable inefficiencies from
structural ones.
"""

from .cells import (
    CellComplex,
    Edge,
    Face,
    IncidenceMatrices,
    Node,
    build_complex,
    incidence,
    incidence_edge_face,
    incidence_node_edge,
    laplacian,
    load_complex,
)
from .diagnostics import (
    ComponentEnergies,
    DiagnosticReport,
    SpectralGaps,
    WindowTrend,
    classify,
    compare_windows,
    report,
)
from .errors import (
    ComplexValidationError,
    FormatError,
    HodgeFaasError,
    NumericalInconsistencyError,
)
from .flows import (
    ColdStartSpec,
    NodeMetricSeries,
    WorkloadSpec,
    coldstart_flow,
    covariance_flow,
    load_coldstart_spec,
    load_workload_spec,
    node_diff_flow,
    node_vector,
    poisson_flow,
    weighted_flow,
)
from .hodge import (
    EdgeFlow,
    EquivalenceResult,
    FaceCochain,
    HodgeDecomposition,
    NodePotential,
    decompose,
    dump_flow,
    flows_equivalent,
    harmonic_stress,
    load_flow,
    parse_flow,
    project,
)
from .linalg import RankTolerance, min_norm_lstsq, numerical_rank, sym_eigs
from .topology import (
    BettiNumbers,
    betti,
    connected_components,
    harmonic_basis,
    spectral_gap,
    spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "BettiNumbers",
    "CellComplex",
    "ColdStartSpec",
    "ComplexValidationError",
    "ComponentEnergies",
    "DiagnosticReport",
    "Edge",
    "EdgeFlow",
    "EquivalenceResult",
    "Face",
    "FaceCochain",
    "FormatError",
    "HodgeDecomposition",
    "HodgeFaasError",
    "IncidenceMatrices",
    "Node",
    "NodeMetricSeries",
    "NodePotential",
    "NumericalInconsistencyError",
    "RankTolerance",
    "SpectralGaps",
    "WindowTrend",
    "WorkloadSpec",
    "betti",
    "build_complex",
    "classify",
    "coldstart_flow",
    "compare_windows",
    "connected_components",
    "covariance_flow",
    "decompose",
    "dump_flow",
    "flows_equivalent",
    "harmonic_basis",
    "harmonic_stress",
    "incidence",
    "incidence_edge_face",
    "incidence_node_edge",
    "laplacian",
    "load_coldstart_spec",
    "load_complex",
    "load_flow",
    "load_workload_spec",
    "min_norm_lstsq",
    "node_diff_flow",
    "node_vector",
    "numerical_rank",
    "parse_flow",
    "poisson_flow",
    "project",
    "report",
    "spectral_gap",
    "spectrum",
    "sym_eigs",
    "weighted_flow",
]
