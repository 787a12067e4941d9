"""lisakit: Local Moran's I analysis with permutation inference and linked-plot payloads."""

from ._kernels import HAS_NUMBA, backend_name
from .bundle import (
    AnalysisBundle,
    Workspace,
    compute_bundle,
    read_bundle,
    write_bundle,
)
from .density import DensityCurve, kde, silverman_bandwidth
from .errors import (
    BadAlpha,
    BadBandwidth,
    CoincidentPoints,
    DegenerateGeometry,
    EmptyDistribution,
    IdMismatch,
    IsolatedRegion,
    LengthMismatch,
    LisaError,
    MalformedDocument,
    MissingId,
    NegativeWeight,
    TooFewValues,
    UnknownId,
    UnsupportedGeometry,
    ZeroVariance,
)
from .geo import (
    ContiguityRule,
    RegionGeometry,
    bearing,
    build_contiguity,
    centroid,
    parse_regions,
)
from .payloads import (
    ClusterMapPayload,
    DualDensityPayload,
    LABEL_COLORS,
    NetworkScatterPayload,
    RadialPayload,
    build_cluster_map,
    build_dual_density,
    build_network_scatter,
    build_radial,
    same_label_component,
)
from .stats import (
    LABELS,
    AttributeSeries,
    LocalMoranResult,
    PermutationSummary,
    SpatialWeights,
    analyze,
    assign_label,
    conditional_permutation,
    global_moran,
    local_moran,
    pseudo_p,
    row_normalize,
    significance_thresholds,
    spatial_lag,
    zscore_normalize,
)

__version__ = "0.1.0"
