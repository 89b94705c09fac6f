"""Correlation-matrix PCA, complete-linkage clustering, and cluster profiling
for regional indicator tables, with a deterministic reporting pipeline."""

from .concordance import ContingencyTable, adjusted_rand_index, contingency, rand_index
from .config import PipelineConfig, load_pipeline_config, load_synthetic_spec
from .errors import NumericalError, PcaClusterError, ValidationError
from .hclust import (
    Dendrogram,
    DistanceMatrix,
    Merge,
    Partition,
    cluster_variables,
    complete_linkage,
    cut,
    euclidean_distances,
)
from .ingest import (
    IndicatorTable,
    ParseOptions,
    impute_means,
    load_table,
    standardize,
    write_table,
)
from .linalg import EigenDecomposition, SymmetricMatrix, correlation_matrix, jacobi_eigen
from .pca import (
    CumulativeThreshold,
    Fixed,
    Kaiser,
    LoadingMatrix,
    PcaModel,
    ScoreMatrix,
    coefficients,
    fit_pca,
    loadings,
    scores,
    select_components,
)
from .pipeline import RunArtifacts, run_pipeline
from .profiles import ProfileRow, format_profile_table, profile
from .synth import SyntheticSpec, generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "ContingencyTable",
    "CumulativeThreshold",
    "Dendrogram",
    "DistanceMatrix",
    "EigenDecomposition",
    "Fixed",
    "IndicatorTable",
    "Kaiser",
    "LoadingMatrix",
    "Merge",
    "NumericalError",
    "ParseOptions",
    "Partition",
    "PcaClusterError",
    "PcaModel",
    "PipelineConfig",
    "ProfileRow",
    "RunArtifacts",
    "ScoreMatrix",
    "SymmetricMatrix",
    "SyntheticSpec",
    "ValidationError",
    "adjusted_rand_index",
    "cluster_variables",
    "coefficients",
    "complete_linkage",
    "contingency",
    "correlation_matrix",
    "cut",
    "euclidean_distances",
    "fit_pca",
    "format_profile_table",
    "generate_synthetic",
    "impute_means",
    "jacobi_eigen",
    "load_pipeline_config",
    "load_synthetic_spec",
    "load_table",
    "loadings",
    "profile",
    "rand_index",
    "run_pipeline",
    "scores",
    "select_components",
    "standardize",
    "write_table",
]
