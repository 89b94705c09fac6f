"""Shared test fixtures and independent oracles.

REF_* constants are fixed reference figures for a 19-indicator regional
analysis, frozen here as regression fixtures: an eigenvalue spectrum
with its variance accounting, and a first-component coefficient column.

oracle_complete_linkage is the independent check for the clustering
implementation: it re-derives every inter-cluster distance from the
original pairwise distances at every step (no incremental updates),
with the same documented tie-break (lexicographically smallest merged
leaf set).
"""

from __future__ import annotations

import numpy as np

from pcacluster.hclust import DistanceMatrix
from pcacluster.ingest import IndicatorTable, standardize

REF_EIGENVALUES = [
    5.832579887, 3.232571219, 2.300940659, 1.644107304, 1.273934146,
    0.970767333, 0.896241187, 0.649316999, 0.502682237, 0.487771042,
    0.365864420, 0.234788679, 0.179103669, 0.129516751, 0.103789464,
    0.083736033, 0.076707881, 0.030332739, 0.005248349,
]

REF_VARIANCE_PERCENT = [
    30.69778888, 17.01353273, 12.11021399, 8.65319634, 6.70491656,
    5.10930176, 4.71705888, 3.41745789, 2.64569599, 2.56721601,
    1.92560221, 1.23572989, 0.94265089, 0.68166711, 0.54626034,
    0.44071596, 0.40372569, 0.15964599, 0.02762289,
]

REF_CUMULATIVE_PERCENT = [
    30.69779, 47.71132, 59.82154, 68.47473, 75.17965,
    80.28895, 85.00601, 88.42347, 91.06916, 93.63638,
    95.56198, 96.79771, 97.74036, 98.42203, 98.96829,
    99.40901, 99.81273, 99.97238, 100.00000,
]

REF_COEFFICIENTS_F1 = [
    0.336, 0.365, 0.239, 0.324, 0.167, 0.303, -0.253, 0.302, -0.108,
    0.235, 0.032, -0.057, -0.237, -0.147, 0.064, 0.304, -0.103,
    -0.212, -0.124,
]


def model_from_spectrum(values):
    """PcaModel over a given eigenvalue spectrum (identity eigenvectors)."""
    from pcacluster.linalg import EigenDecomposition
    from pcacluster.pca import PcaModel

    vals = np.asarray(values, dtype=float)
    p = vals.size
    variance = vals / p * 100.0
    return PcaModel(
        eigen=EigenDecomposition(vals, np.eye(p)),
        p=p,
        indicator_labels=tuple(f"V{i + 1}" for i in range(p)),
        variance_percent=variance,
        cumulative_percent=np.cumsum(variance),
    )


def make_table(values, standardized: bool = False, prefix: str = "R") -> IndicatorTable:
    grid = np.asarray(values, dtype=float)
    n, p = grid.shape
    return IndicatorTable(
        region_labels=tuple(f"{prefix}{i + 1}" for i in range(n)),
        indicator_labels=tuple(f"V{j + 1}" for j in range(p)),
        values=grid,
        standardized=standardized,
    )


def random_standardized_table(seed: int, n: int = 85, p: int = 19) -> IndicatorTable:
    rng = np.random.default_rng(seed)
    return standardize(make_table(rng.standard_normal((n, p))))


def oracle_complete_linkage(d: DistanceMatrix) -> list[tuple[frozenset, frozenset, float]]:
    """Brute-force agglomeration; returns (members_a, members_b, height) per step."""
    full = d.full()
    clusters: list[frozenset[int]] = [frozenset([i]) for i in range(d.n)]
    merges = []
    while len(clusters) > 1:
        best_key = None
        best_pair = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                height = max(
                    full[i, j] for i in clusters[a] for j in clusters[b]
                )
                key = (height, tuple(sorted(clusters[a] | clusters[b])))
                if best_key is None or key < best_key:
                    best_key = key
                    best_pair = (a, b)
        a, b = best_pair
        merges.append((clusters[a], clusters[b], best_key[0]))
        merged = clusters[a] | clusters[b]
        clusters = [c for idx, c in enumerate(clusters) if idx not in (a, b)]
        clusters.append(merged)
    return merges


def dendrogram_as_member_merges(dend) -> list[tuple[frozenset, frozenset, float]]:
    """Convert merge records to (members, members, height) for oracle comparison."""
    members: list[frozenset[int]] = []

    def resolve(node: int) -> frozenset[int]:
        return frozenset([-node - 1]) if node < 0 else members[node - 1]

    out = []
    for merge in dend.merges:
        left = resolve(merge.left)
        right = resolve(merge.right)
        members.append(left | right)
        out.append((left, right, merge.height))
    return out


def same_merge_sequence(actual, expected) -> bool:
    """Step-by-step equality, unordered within each pair, exact heights."""
    if len(actual) != len(expected):
        return False
    for (a1, a2, ah), (e1, e2, eh) in zip(actual, expected):
        if ah != eh or {a1, a2} != {e1, e2}:
            return False
    return True
