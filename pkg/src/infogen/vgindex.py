"""Visual-group retrieval (pipeline stage 2).

Layouts are grouped into 12 shape clusters; VG designs are ranked for a
cluster with TF-IDF over a small document index where each VG design is a
document and the cluster ids it appears with are its words. Length
normalization of tf makes rarely-reused designs rank above ubiquitous
ones.

Clustering is deterministic: each layout polyline is stroked onto a 32x32
grid, the flattened grids are PCA-projected, and k-medoids with
farthest-first seeding partitions the projections. Datasets may instead
ship pre-assigned cluster ids, in which case no model is needed.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from infogen import kernels
from infogen.errors import VgIndexError
from infogen.geometry import BBox, Point
from infogen.layout import VifLayout

N_CLUSTERS = 12
RASTER_SIZE = 32
PCA_MAX_DIM = 50


@dataclass(frozen=True)
class VgTemplate:
    """A reusable VG design: an SVG fragment with typed content slots."""

    id: str
    svg: str
    slots: dict  # slot kind -> placeholder BBox in template coordinates
    anchor: Point
    extent: BBox
    source: str = ""

    def __post_init__(self):
        if not self.slots:
            raise VgIndexError(f"template '{self.id}' declares no slots")


@dataclass
class ClusterModel:
    k: int
    raster_size: int
    pca_components: int
    pca_mean: np.ndarray  # (features,)
    pca_basis: np.ndarray  # (pca_components, features)
    centers: np.ndarray  # (k, pca_components) medoid feature vectors
    medoid_ids: list[str]
    assignments: dict[str, int] = field(default_factory=dict)


@dataclass
class VgVifIndex:
    postings: dict[str, Counter]  # vg id -> multiset of cluster ids
    df: dict[int, int]  # cluster id -> number of VGs containing it
    n_docs: int


def featurize(layout: VifLayout, raster_size: int = RASTER_SIZE) -> np.ndarray:
    """Flattened binary raster of the layout polyline."""
    pts = np.array([[p.x, p.y] for p in layout.points], dtype=np.float64)
    grid = np.zeros((raster_size, raster_size), dtype=np.uint8)
    kernels.rasterize(pts, grid)
    return grid.reshape(-1).astype(np.float64)


def _fit_pca(features: np.ndarray, max_dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Mean and principal-component basis of the feature rows.

    Components are sign-canonicalized (largest-magnitude entry positive) so
    repeated fits of the same data are identical.
    """
    mean = features.mean(axis=0)
    centered = features - mean
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    tol = max(centered.shape) * np.finfo(np.float64).eps * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > tol))
    dim = max(1, min(max_dim, rank))
    basis = vt[:dim].copy()
    for row in basis:
        pivot = np.argmax(np.abs(row))
        if row[pivot] < 0:
            row *= -1.0
    return mean, basis


def _farthest_first(dist: np.ndarray, k: int, first: int) -> list[int]:
    """Farthest-first traversal over a precomputed distance matrix."""
    chosen = [first]
    min_d = dist[first].copy()
    for _ in range(k - 1):
        nxt = int(np.argmax(min_d))  # ties: smallest index (argmax contract)
        chosen.append(nxt)
        np.minimum(min_d, dist[nxt], out=min_d)
    return chosen


def cluster_vifs(
    layouts: list[VifLayout], k: int = N_CLUSTERS, seed: int = 0
) -> ClusterModel:
    """Partition layouts into `k` shape clusters, deterministically."""
    if len(layouts) < k:
        raise VgIndexError(f"need at least {k} layouts to form {k} clusters, got {len(layouts)}")
    ids = [l.id for l in layouts]
    if len(set(ids)) != len(ids):
        raise VgIndexError("duplicate layout ids in clustering input")

    raw = np.stack([featurize(l) for l in layouts])
    mean, basis = _fit_pca(raw, PCA_MAX_DIM)
    proj = (raw - mean) @ basis.T

    diff = proj[:, None, :] - proj[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))

    rng = np.random.default_rng(seed)
    first = int(rng.integers(len(layouts)))
    medoids = _farthest_first(dist, k, first)

    # PAM-style alternation until assignments stabilize.
    assign = np.zeros(len(layouts), dtype=np.int64)
    for _ in range(100):
        assign = np.argmin(dist[:, medoids], axis=1)  # ties: smallest cluster id
        new_medoids = list(medoids)
        for c in range(k):
            members = np.nonzero(assign == c)[0]
            if members.size == 0:
                continue
            within = dist[np.ix_(members, members)].sum(axis=1)
            new_medoids[c] = int(members[int(np.argmin(within))])
        if new_medoids == medoids:
            break
        medoids = new_medoids

    model = ClusterModel(
        k=k,
        raster_size=RASTER_SIZE,
        pca_components=basis.shape[0],
        pca_mean=mean,
        pca_basis=basis,
        centers=proj[medoids].copy(),
        medoid_ids=[ids[m] for m in medoids],
        assignments={ids[i]: int(assign[i]) for i in range(len(layouts))},
    )
    return model


def assign_cluster(layout: VifLayout, model: ClusterModel) -> int:
    """Nearest medoid in feature space; ties break to the smaller cluster id."""
    feats = featurize(layout, model.raster_size)
    proj = (feats - model.pca_mean) @ model.pca_basis.T
    d = model.centers - proj
    dists = np.sqrt((d * d).sum(axis=1))
    return int(np.argmin(dists))


def build_vg_vif_index(associations: list[tuple[str, int]]) -> VgVifIndex:
    """Build the index from (vg id, cluster id) co-occurrence pairs.

    Each pair is one observed use of the design; duplicates accumulate as
    term counts.
    """
    if not associations:
        raise VgIndexError("no VG/cluster associations")
    postings: dict[str, Counter] = {}
    for vg_id, cluster_id in associations:
        if not 0 <= int(cluster_id) < N_CLUSTERS:
            raise VgIndexError(f"cluster id {cluster_id} outside [0, {N_CLUSTERS - 1}]")
        postings.setdefault(vg_id, Counter())[int(cluster_id)] += 1
    df: dict[int, int] = {}
    for terms in postings.values():
        for cluster_id in terms:
            df[cluster_id] = df.get(cluster_id, 0) + 1
    return VgVifIndex(postings=postings, df=df, n_docs=len(postings))


def tfidf_score(index: VgVifIndex, vg_id: str, cluster_id: int) -> float:
    """tf * idf of `cluster_id` within the VG's postings; 0 when absent."""
    if vg_id not in index.postings:
        raise VgIndexError(f"unknown VG id '{vg_id}'")
    terms = index.postings[vg_id]
    count = terms.get(int(cluster_id), 0)
    if count == 0:
        return 0.0
    tf = count / sum(terms.values())
    idf = math.log(index.n_docs / index.df[int(cluster_id)])
    return tf * idf


def rank_vgs(
    index: VgVifIndex,
    templates: list[VgTemplate],
    cluster_id: int,
    required_slots: frozenset[str] | set[str],
    top_k: int = 8,
) -> list[tuple[VgTemplate, float]]:
    """Rank slot-compatible templates for a cluster by descending TF-IDF.

    A template is compatible when its slots are a superset of
    `required_slots`: unused placeholders stay empty. Ties break by id.
    """
    required = frozenset(required_slots)
    compatible = [t for t in templates if required <= frozenset(t.slots)]
    if not compatible:
        raise VgIndexError("no VG design matches content shape", code="no_compatible_vg")
    scored = [(t, tfidf_score(index, t.id, cluster_id)) for t in compatible]
    scored.sort(key=lambda pair: (-pair[1], pair[0].id))
    return scored[:top_k]
