"""End-to-end recommendation: staged ranking over the dataset.

Stage 1 ranks layouts by the energy score (or filters by sketch distance
first, then orders the survivors by energy). Stage 2 ranks slot-compatible
VG designs by TF-IDF for the layout's cluster. Stage 3 ranks connection
styles from per-cluster usage counts. The Cartesian product of the stage
shortlists is scored by a stage-normalized product and the top designs are
composed. Fully deterministic for equal inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from infogen.compose import (
    CONNECTION_LENGTH_FACTOR,
    FLOW_SHAPE_INSET,
    STYLE_ORDER,
    VG_SIZE_FACTOR,
    ConnectionStyle,
    CVifIndex,
    InfographicDesign,
    compose_design,
    rank_connection_styles,
)
from infogen.content import ContentSpec, slot_signature
from infogen.dataset import DatasetManifest
from infogen.errors import ComposeError, LayoutError, VgIndexError
from infogen.geometry import Polyline
from infogen.layout import (
    Canvas,
    LayoutScore,
    PivotGraphic,
    VifLayout,
    match_sketch,
    rank_layouts,
    score_layout,
)
from infogen.vgindex import assign_cluster, rank_vgs


@dataclass(frozen=True)
class EngineOptions:
    alpha: float = 0.5
    beta: float = VG_SIZE_FACTOR
    gamma: float = CONNECTION_LENGTH_FACTOR
    delta: float = FLOW_SHAPE_INSET
    top_k_layouts: int = 8
    top_k_vgs: int = 8
    top_k_styles: int = 5
    n_results: int = 5
    relax_count: bool = False
    palette: Optional[str] = None  # palette name; default: first in manifest
    background: str = "#ffffff"
    connection_shape: Optional[str] = None  # shape id; default: first by id


@dataclass(frozen=True)
class Overrides:
    """Pinned stage choices; pinned stages are fixed while others vary."""

    layout_id: Optional[str] = None
    vg_id: Optional[str] = None
    connection_style: Optional[ConnectionStyle] = None


def build_indices(manifest: DatasetManifest, seed: int = 0) -> DatasetManifest:
    """Cluster the manifest's layouts and (re)build both retrieval indices.

    Returns a new manifest with cluster ids assigned to every layout, the
    VG index derived from the templates' `appears_in` provenance, and the
    connection-style index derived from per-layout style annotations.
    Deterministic for a given seed.
    """
    from infogen.vgindex import build_vg_vif_index, cluster_vifs

    model = cluster_vifs(manifest.layouts, seed=seed)
    layouts = [
        VifLayout(
            id=l.id,
            points=l.points,
            cluster_id=model.assignments[l.id],
            source=l.source,
        )
        for l in manifest.layouts
    ]
    cluster_by_id = model.assignments

    associations = []
    for template in manifest.vg_templates:
        for lid in manifest.vg_usage.get(template.id, ()):
            associations.append((template.id, cluster_by_id[lid]))
    if not associations:
        raise VgIndexError(
            "no VG usage records (appears_in) to index", code="no_associations"
        )
    vg_index = build_vg_vif_index(associations)

    counts: dict[int, dict[ConnectionStyle, int]] = {}
    for lid, style in manifest.layout_styles.items():
        cluster = cluster_by_id[lid]
        entry = counts.setdefault(cluster, {})
        entry[style] = entry.get(style, 0) + 1
    c_index = CVifIndex(counts=counts) if counts else None

    return DatasetManifest(
        version=manifest.version,
        layouts=layouts,
        vg_templates=manifest.vg_templates,
        connection_shapes=manifest.connection_shapes,
        palettes=manifest.palettes,
        vg_vif_index=vg_index,
        c_vif_index=c_index,
        cluster_model=model,
        vg_usage=manifest.vg_usage,
        layout_styles=manifest.layout_styles,
    )


def cluster_of(manifest: DatasetManifest, layout: VifLayout) -> int:
    """Resolve a layout's cluster from its record or the dataset model."""
    if layout.cluster_id is not None:
        return layout.cluster_id
    if manifest.cluster_model is not None:
        return assign_cluster(layout, manifest.cluster_model)
    raise VgIndexError(
        f"layout '{layout.id}' has no cluster id and the dataset has no cluster model",
        code="no_cluster",
    )


def _stage1(
    manifest: DatasetManifest,
    content: ContentSpec,
    canvas: Canvas,
    pivot: Optional[PivotGraphic],
    sketch: Optional[Polyline],
    options: EngineOptions,
    overrides: Overrides,
) -> list[tuple[VifLayout, LayoutScore]]:
    n = len(content.items)
    dataset = manifest.layouts
    if overrides.layout_id is not None:
        dataset = [manifest.layout(overrides.layout_id)]
    if sketch is not None:
        nearest = match_sketch(sketch, dataset, n, options.top_k_layouts)
        scored = [(l, score_layout(l, canvas, pivot, options.alpha)) for l, _ in nearest]
        scored.sort(key=lambda pair: (-pair[1].e_l, pair[0].id))
    else:
        scored = rank_layouts(
            dataset, n, canvas, pivot, options.alpha, options.top_k_layouts, options.relax_count
        )
    if pivot is not None:
        scored = [pair for pair in scored if pair[1].e_o == 1]
        if not scored:
            raise LayoutError(
                f"no layouts for {n} visual groups (all candidates overlap the pivot)",
                code="no_layouts",
            )
    return scored


def recommend(
    manifest: DatasetManifest,
    content: ContentSpec,
    canvas: Canvas,
    pivot: Optional[PivotGraphic] = None,
    sketch: Optional[Polyline] = None,
    options: Optional[EngineOptions] = None,
    overrides: Optional[Overrides] = None,
) -> list[InfographicDesign]:
    """Top-N complete designs for the given content and constraints."""
    options = options or EngineOptions()
    overrides = overrides or Overrides()

    layout_cands = _stage1(manifest, content, canvas, pivot, sketch, options, overrides)

    if manifest.vg_vif_index is None:
        raise VgIndexError(
            "dataset has no VG-VIF index (run build-index first)", code="no_index"
        )
    templates = manifest.vg_templates
    if overrides.vg_id is not None:
        templates = [manifest.vg_template(overrides.vg_id)]
    required = frozenset().union(*(slot_signature(item) for item in content.items))

    c_index = manifest.c_vif_index or CVifIndex()

    vg_cache: dict[int, list] = {}
    style_cache: dict[int, list] = {}

    def vgs_for(cluster: int):
        if cluster not in vg_cache:
            vg_cache[cluster] = rank_vgs(
                manifest.vg_vif_index, templates, cluster, required, options.top_k_vgs
            )
        return vg_cache[cluster]

    def styles_for(cluster: int):
        if cluster not in style_cache:
            ranking = rank_connection_styles(c_index, cluster)
            entries = list(ranking.entries[: options.top_k_styles])
            if overrides.connection_style is not None:
                if overrides.connection_style is ConnectionStyle.PIVOT and pivot is None:
                    raise ComposeError(
                        "pivot connection style requires a pivot graphic",
                        code="pivot_required",
                    )
                entries = [
                    e for e in ranking.entries if e[0] is overrides.connection_style
                ]
            elif pivot is None:
                entries = [e for e in entries if e[0] is not ConnectionStyle.PIVOT]
            style_cache[cluster] = entries
        return style_cache[cluster]

    triples = []
    for layout, lscore in layout_cands:
        cluster = cluster_of(manifest, layout)
        for template, tscore in vgs_for(cluster):
            for style, prob in styles_for(cluster):
                triples.append((layout, lscore, cluster, template, tscore, style, prob))
    if not triples:
        raise ComposeError("no composable design candidates", code="empty")

    max_e_l = max(t[1].e_l for t in triples)
    max_tfidf = max(t[4] for t in triples)

    palette = ()
    if options.palette is not None:
        palette = manifest.palette(options.palette).colors
    elif manifest.palettes:
        palette = manifest.palettes[0].colors

    shape_id = options.connection_shape
    if shape_id is None and manifest.connection_shapes:
        shape_id = min(s.id for s in manifest.connection_shapes)
    if shape_id is None:
        shape_id = ""

    designs = []
    for layout, lscore, cluster, template, tscore, style, prob in triples:
        if style is not ConnectionStyle.NONE and not shape_id:
            raise ComposeError(
                "dataset has no connection shapes", code="no_shapes"
            )
        design = compose_design(
            content,
            canvas,
            layout,
            lscore,
            template,
            tscore,
            style,
            prob,
            pivot=pivot,
            palette=palette,
            background=options.background,
            shape_id=shape_id,
            beta=options.beta,
            gamma=options.gamma,
            delta=options.delta,
            max_e_l=max_e_l,
            max_tfidf=max_tfidf,
        )
        designs.append(design)

    designs.sort(
        key=lambda d: (
            -d.score.composite,
            d.layout.id,
            d.placements[0].vg_template_id,
            STYLE_ORDER.index(d.connection_style),
        )
    )
    return designs[: options.n_results]
