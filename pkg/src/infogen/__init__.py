"""infogen: an infographic generation engine.

Ranks flow layouts against canvas/pivot/sketch constraints, retrieves
visual-group designs via a TF-IDF index over layout clusters, places
connections per style, and renders complete SVG infographics from
markdown content. See README.md for the CLI and HTTP service.
"""

from infogen.compose import (
    ConnectionPlacement,
    ConnectionStyle,
    CVifIndex,
    DesignScore,
    InfographicDesign,
    Placement,
    StyleRanking,
    compose_design,
    generate_connections,
    place_vgs,
    rank_connection_styles,
)
from infogen.content import (
    ContentItem,
    ContentSpec,
    parse_markdown,
    slot_signature,
    to_markdown,
)
from infogen.dataset import (
    ConnectionShape,
    DatasetManifest,
    Palette,
    load_manifest,
    sample_dataset_path,
    save_manifest,
    validate_vg_template,
)
from infogen.errors import (
    ComposeError,
    ContentError,
    DatasetError,
    EngineError,
    LayoutError,
    VgIndexError,
)
from infogen.geometry import (
    BBox,
    Point,
    Polyline,
    convex_hull,
    dominant_points,
    point_in_bbox,
    polygon_area,
)
from infogen.layout import (
    Canvas,
    LayoutScore,
    PivotGraphic,
    VifLayout,
    match_sketch,
    rank_layouts,
    score_layout,
)
from infogen.pipeline import EngineOptions, Overrides, build_indices, cluster_of, recommend
from infogen.svgout import embed_content, render_svg
from infogen.vgindex import (
    ClusterModel,
    VgTemplate,
    VgVifIndex,
    assign_cluster,
    build_vg_vif_index,
    cluster_vifs,
    rank_vgs,
    tfidf_score,
)

__version__ = "0.1.0"
