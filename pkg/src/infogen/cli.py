"""Command-line entry points.

Exit codes: 0 success, 1 I/O failure, 2 validation/engine error (stderr
carries a stage-tagged message). `--json` switches stdout to structured
output. All randomness is controlled by `--seed` (default 0).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from infogen.content import parse_markdown
from infogen.dataset import load_manifest, save_manifest
from infogen.errors import DatasetError, EngineError
from infogen.geometry import BBox, Point
from infogen.layout import Canvas, PivotGraphic, rank_layouts, sketch_from_points
from infogen.pipeline import EngineOptions, build_indices, recommend
from infogen.svgout import render_svg

DATASET_ENVVAR = "INFOGEN_DATASET"


def _fail_engine(exc: EngineError) -> None:
    click.echo(f"{exc.stage}: {exc}", err=True)
    if isinstance(exc, DatasetError):
        for diag in exc.diagnostics:
            click.echo(f"  {diag}", err=True)
    sys.exit(2)


def _fail_io(exc: OSError) -> None:
    click.echo(f"io: {exc}", err=True)
    sys.exit(1)


def _parse_canvas(value: str) -> Canvas:
    try:
        w, h = value.lower().split("x")
        return Canvas(float(w), float(h))
    except (ValueError, EngineError):
        raise click.BadParameter(f"expected WxH, got '{value}'")


def _parse_pivot(value: str | None) -> PivotGraphic | None:
    if value is None:
        return None
    try:
        x, y, w, h = (float(v) for v in value.split(","))
        return PivotGraphic(bbox=BBox(x, y, w, h))
    except (ValueError, EngineError):
        raise click.BadParameter(f"expected x,y,w,h, got '{value}'")


def _load_sketch(path: str | None) -> Polyline | None:
    if path is None:
        return None
    pairs = json.loads(Path(path).read_text(encoding="utf-8"))
    return sketch_from_points(pairs)


@click.group()
def main() -> None:
    """Infographic generation engine."""


@main.command()
@click.option("--content", "content_path", required=True, type=click.Path(exists=True))
@click.option("--dataset", envvar=DATASET_ENVVAR, required=True, type=click.Path(exists=True))
@click.option("--canvas", "canvas_spec", default="800x600", show_default=True)
@click.option("--pivot", "pivot_spec", default=None, help="Pivot bbox as x,y,w,h in canvas units.")
@click.option("--sketch", "sketch_path", default=None, type=click.Path(exists=True), help="JSON [[x,y],...] stroke.")
@click.option("--alpha", default=0.5, show_default=True)
@click.option("--n", "n_results", default=5, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--json", "json_out", is_flag=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def generate(content_path, dataset, canvas_spec, pivot_spec, sketch_path, alpha, n_results, seed, json_out, out_dir):
    """Generate ranked infographic SVGs plus a score report."""
    canvas = _parse_canvas(canvas_spec)
    pivot = _parse_pivot(pivot_spec)
    try:
        manifest = load_manifest(dataset)
        content = parse_markdown(Path(content_path).read_text(encoding="utf-8"))
        sketch = _load_sketch(sketch_path)
        options = EngineOptions(alpha=alpha, n_results=n_results)
        designs = recommend(manifest, content, canvas, pivot, sketch, options)
    except EngineError as exc:
        _fail_engine(exc)
    except OSError as exc:
        _fail_io(exc)

    try:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        report = []
        for i, design in enumerate(designs, start=1):
            name = f"design_{i:03d}.svg"
            (out / name).write_text(render_svg(design, manifest), encoding="utf-8")
            s = design.score
            report.append(
                {
                    "file": name,
                    "layout_id": design.layout.id,
                    "vg_id": design.placements[0].vg_template_id,
                    "connection_style": design.connection_style.value,
                    "scores": {
                        "e_o": s.e_o,
                        "e_c": s.e_c,
                        "e_u_raw": s.e_u_raw,
                        "u": s.u,
                        "e_l": s.e_l,
                        "tfidf": s.tfidf,
                        "p_style": s.p_style,
                        "composite": s.composite,
                    },
                }
            )
        (out / "report.json").write_text(
            json.dumps({"designs": report}, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    except OSError as exc:
        _fail_io(exc)
    if json_out:
        click.echo(json.dumps({"designs": report}, sort_keys=True))
    else:
        click.echo(f"wrote {len(report)} designs to {out_dir}")


@main.command("build-index")
@click.option("--dataset", envvar=DATASET_ENVVAR, required=True, type=click.Path(exists=True))
@click.option("--seed", default=0, show_default=True)
def build_index(dataset, seed):
    """Cluster layouts and rebuild the VG and connection-style indices."""
    try:
        manifest = load_manifest(dataset)
        updated = build_indices(manifest, seed=seed)
        save_manifest(updated, dataset)
    except EngineError as exc:
        _fail_engine(exc)
    except OSError as exc:
        _fail_io(exc)
    click.echo(f"indexed {len(updated.layouts)} layouts, {len(updated.vg_templates)} VG designs")


@main.command("rank-layouts")
@click.option("--dataset", envvar=DATASET_ENVVAR, required=True, type=click.Path(exists=True))
@click.option("--n-vgs", required=True, type=int)
@click.option("--canvas", "canvas_spec", default="800x600", show_default=True)
@click.option("--pivot", "pivot_spec", default=None)
@click.option("--alpha", default=0.5, show_default=True)
@click.option("--top-k", default=0, show_default=True, help="0 means all.")
@click.option("--json", "json_out", is_flag=True)
def rank_layouts_cmd(dataset, n_vgs, canvas_spec, pivot_spec, alpha, top_k, json_out):
    """Score and rank layouts; print the energy breakdown per layout."""
    canvas = _parse_canvas(canvas_spec)
    pivot = _parse_pivot(pivot_spec)
    try:
        manifest = load_manifest(dataset)
        limit = top_k if top_k > 0 else len(manifest.layouts)
        ranked = rank_layouts(manifest.layouts, n_vgs, canvas, pivot, alpha, limit)
    except EngineError as exc:
        _fail_engine(exc)
    rows = [
        {"id": l.id, "e_o": s.e_o, "e_c": s.e_c, "u": s.u, "e_l": s.e_l}
        for l, s in ranked
    ]
    if json_out:
        click.echo(json.dumps({"layouts": rows}, sort_keys=True))
        return
    click.echo(f"{'id':<20} {'e_o':>4} {'e_c':>10} {'u':>10} {'e_l':>10}")
    for r in rows:
        click.echo(
            f"{r['id']:<20} {r['e_o']:>4d} {r['e_c']:>10.6f} {r['u']:>10.6f} {r['e_l']:>10.6f}"
        )


@main.command()
@click.option("--dataset", envvar=DATASET_ENVVAR, required=True, type=click.Path(exists=True))
def validate(dataset):
    """Validate a dataset; list every violation found."""
    try:
        manifest = load_manifest(dataset)
    except DatasetError as exc:
        click.echo(f"dataset: {exc}", err=True)
        for diag in exc.diagnostics:
            click.echo(f"  {diag}", err=True)
        sys.exit(2)
    click.echo(
        f"ok: {len(manifest.layouts)} layouts, {len(manifest.vg_templates)} VG designs, "
        f"{len(manifest.connection_shapes)} connection shapes, {len(manifest.palettes)} palettes"
    )


@main.command()
@click.option("--dataset", envvar=DATASET_ENVVAR, required=True, type=click.Path(exists=True))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8008, show_default=True)
@click.option("--ui", "ui_dir", default=None, type=click.Path(exists=True), help="Serve a static UI at /studio.")
def serve(dataset, host, port, ui_dir):
    """Run the HTTP service over a dataset."""
    import uvicorn

    from infogen.service import create_app

    try:
        app = create_app(dataset, ui_dir=ui_dir)
    except EngineError as exc:
        _fail_engine(exc)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
