import json
import shutil
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest
from click.testing import CliRunner

from infogen.cli import main
from infogen.dataset import sample_dataset_path

CONTENT = (
    "# Demo\n"
    "- title: One\n  text: first step\n"
    "- title: Two\n  text: second step\n"
    "- title: Three\n  text: third step\n"
)


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def content_file(tmp_path):
    f = tmp_path / "content.md"
    f.write_text(CONTENT)
    return f


def test_generate_writes_svgs_and_report(runner, tmp_path, content_file):
    out = tmp_path / "out"
    result = runner.invoke(
        main,
        [
            "generate",
            "--content", str(content_file),
            "--dataset", str(sample_dataset_path()),
            "--canvas", "800x600",
            "--n", "5",
            "--out", str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    svgs = sorted(p.name for p in out.glob("design_*.svg"))
    assert svgs == [f"design_{i:03d}.svg" for i in range(1, 6)]
    for p in out.glob("design_*.svg"):
        ET.fromstring(p.read_text())
    report = json.loads((out / "report.json").read_text())
    assert len(report["designs"]) == 5
    assert all("scores" in d and "composite" in d["scores"] for d in report["designs"])


def test_generate_is_deterministic(runner, tmp_path, content_file):
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        result = runner.invoke(
            main,
            [
                "generate",
                "--content", str(content_file),
                "--dataset", str(sample_dataset_path()),
                "--out", str(out),
            ],
        )
        assert result.exit_code == 0, result.output
        outs.append(out)
    for rel in ["design_001.svg", "report.json"]:
        assert (outs[0] / rel).read_bytes() == (outs[1] / rel).read_bytes()


def test_generate_pivot_overlapping_everything_exits_2(runner, tmp_path, content_file):
    result = runner.invoke(
        main,
        [
            "generate",
            "--content", str(content_file),
            "--dataset", str(sample_dataset_path()),
            "--canvas", "800x600",
            "--pivot", "0,0,800,600",
            "--out", str(tmp_path / "out"),
        ],
    )
    assert result.exit_code == 2
    assert "no layouts" in result.output


def test_generate_malformed_markdown_exits_2(runner, tmp_path):
    bad = tmp_path / "bad.md"
    bad.write_text("- title: A\n  bogus: field\n")
    result = runner.invoke(
        main,
        [
            "generate",
            "--content", str(bad),
            "--dataset", str(sample_dataset_path()),
            "--out", str(tmp_path / "out"),
        ],
    )
    assert result.exit_code == 2
    assert "content:" in result.output
    assert "line 2" in result.output


def test_generate_with_sketch(runner, tmp_path, content_file):
    import numpy as np

    from infogen import kernels
    from infogen.dataset import load_manifest

    manifest = load_manifest(sample_dataset_path())
    layout = manifest.layout("line-h-3")
    pts = np.array([[p.x, p.y] for p in layout.points])
    out = np.empty((40, 2))
    kernels.resample(pts, out)
    sketch = tmp_path / "sketch.json"
    sketch.write_text(json.dumps([[x * 800, y * 600] for x, y in out.tolist()]))
    result = runner.invoke(
        main,
        [
            "generate",
            "--content", str(content_file),
            "--dataset", str(sample_dataset_path()),
            "--sketch", str(sketch),
            "--out", str(tmp_path / "out"),
            "--json",
        ],
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    from infogen.layout import match_sketch, sketch_from_points

    stroke = sketch_from_points(json.loads(sketch.read_text()))
    nearest = {l.id for l, _ in match_sketch(stroke, manifest.layouts, 3, 8)}
    assert "line-h-3" in nearest
    assert {d["layout_id"] for d in payload["designs"]} <= nearest


def test_build_index_deterministic(runner, tmp_path):
    for name in ("a", "b"):
        ds = tmp_path / name
        shutil.copytree(sample_dataset_path(), ds)
        result = runner.invoke(main, ["build-index", "--dataset", str(ds), "--seed", "0"])
        assert result.exit_code == 0, result.output
    assert (tmp_path / "a" / "manifest.json").read_bytes() == (
        tmp_path / "b" / "manifest.json"
    ).read_bytes()


def test_validate_ok(runner):
    result = runner.invoke(main, ["validate", "--dataset", str(sample_dataset_path())])
    assert result.exit_code == 0
    assert result.output.startswith("ok:")


def test_validate_lists_every_violation(runner, tmp_path):
    ds = tmp_path / "ds"
    shutil.copytree(sample_dataset_path(), ds)
    doc = json.loads((ds / "manifest.json").read_text())
    doc["layouts"][0]["points"][0] = [2.0, 0.5]
    doc["layouts"][1]["cluster_id"] = 99
    doc["vg_vif_index"]["postings"]["ghost"] = {"1": 1}
    (ds / "manifest.json").write_text(json.dumps(doc))
    result = runner.invoke(main, ["validate", "--dataset", str(ds)])
    assert result.exit_code == 2
    diagnostics = [l for l in result.output.splitlines() if l.startswith("  ")]
    assert len(diagnostics) >= 3


def test_rank_layouts_alpha_one_sorted_by_coverage(runner):
    result = runner.invoke(
        main,
        [
            "rank-layouts",
            "--dataset", str(sample_dataset_path()),
            "--n-vgs", "5",
            "--canvas", "800x600",
            "--alpha", "1.0",
            "--json",
        ],
    )
    assert result.exit_code == 0, result.output
    rows = json.loads(result.output)["layouts"]
    assert rows
    e_cs = [r["e_c"] for r in rows]
    assert e_cs == sorted(e_cs, reverse=True)
    e_ls = [r["e_l"] for r in rows]
    assert e_ls == pytest.approx(e_cs)


def test_rank_layouts_table_output(runner):
    result = runner.invoke(
        main,
        [
            "rank-layouts",
            "--dataset", str(sample_dataset_path()),
            "--n-vgs", "4",
        ],
    )
    assert result.exit_code == 0
    header, *rows = [l for l in result.output.splitlines() if l.strip()]
    assert header.split() == ["id", "e_o", "e_c", "u", "e_l"]
    assert rows


def test_dataset_envvar_default(runner, tmp_path, content_file, monkeypatch):
    monkeypatch.setenv("INFOGEN_DATASET", str(sample_dataset_path()))
    result = runner.invoke(
        main,
        ["generate", "--content", str(content_file), "--out", str(tmp_path / "out")],
    )
    assert result.exit_code == 0, result.output
