import xml.etree.ElementTree as ET

import pytest
from fastapi.testclient import TestClient

from infogen.service import create_app

MARKDOWN = (
    "- title: One\n  text: first\n"
    "- title: Two\n  text: second\n"
    "- title: Three\n  text: third\n"
)

BODY = {"markdown": MARKDOWN, "canvas": {"width": 800, "height": 600}, "n": 3}


@pytest.fixture(scope="module")
def client(sample_manifest):
    return TestClient(create_app(sample_manifest))


def test_recommend_returns_designs_with_svg(client):
    resp = client.post("/v1/recommend", json=BODY)
    assert resp.status_code == 200
    results = resp.json()["results"]
    assert len(results) == 3
    for r in results:
        assert set(r) == {"design", "scores", "svg"}
        assert set(r["scores"]) >= {"e_l", "e_c", "u", "e_o", "tfidf", "p_style", "composite"}
        root = ET.fromstring(r["svg"])
        assert root.tag.endswith("svg")


def test_recommend_is_deterministic(client):
    a = client.post("/v1/recommend", json=BODY)
    b = client.post("/v1/recommend", json=BODY)
    assert a.content == b.content


def test_recommend_error_taxonomy(client):
    bad = dict(BODY, markdown="")
    resp = client.post("/v1/recommend", json=bad)
    assert resp.status_code == 400
    body = resp.json()
    assert set(body) == {"stage", "code", "message"}
    assert body["stage"] == "content"


def test_pivot_override_without_pivot_is_compose_error(client):
    body = dict(BODY, overrides={"connection_style": "pivot"})
    resp = client.post("/v1/recommend", json=body)
    assert resp.status_code == 400
    assert resp.json()["stage"] == "compose"
    assert "pivot" in resp.json()["message"]


def test_oversized_sketch_413(client):
    body = dict(BODY, sketch=[[float(i), float(i)] for i in range(10_001)])
    resp = client.post("/v1/recommend", json=body)
    assert resp.status_code == 413
    assert resp.json()["code"] == "sketch_too_large"


def test_rank_layouts_endpoint(client):
    resp = client.post(
        "/v1/rank/layouts",
        json={"n_vgs": 5, "canvas": {"width": 800, "height": 600}, "top_k": 8},
    )
    assert resp.status_code == 200
    rows = resp.json()["results"]
    assert rows
    assert all(set(r) == {"id", "e_o", "e_c", "u", "e_l"} for r in rows)
    els = [r["e_l"] for r in rows]
    assert els == sorted(els, reverse=True)


def test_rank_layouts_with_sketch_orders_by_distance(client, sample_manifest):
    import numpy as np

    from infogen import kernels

    layout = sample_manifest.layout("ring-6")
    pts = np.array([[p.x, p.y] for p in layout.points])
    out = np.empty((40, 2))
    kernels.resample(pts, out)
    sketch = [[float(x) * 800, float(y) * 600] for x, y in out]
    resp = client.post(
        "/v1/rank/layouts",
        json={"n_vgs": 6, "canvas": {"width": 800, "height": 600}, "sketch": sketch, "top_k": 5},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["sketch_used"]
    assert body["results"][0]["id"] == "ring-6"
    dists = [r["distance"] for r in body["results"]]
    assert dists == sorted(dists)


def test_rank_vgs_endpoint(client):
    resp = client.post(
        "/v1/rank/vgs", json={"cluster_id": 0, "slots": ["title", "text"], "top_k": 8}
    )
    assert resp.status_code == 200
    rows = resp.json()["results"]
    assert rows
    scores = [r["score"] for r in rows]
    assert scores == sorted(scores, reverse=True)


def test_rank_vgs_incompatible_slots_400(client):
    resp = client.post(
        "/v1/rank/vgs",
        json={"cluster_id": 0, "slots": ["title", "text", "label", "image", "bogus"], "top_k": 8},
    )
    assert resp.status_code == 400
    assert resp.json()["message"] == "no VG design matches content shape"


def test_rank_connections_endpoint(client):
    resp = client.post("/v1/rank/connections", json={"cluster_id": 0})
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["results"]) == 5
    total = sum(r["probability"] for r in body["results"])
    assert total == pytest.approx(1.0)


def test_rank_connections_unseen_cluster_uniform(sample_manifest):
    import dataclasses

    from infogen.compose import CVifIndex

    counts = dict(sample_manifest.c_vif_index.counts)
    unseen = max(counts)
    counts.pop(unseen)
    stripped = dataclasses.replace(sample_manifest, c_vif_index=CVifIndex(counts=counts))
    local = TestClient(create_app(stripped))
    resp = local.post("/v1/rank/connections", json={"cluster_id": unseen})
    body = resp.json()
    assert body["uniform_fallback"]
    assert all(r["probability"] == pytest.approx(0.2) for r in body["results"])


def test_dataset_summary_matches_manifest(client, sample_manifest):
    resp = client.get("/v1/dataset/summary")
    counts = resp.json()["counts"]
    assert counts["layouts"] == len(sample_manifest.layouts)
    assert counts["vg_templates"] == len(sample_manifest.vg_templates)
    assert counts["connection_shapes"] == len(sample_manifest.connection_shapes)
    assert counts["palettes"] == len(sample_manifest.palettes)


def test_dataset_vg_svg_and_404(client, sample_manifest):
    vg_id = sample_manifest.vg_templates[0].id
    ok = client.get(f"/v1/dataset/vg/{vg_id}.svg")
    assert ok.status_code == 200
    assert ok.headers["content-type"].startswith("image/svg+xml")
    missing = client.get("/v1/dataset/vg/nope.svg")
    assert missing.status_code == 404
    assert missing.json()["code"] == "unknown_id"


def test_dataset_connection_svg(client, sample_manifest):
    sid = sample_manifest.connection_shapes[0].id
    assert client.get(f"/v1/dataset/connection/{sid}.svg").status_code == 200
    assert client.get("/v1/dataset/connection/nope.svg").status_code == 404


def test_compose_matches_recommend_bytes(client):
    rec = client.post("/v1/recommend", json=BODY).json()["results"][0]
    d = rec["design"]
    resp = client.post(
        "/v1/compose",
        json={
            "markdown": MARKDOWN,
            "canvas": {"width": 800, "height": 600},
            "layout_id": d["layout_id"],
            "vg_id": d["vg_id"],
            "connection_style": d["connection_style"],
        },
    )
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("image/svg+xml")
    assert resp.text == rec["svg"]


def test_compose_unknown_layout_404(client):
    resp = client.post(
        "/v1/compose",
        json={
            "markdown": MARKDOWN,
            "canvas": {"width": 800, "height": 600},
            "layout_id": "ghost",
            "vg_id": "vg-card",
            "connection_style": "regular",
        },
    )
    assert resp.status_code == 404


def test_pivot_graphic_upload_and_use(client):
    svg = '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 50 50"><circle cx="25" cy="25" r="20" fill="#245"/></svg>'
    up = client.post("/v1/pivot-graphic", content=svg)
    assert up.status_code == 200
    gid = up.json()["id"]
    again = client.post("/v1/pivot-graphic", content=svg)
    assert again.json()["id"] == gid  # content addressed

    body = dict(BODY, pivot={"x": 340, "y": 240, "w": 120, "h": 120, "graphic_id": gid})
    resp = client.post("/v1/recommend", json=body)
    assert resp.status_code == 200
    assert "circle" in resp.json()["results"][0]["svg"]

    missing = dict(BODY, pivot={"x": 340, "y": 240, "w": 120, "h": 120, "graphic_id": "nope"})
    assert client.post("/v1/recommend", json=missing).status_code == 404


def test_pivot_graphic_rejects_bad_svg(client):
    resp = client.post("/v1/pivot-graphic", content="<svg><oops")
    assert resp.status_code == 400
    assert resp.json()["code"] == "bad_svg"
