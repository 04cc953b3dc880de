"""Kernel backend selection.

The hot geometry loops (hull, simplification, scoring statistics, sketch
matching, rasterization) exist twice: a compiled Cython extension
(`_native`) and a pure-Python reference (`_pure`). The native module is
used when importable; set INFOGEN_PURE_PYTHON=1 to force the fallback.
Both backends are operation-identical, so results do not depend on which
one is active.
"""

from __future__ import annotations

import os

if os.environ.get("INFOGEN_PURE_PYTHON"):
    from infogen.kernels import _pure as _impl
else:
    try:
        from infogen.kernels import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        from infogen.kernels import _pure as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND

hull_indices = _impl.hull_indices
polygon_area = _impl.polygon_area
rdp_keep = _impl.rdp_keep
distance_stats = _impl.distance_stats
any_in_bbox = _impl.any_in_bbox
match_cost = _impl.match_cost
rasterize = _impl.rasterize
resample = _impl.resample
