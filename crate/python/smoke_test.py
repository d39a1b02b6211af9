#!/usr/bin/env python3
"""Smoke test for the polyoverlap_py extension module.

Builds nothing itself: it looks for the compiled cdylib under target/
(debug or release), copies it next to this script under the importable
name, and exercises the bound API end to end.

Run from the repository root:
    cargo build -p polyoverlap-py
    python3 python/smoke_test.py
"""

import math
import pathlib
import shutil
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def stage_module() -> None:
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libpolyoverlap_py.so", "polyoverlap_py.dll", "libpolyoverlap_py.dylib")
    ]
    src = next((c for c in candidates if c.exists()), None)
    if src is None:
        sys.exit("extension not built; run `cargo build -p polyoverlap-py` first")
    dst = HERE / "polyoverlap_py.so"
    if not dst.exists() or src.stat().st_mtime > dst.stat().st_mtime:
        shutil.copy2(src, dst)
    sys.path.insert(0, str(HERE))


def main() -> None:
    stage_module()
    import polyoverlap_py as po

    # Polygon basics.
    square = po.Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert math.isclose(square.area(), 1.0)
    assert len(square.ring()) == 4

    l_shape = po.Polygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
    assert math.isclose(l_shape.area(), 3.0)
    decomposed = l_shape.decompose()
    parts = decomposed.parts()
    assert parts is not None and len(parts) == 2, parts

    # Exact overlap and the brute-force oracle agree at the optimum.
    assert math.isclose(po.overlap_area(square, square, (0.0, 0.0)), 1.0)
    assert math.isclose(po.overlap_area(square, square, (0.5, 0.0)), 0.5)
    best, at, slack = po.grid_max(l_shape, l_shape)
    assert abs(best - 3.0) <= slack + 1e-9, (best, slack)
    assert math.hypot(*at) < 0.1, at

    # Scaling similarity: the unit square fits exactly in itself.
    alpha, _ = po.scaling_similarity(square, square)
    assert abs(alpha - 1.0) < 1e-6, alpha

    # Level-set slice of the square pair crosses the axis at 0.75.
    ring = po.slice_boundary(square, square, 0.25)
    r = max(x for x, y in ring if abs(y) < 0.02)
    assert abs(r - 0.75) < 0.01, r

    # Matching: the L-shape against itself reaches 75% of its area.
    outcome = po.match_polygons(l_shape, l_shape, 0.25)
    assert outcome.value >= 0.75 * 3.0, outcome.value
    assert abs(outcome.query_overlap(outcome.translation) - outcome.value) <= 1e-12
    assert outcome.query_overlap((10.0, 10.0)) == 0.0
    assert outcome.pair_budget == 0.25 / 4

    # Errors surface as ValueError.
    try:
        po.Polygon([(0, 0), (1, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("2-point ring should be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
