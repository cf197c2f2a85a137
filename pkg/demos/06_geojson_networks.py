#!/usr/bin/env python3
"""Ingest a polyline network from GeoJSON and cluster its segments.

Builds a small synthetic "route map" (three polyline corridors plus stray
ticks), splits every LineString into vertex-pair segments, crops to a
bounding box, and clusters with the metric relation at a degree-scale
threshold.  Outputs land in demos/output/.

Run:  python demos/06_geojson_networks.py
"""

import json
import math
from pathlib import Path

import numpy as np

from lineclust import NeighbourhoodSpec, RunConfig, run
from lineclust.data_io import load_geojson, write_results, write_svg


def wiggly_path(rng, start, heading, steps, step_len=0.05):
    pts = [list(start)]
    h = heading
    for _ in range(steps):
        h += rng.uniform(-0.15, 0.15)
        x, y = pts[-1]
        pts.append([x + step_len * math.cos(h), y + step_len * math.sin(h)])
    return pts


def main():
    out_dir = Path(__file__).parent / "output"
    out_dir.mkdir(exist_ok=True)
    rng = np.random.default_rng(13)

    features = []
    corridors = [((0.0, 0.0), 0.3), ((0.0, 2.2), -0.3), ((2.5, 0.0), 1.25)]
    for start, heading in corridors:
        for _ in range(4):  # four roughly parallel routes per corridor
            jitter = rng.uniform(-0.02, 0.02, 2)
            coords = wiggly_path(rng, np.array(start) + jitter, heading, 25)
            features.append({"type": "Feature", "properties": {},
                             "geometry": {"type": "LineString", "coordinates": coords}})
    for _ in range(6):  # stray ticks scattered over the map
        p = rng.uniform(0.0, 4.0, 2)
        features.append({"type": "Feature", "properties": {},
                         "geometry": {"type": "LineString",
                                      "coordinates": [p.tolist(), (p + 0.05).tolist()]}})

    geo_path = out_dir / "routes.geojson"
    geo_path.write_text(json.dumps({"type": "FeatureCollection", "features": features}))

    records = load_geojson(geo_path)
    print(f"loaded {len(records)} segments from {len(features)} polylines")
    cropped = load_geojson(geo_path, crop=(-1.0, -1.0, 3.5, 3.5))
    print(f"cropping to the corridor box keeps {len(cropped)} of them")

    U = [r.to_segment() for r in cropped]
    ids = [r.id for r in cropped]
    spec = NeighbourhoodSpec(version=1, c=4, alpha=0.08)
    labels = run(U, RunConfig(spec=spec, mode="expand", rng_seed=2))
    print(f"k={labels.k} corridors found, outliers={len(labels.noise)}")

    write_svg(U, labels, out_dir / "routes.svg")
    write_results(labels, out_dir / "routes.json", ids=ids,
                  config={"version": 1, "c": 4, "alpha": 0.08})
    print(f"wrote {out_dir / 'routes.svg'}")


if __name__ == "__main__":
    main()
