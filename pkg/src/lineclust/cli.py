"""Command-line interface: cluster, gen, lift and bench subcommands.

Exit codes are stable: 0 success, 1 IO/runtime failure, 2 usage error.
A JSON config file can pre-set any cluster or lift option; explicit flags
override config values.  Outputs carry no timestamps, so a fixed seed fully
determines the bytes written by gen and cluster.  The LINECLUST_LOG
environment variable (debug/info/warning/error) sets the log verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import data_io
from .engine import RunConfig, dump_trace, run
from .errors import ConfigurationError, ParseError, UnsupportedRecordError
from .missing_data import AxisDomain, lift_dataset
from .neighborhood import NeighbourhoodSpec, RelationEvaluator
from .profiles import Profile, format_profile, parse_profile


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lineclust",
        description="Density-based clustering of lines and line segments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cluster = sub.add_parser("cluster", help="cluster a segments file")
    p_cluster.add_argument("input", help="segments CSV or GeoJSON file")
    p_cluster.add_argument("--format", choices=["csv", "geojson"], default=None,
                           help="input format (default: by file extension)")
    p_cluster.add_argument("--version", type=int, choices=[1, 2, 3], default=None,
                           help="relation version (1 metric, 2 volume-derived, 3 scaled density)")
    p_cluster.add_argument("--c", dest="cardinality", type=int, default=None,
                           help="cardinality threshold (required)")
    p_cluster.add_argument("--alpha", type=float, default=None,
                           help="scale parameter (versions 1 and 3)")
    p_cluster.add_argument("--volume", type=float, default=None,
                           help="target neighbourhood volume V (version 2)")
    p_cluster.add_argument("--profile", default=None,
                           help="density for every line, e.g. uniform:0,1 (versions 2 and 3)")
    p_cluster.add_argument("--profiles", default=None,
                           help="JSON file mapping record id to a profile string or null")
    p_cluster.add_argument("--alpha-mode", choices=["literal", "exact-volume"], default=None,
                           help="version 2 scale derivation (default literal: V / base volume)")
    p_cluster.add_argument("--mode", choices=["literal", "expand"], default=None,
                           help="clustering mode (default expand)")
    p_cluster.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    p_cluster.add_argument("--search-samples", type=int, default=None,
                           help="witness-search grid size (default 64)")
    p_cluster.add_argument("--threads", type=int, default=None,
                           help="threads for relation rows (default 1)")
    p_cluster.add_argument("--crop", default=None,
                           help="GeoJSON crop box minx,miny,maxx,maxy")
    p_cluster.add_argument("--out", default=None, help="results JSON path (default results.json)")
    p_cluster.add_argument("--svg", default=None, help="also render an SVG (2-d data only)")
    p_cluster.add_argument("--trace", default=None, help="write the draw trace as JSON lines")
    p_cluster.add_argument("--config", default=None, help="JSON config file; flags override it")
    p_cluster.set_defaults(func=cmd_cluster)

    p_gen = sub.add_parser("gen", help="generate a synthetic segments file")
    p_gen.add_argument("kind", choices=["convex", "doughnut"])
    p_gen.add_argument("--count", type=int, default=None,
                       help="records to generate (default: 150 convex, 400 doughnut)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_lift = sub.add_parser(
        "lift", help="lift a points CSV (missing entries allowed) to segments")
    p_lift.add_argument("input", help="points CSV with header id,x1..xn")
    p_lift.add_argument("--axis", action="append", default=[], metavar="K=SPEC",
                        help="domain for 1-based axis K, e.g. 2=uniform:-4,4 or "
                             "2=normal:0.5,0.01@-4,4 (template over t in [0,1])")
    p_lift.add_argument("--out", default=None, help="segments CSV to write")
    p_lift.add_argument("--profiles-out", default=None,
                        help="profile map JSON (default: <out>.profiles.json)")
    p_lift.add_argument("--config", default=None,
                        help="JSON config with keys axes/out/profiles_out; flags override")
    p_lift.set_defaults(func=cmd_lift)

    p_bench = sub.add_parser("bench", help="run the draw-loop worst case and report scaling")
    p_bench.add_argument("--sizes", default="250,500,1000",
                         help="dataset sizes, comma-separated")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--verify", action="store_true",
                         help="also cross-check neighbour sets against the exhaustive relation matrix")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("LINECLUST_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, UnsupportedRecordError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


# -- cluster -------------------------------------------------------------------

def _load_records(path, fmt, crop):
    if fmt is None:
        fmt = "geojson" if str(path).lower().endswith((".json", ".geojson")) else "csv"
    if fmt == "geojson":
        box = None
        if crop:
            parts = [float(v) for v in crop.split(",")]
            if len(parts) != 4:
                raise ConfigurationError("--crop needs minx,miny,maxx,maxy")
            box = tuple(parts)
        return data_io.load_geojson(path, crop=box)
    return data_io.load_segments_csv(path)


def _per_line_profiles(path, ids) -> list[Profile | None]:
    with open(path, encoding="utf-8") as fh:
        mapping = json.load(fh)
    missing = [rid for rid in ids if rid not in mapping]
    if missing:
        raise ConfigurationError(
            f"profile map lacks entries for {len(missing)} record(s), e.g. {missing[:3]}")
    return [parse_profile(mapping[rid]) if mapping[rid] else None for rid in ids]


def cmd_cluster(args) -> int:
    file_cfg = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            file_cfg = json.load(fh)

    def pick(flag_value, key, default=None):
        return flag_value if flag_value is not None else file_cfg.get(key, default)

    version = pick(args.version, "version")
    c = pick(args.cardinality, "c")
    if version is None or c is None:
        raise ConfigurationError("cluster requires --version and --c")
    records = _load_records(args.input, pick(args.format, "format"),
                            pick(args.crop, "crop"))
    if not records:
        raise ValueError(f"{args.input}: no segments to cluster")
    U = [r.to_segment() for r in records]
    ids = [r.id for r in records]

    profile_text = pick(args.profile, "profile")
    profiles_path = pick(args.profiles, "profiles")
    if profile_text is not None and profiles_path is not None:
        raise ConfigurationError("--profile and --profiles are mutually exclusive")
    profile = None
    if profile_text is not None:
        profile = parse_profile(profile_text)
    elif profiles_path is not None:
        profile = _per_line_profiles(profiles_path, ids)

    spec = NeighbourhoodSpec(
        version=int(version),
        c=int(c),
        alpha=pick(args.alpha, "alpha"),
        volume=pick(args.volume, "volume"),
        profile=profile,
        alpha_mode=pick(args.alpha_mode, "alpha_mode", "literal"),
        search_samples=int(pick(args.search_samples, "search_samples", 64)),
    )
    mode = pick(args.mode, "mode")
    if mode is None:
        mode = "expand"
        print("mode=expand (cluster growth); use --mode literal for the "
              "one-pass draw loop without growth", file=sys.stderr)
    cfg = RunConfig(spec=spec, mode=mode, rng_seed=int(pick(args.seed, "seed", 0)),
                    threads=int(pick(args.threads, "threads", 1)))
    labels = run(U, cfg)

    echo = {
        "input": str(args.input),
        "version": spec.version,
        "c": spec.c,
        "alpha": spec.alpha if not isinstance(spec.alpha, (list, dict)) else "per-line",
        "volume": spec.volume,
        "profile": format_profile(profile) if isinstance(profile, Profile) else
                   ("per-line" if profile is not None else None),
        "alpha_mode": spec.alpha_mode,
        "search_samples": spec.search_samples,
    }
    out = pick(args.out, "out", "results.json")
    data_io.write_results(labels, out, ids=ids, config=echo)
    svg = pick(args.svg, "svg")
    if svg:
        data_io.write_svg(U, labels, svg)
    trace = pick(args.trace, "trace")
    if trace:
        dump_trace(labels, trace)
    print(f"k={labels.k} outliers={len(labels.noise)} evals={labels.eval_count}")
    return 0


# -- gen -----------------------------------------------------------------------

def cmd_gen(args) -> int:
    count = args.count
    if count is None:
        count = 150 if args.kind == "convex" else 400
    gen = data_io.gen_convex if args.kind == "convex" else data_io.gen_doughnut
    records = gen(count, seed=args.seed)
    data_io.write_segments_csv(records, args.out)
    print(f"wrote {len(records)} segments to {args.out}")
    return 0


# -- lift ----------------------------------------------------------------------

def _parse_axis(text: str) -> AxisDomain:
    """K=family:p1,p2[@lo,hi] with K 1-based (matching the x1..xn columns)."""
    head, sep, spec = text.partition("=")
    if not sep:
        raise ConfigurationError(f"--axis needs K=SPEC, got {text!r}")
    try:
        k = int(head)
    except ValueError:
        raise ConfigurationError(f"--axis index must be an integer, got {head!r}") from None
    if k < 1:
        raise ConfigurationError(f"--axis index is 1-based, got {k}")
    prof_text, at, window_text = spec.partition("@")
    template = parse_profile(prof_text)
    if at:
        lo_hi = window_text.split(",")
        if len(lo_hi) != 2:
            raise ConfigurationError(f"--axis window needs lo,hi after @, got {text!r}")
        window = (float(lo_hi[0]), float(lo_hi[1]))
        return AxisDomain(axis=k - 1, window=window, profile_template=template)
    if template.family != "uniform":
        raise ConfigurationError(
            f"--axis {text!r}: non-uniform templates need an explicit @lo,hi window")
    # uniform:lo,hi doubles as the window; the template becomes uniform in t
    return AxisDomain(axis=k - 1, window=(template.params[0], template.params[1]),
                      profile_template=Profile.uniform(0.0, 1.0))


def cmd_lift(args) -> int:
    file_cfg = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            file_cfg = json.load(fh)
    axis_texts = args.axis or file_cfg.get("axes", [])
    out = args.out if args.out is not None else file_cfg.get("out")
    profiles_out = args.profiles_out if args.profiles_out is not None \
        else file_cfg.get("profiles_out")
    if not axis_texts:
        raise ConfigurationError("lift requires at least one --axis declaration "
                                 "(or an axes list in --config)")
    if out is None:
        raise ConfigurationError("lift requires --out (or out in --config)")
    domains = {}
    for text in axis_texts:
        dom = _parse_axis(text)
        domains[dom.axis] = dom
    rows = data_io.load_points_csv(args.input)
    result = lift_dataset([values for _, values in rows], domains,
                          ids=[rid for rid, _ in rows])
    records = [
        data_io.SegmentRecord(id=sid, x=seg.x, y=seg.y)
        for sid, seg in zip(result.source_ids, result.segments)
    ]
    data_io.write_segments_csv(records, out)
    profiles_out = profiles_out or f"{out}.profiles.json"
    mapping = {
        sid: (format_profile(p) if p is not None else None)
        for sid, p in zip(result.source_ids, result.profiles)
    }
    with open(profiles_out, "w", encoding="utf-8") as fh:
        json.dump(mapping, fh, indent=2, sort_keys=True)
        fh.write("\n")
    lifted = sum(1 for p in result.profiles if p is not None)
    print(f"lifted {len(records)} records ({lifted} with a missing entry) "
          f"to {out} + {profiles_out}")
    return 0


# -- bench ----------------------------------------------------------------------

def cmd_bench(args) -> int:
    sizes = [int(v) for v in args.sizes.split(",") if v.strip()]
    if not sizes:
        raise ConfigurationError("--sizes must name at least one size")
    spec = NeighbourhoodSpec(version=1, c=2, alpha=1.0)
    for n in sizes:
        records = data_io.gen_isolated(n)
        U = [r.to_segment() for r in records]
        cfg = RunConfig(spec=spec, mode="literal", rng_seed=args.seed)
        start = time.perf_counter()
        labels = run(U, cfg)
        elapsed = time.perf_counter() - start
        print(f"n={n} evals={labels.eval_count} bound={n * n} seconds={elapsed:.3f}")
        if labels.eval_count > n * n:
            print(f"error: eval count exceeds n^2 for n={n}", file=sys.stderr)
            return 1
    if args.verify:
        from .oracle import relation_matrix

        records = data_io.gen_doughnut(120, seed=args.seed)
        U = [r.to_segment() for r in records]
        vspec = NeighbourhoodSpec(version=1, c=5, alpha=12.0)
        M = relation_matrix(U, vspec)
        ev = RelationEvaluator(U, vspec)
        for i in range(len(U)):
            row = ev.neighbor_set(i)
            if row != set(int(j) for j in M[i].nonzero()[0]):
                print(f"error: neighbour set of line {i} disagrees with the "
                      f"relation matrix", file=sys.stderr)
                return 1
        print(f"verify: relation matrix consistent (n={len(U)})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
