"""The clustering loop, in two modes.

`literal` is the one-pass draw loop: repeatedly draw a random UNVISITED line,
compute its neighbour set, and either emit that set as a new cluster (marking
its members VISITED) or mark the drawn line NOISE.  There is no transitive
growth, so clusters are one-hop stars around the drawn line, a line can end
up in several clusters (multi-membership is recorded, not deduplicated), and
NOISE lines can still be absorbed into later clusters through neighbour-set
membership.

`expand` is the DBSCAN-style variant: a drawn core line seeds a cluster that
grows through a frontier queue over core members' neighbour sets; non-core
neighbours join as border lines (first claim wins) and unreached lines end as
noise.  Every line gets exactly one terminal label.

Both modes are deterministic given the dataset order and the seed.  The RNG
is numpy's PCG64 (np.random.default_rng); each draw picks
candidates[rng.integers(len(candidates))] where candidates lists the
UNVISITED indices in ascending order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .geometry import SegmentLike
from .neighborhood import NeighbourhoodSpec, RelationEvaluator

NOISE = -1

_UNVISITED, _VISITED, _NOISE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    """Everything a clustering run depends on besides the dataset itself."""

    spec: NeighbourhoodSpec
    mode: str = "expand"  # "literal" or "expand"
    rng_seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.mode not in ("literal", "expand"):
            raise ValueError(f"mode must be 'literal' or 'expand', got {self.mode!r}")


@dataclass
class ClusterLabels:
    """Result of a clustering run.

    memberships[i] lists the 1-based ids of every cluster line i belongs to
    (several in literal mode, at most one in expand mode); an empty list
    means noise.  seed_order records the drawn lines in draw order, trace one
    record per draw.  peak_aux is the peak auxiliary container occupancy
    (labels plus the largest transient neighbour set / frontier), used to
    check that no quadratic structure is ever held.
    """

    mode: str
    rng_seed: int
    memberships: list[list[int]]
    clusters: list[list[int]]
    seed_order: list[int]
    clusters_may_overlap: bool
    eval_count: int
    trace: list[dict]
    peak_aux: int
    core_flags: list[Optional[bool]] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.clusters)

    @property
    def noise(self) -> list[int]:
        return [i for i, m in enumerate(self.memberships) if not m]

    def labels(self) -> np.ndarray:
        """Single label per line: first cluster id, or NOISE (-1)."""
        return np.array([m[0] if m else NOISE for m in self.memberships], dtype=int)


def relation_eval_count(labels: ClusterLabels) -> int:
    """Number of relation evaluations the run performed (<= n^2 in literal mode)."""
    return labels.eval_count


def is_core(i: int, U: Sequence[SegmentLike], spec: NeighbourhoodSpec) -> bool:
    """Does line i have at least c neighbours (itself included)."""
    ev = RelationEvaluator(U, spec)
    return len(ev.neighbor_set(i)) >= spec.c


def _draw(rng: np.random.Generator, state: list[int]) -> int:
    candidates = [i for i, s in enumerate(state) if s == _UNVISITED]
    return candidates[int(rng.integers(len(candidates)))]


def run_literal(U: Sequence[SegmentLike], cfg: RunConfig) -> ClusterLabels:
    """One-pass draw loop; clusters may overlap and are emitted as drawn."""
    if not U:
        raise ValueError("cannot cluster an empty dataset")
    n = len(U)
    ev = RelationEvaluator(U, cfg.spec, threads=cfg.threads)
    rng = np.random.default_rng(cfg.rng_seed)
    state = [_UNVISITED] * n
    memberships: list[list[int]] = [[] for _ in range(n)]
    clusters: list[list[int]] = []
    seed_order: list[int] = []
    trace: list[dict] = []
    peak_transient = 0
    unvisited = n

    while unvisited > 0:
        u = _draw(rng, state)
        seed_order.append(u)
        region = ev.neighbor_set(u)
        peak_transient = max(peak_transient, len(region))
        if len(region) >= cfg.spec.c:
            cid = len(clusters) + 1
            members = sorted(region | {u})
            clusters.append(members)
            for i in members:
                if state[i] == _UNVISITED:
                    unvisited -= 1
                state[i] = _VISITED
                memberships[i].append(cid)
            trace.append({"chosen": u, "neighbours": len(region),
                          "decision": "cluster", "cluster": cid})
        else:
            state[u] = _NOISE
            unvisited -= 1
            trace.append({"chosen": u, "neighbours": len(region),
                          "decision": "noise", "cluster": None})

    ev.close()
    return ClusterLabels(
        mode="literal", rng_seed=cfg.rng_seed, memberships=memberships,
        clusters=clusters, seed_order=seed_order, clusters_may_overlap=True,
        eval_count=ev.eval_count, trace=trace, peak_aux=n + peak_transient,
        core_flags=[None] * n,
    )


def run_expand(U: Sequence[SegmentLike], cfg: RunConfig) -> ClusterLabels:
    """DBSCAN-style growth from core lines; single membership guaranteed."""
    if not U:
        raise ValueError("cannot cluster an empty dataset")
    n = len(U)
    ev = RelationEvaluator(U, cfg.spec, threads=cfg.threads)
    rng = np.random.default_rng(cfg.rng_seed)
    state = [_UNVISITED] * n
    core: list[Optional[bool]] = [None] * n
    memberships: list[list[int]] = [[] for _ in range(n)]
    clusters: list[list[int]] = []
    seed_order: list[int] = []
    trace: list[dict] = []
    peak_transient = 0
    unvisited = n

    while unvisited > 0:
        u = _draw(rng, state)
        seed_order.append(u)
        state[u] = _VISITED
        unvisited -= 1
        region = ev.neighbor_set(u)
        core[u] = len(region) >= cfg.spec.c
        peak_transient = max(peak_transient, len(region))
        if not core[u]:
            state[u] = _NOISE  # tentative: may still join a cluster as border
            trace.append({"chosen": u, "neighbours": len(region),
                          "decision": "noise", "cluster": None})
            continue

        cid = len(clusters) + 1
        members = [u]
        memberships[u] = [cid]
        frontier = deque(sorted(region - {u}))
        seen = set(frontier) | {u}
        while frontier:
            peak_transient = max(peak_transient, len(frontier) + len(seen))
            q = frontier.popleft()
            if not memberships[q]:
                memberships[q] = [cid]
                members.append(q)
            if core[q] is None:
                if state[q] == _UNVISITED:
                    unvisited -= 1
                state[q] = _VISITED
                region_q = ev.neighbor_set(q)
                core[q] = len(region_q) >= cfg.spec.c
                peak_transient = max(peak_transient, len(region_q))
                if core[q]:
                    for w in sorted(region_q):
                        if w not in seen:
                            seen.add(w)
                            frontier.append(w)
        clusters.append(sorted(members))
        trace.append({"chosen": u, "neighbours": len(region),
                      "decision": "cluster", "cluster": cid})

    ev.close()
    return ClusterLabels(
        mode="expand", rng_seed=cfg.rng_seed, memberships=memberships,
        clusters=clusters, seed_order=seed_order, clusters_may_overlap=False,
        eval_count=ev.eval_count, trace=trace, peak_aux=n + peak_transient,
        core_flags=core,
    )


def run(U: Sequence[SegmentLike], cfg: RunConfig) -> ClusterLabels:
    if cfg.mode == "literal":
        return run_literal(U, cfg)
    return run_expand(U, cfg)


def dump_trace(labels: ClusterLabels, path) -> None:
    """Write the run trace as JSON lines (one record per draw)."""
    import json

    with open(path, "w", encoding="utf-8") as fh:
        for rec in labels.trace:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
