"""Time expansion of a temporal instance into a layered DAG.

Every surviving time edge (one whose departure lies in the window and whose
arrival beats the horizon) contributes a departure and an arrival node for
each orientation, and one weighted arc per orientation. Waiting at a vertex
becomes a chain of unblockable wait arcs between that vertex's consecutive
time labels, and every (t, tau) node gets unblockable zero-weight arcs into a
single synthetic target, so reaching t at any admissible time is one
reachability question on the DAG.

The two arcs born from one time edge share a block group: blocking a copy of
the edge removes that copy in both directions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

from .core import StaticEdge, StaticGraph, TemporalGraph, TemporalWalk, TimeEdge, WalkStep
from .dagctp import BlockGroups

Node = tuple  # (vertex name, time); the synthetic target is ("@target", 0)
WAIT = "wait"
SINK = "sink"

TARGET: Node = ("@target", 0)


@dataclass
class ExpandedDag:
    graph: StaticGraph
    source: Node
    target: Node
    s: str
    t: str
    k: int
    t1: int
    t2: Union[int, float]
    origins: dict
    groups: BlockGroups

    @cached_property
    def arc_by_pair(self) -> dict:
        return {(e.u, e.v): e for e in self.graph.edges}

    def non_target_nodes(self) -> tuple:
        return tuple(v for v in self.graph.vertices if v != self.target)


def build_expansion(
    g: TemporalGraph,
    s: str,
    t: str,
    k: int,
    t1: int = 0,
    t2: Union[int, float, None] = None,
) -> ExpandedDag:
    """Expand g restricted to the window [t1, t2].

    Only time edges with t1 <= tau and tau + d <= t2 take part; a (s, t1)
    node always exists, so the degenerate s = t case still reaches the
    target through its sink arcs.
    """
    for x in (s, t):
        if x not in g.index:
            raise ValueError(f"unknown vertex {x!r}")
    if t2 is None:
        t2 = math.inf
    if t1 < 0 or t1 > t2:
        raise ValueError(f"bad window [{t1}, {t2}]")
    surviving = [e for e in g.edges if t1 <= e.tau and e.tau + e.d <= t2]

    nodes = {(s, t1)}
    for e in surviving:
        nodes.update(
            {(e.u, e.tau), (e.v, e.tau), (e.u, e.arrival), (e.v, e.arrival)}
        )

    arcs: list[StaticEdge] = []
    origins: dict = {}
    arc_to_group: dict = {}
    group_copies: dict = {}

    def add(u: Node, v: Node, weight: int, copies: int, gid, origin) -> None:
        arc = StaticEdge(u, v, weight, copies)
        arcs.append(arc)
        origins[arc.key] = origin
        arc_to_group[arc.key] = gid
        group_copies[gid] = copies

    for e in surviving:
        gid = ("edge", e.key)
        add((e.u, e.tau), (e.v, e.arrival), e.d, e.copies, gid, e)
        add((e.v, e.tau), (e.u, e.arrival), e.d, e.copies, gid, e)

    times_of: dict[str, list[int]] = {}
    for name, tau in nodes:
        times_of.setdefault(name, []).append(tau)
    for name, times in sorted(times_of.items()):
        times.sort()
        for a, b in zip(times, times[1:]):
            add((name, a), (name, b), b - a, k + 1, ("wait", name, a), WAIT)

    for tau in sorted(times_of.get(t, [])):
        add((t, tau), TARGET, 0, k + 1, ("sink", tau), SINK)
    nodes.add(TARGET)

    graph = StaticGraph.build(sorted(nodes), arcs, directed=True)
    return ExpandedDag(
        graph=graph,
        source=(s, t1),
        target=TARGET,
        s=s,
        t=t,
        k=k,
        t1=t1,
        t2=t2,
        origins=origins,
        groups=BlockGroups(arc_to_group, group_copies),
    )


def project_walk(xd: ExpandedDag, path: Sequence[Node]) -> TemporalWalk:
    """Turn a node path of the expansion into the temporal walk it encodes.

    Wait arcs become waiting (no step); sink arcs are dropped. The path must
    follow arcs of the expansion.
    """
    if not path:
        raise ValueError("empty path")
    if path[0] == xd.target:
        raise ValueError("path may not start at the synthetic target")
    steps: list[WalkStep] = []
    for a, b in zip(path, path[1:]):
        arc = xd.arc_by_pair.get((a, b))
        if arc is None:
            raise ValueError(f"no arc {a} -> {b} in the expansion")
        origin = xd.origins[arc.key]
        if isinstance(origin, TimeEdge):
            steps.append(WalkStep(edge=origin, depart=origin.tau))
    start = path[0][0]
    return TemporalWalk(start=start, steps=tuple(steps))
