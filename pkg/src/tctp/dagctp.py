"""Blocked-arc game on weighted DAGs.

Traveller walks from s toward t; Blocker may block up to k arc copies in
total, and each blocked copy becomes visible only when Traveller arrives at
its tail. ``compute_pi`` computes, for every vertex v and every
remaining blocker budget i, the worst-case cost Traveller can guarantee from
v; ``brute_dag_game`` recomputes the same quantity by exhaustive game-tree
search and exists purely as a cross-check.
"""
from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from itertools import chain, repeat
from typing import Mapping, Optional

from .core import StaticEdge, StaticGraph
from .errors import CyclicGraphError, NoSafeMoveError, SizeLimitError

UNREACHABLE = math.inf


def topological_order(g: StaticGraph) -> list:
    """Kahn's algorithm; raises CyclicGraphError if g has a directed cycle."""
    if not g.directed:
        raise ValueError("topological order needs a directed graph")
    indeg = {v: 0 for v in g.vertices}
    for e in g.edges:
        indeg[e.v] += 1
    ready = deque(v for v in g.vertices if indeg[v] == 0)
    order = []
    while ready:
        v = ready.popleft()
        order.append(v)
        for e in g.outgoing(v):
            indeg[e.v] -= 1
            if indeg[e.v] == 0:
                ready.append(e.v)
    if len(order) != len(g.vertices):
        raise CyclicGraphError("graph contains a directed cycle")
    return order


@dataclass(frozen=True)
class BlockGroups:
    """Ties arcs that one block decision removes together.

    Blocking copy j of a group removes copy j of every member arc and costs
    one budget unit. The default (identity) grouping makes every arc its own
    group. Group ids must be hashable and mutually sortable.
    """

    arc_to_group: Mapping[tuple, object]
    group_copies: Mapping[object, int]

    @classmethod
    def identity(cls, g: StaticGraph) -> "BlockGroups":
        return cls(
            {e.key: i for i, e in enumerate(g.edges)},
            {i: e.copies for i, e in enumerate(g.edges)},
        )

    def group_of(self, e: StaticEdge):
        return self.arc_to_group[e.key]


def _groups_or_identity(g: StaticGraph, groups: Optional[BlockGroups]) -> BlockGroups:
    if groups is None:
        return BlockGroups.identity(g)
    members: dict = {}
    for e in g.edges:
        gid = groups.arc_to_group.get(e.key)
        if gid is None:
            raise ValueError(f"arc {e.key} missing from block groups")
        if groups.group_copies[gid] != e.copies:
            raise ValueError(f"arc {e.key} copies differ from its group's")
        members.setdefault(gid, []).append(e)
    for gid, arcs in members.items():
        tails = [a.u for a in arcs]
        if len(set(tails)) != len(tails):
            raise ValueError(f"group {gid!r} has two member arcs at one tail")
    return groups


@dataclass(frozen=True)
class PiTable:
    """table.value(v, i): guaranteed cost from v with blocker budget i left."""

    values: Mapping[object, tuple]
    budget: int
    target: object

    def value(self, v, i: int):
        if not 0 <= i <= self.budget:
            raise ValueError(f"budget index {i} outside 0..{self.budget}")
        return self.values[v][i]


def compute_pi(
    g: StaticGraph, target, budget: int, groups: Optional[BlockGroups] = None
) -> PiTable:
    """Worst-case guaranteed cost per (vertex, remaining blocker budget).

    With budget i at vertex v, Blocker may remove m <= i of v's outgoing arc
    copies on arrival; Traveller then takes the best survivor. The guarantee
    is therefore the max over m of the (m+1)-smallest candidate, candidates
    counted once per copy and valued at cost-from-head (with budget i-m) plus
    arc weight.

    Block groups are validated but do not alter the table: a group's member
    arcs sit at distinct tails, and in the layered DAGs built by the time
    expansion at most one member is ever reachable in a single play, so group
    coupling never binds. The brute-force oracle, which honours groups
    exactly, cross-checks this.
    """
    if target not in g.index:
        raise ValueError(f"unknown target vertex {target!r}")
    grp = _groups_or_identity(g, groups)
    _check_groups_path_free(g, grp)
    order = topological_order(g)
    k = budget
    values: dict = {}
    for v in reversed(order):
        if v == target:
            values[v] = tuple(0 for _ in range(k + 1))
            continue
        out = g.outgoing(v)
        if not out:
            values[v] = tuple(UNREACHABLE for _ in range(k + 1))
            continue
        # best k+1 candidate costs per remaining-budget index r
        prefixes = []
        for r in range(k + 1):
            cands = chain.from_iterable(
                repeat(values[e.v][r] + e.weight, min(e.copies, k + 1)) for e in out
            )
            prefixes.append(heapq.nsmallest(k + 1, cands))
        row = []
        for i in range(k + 1):
            best = 0
            for m in range(i + 1):
                prefix = prefixes[i - m]
                cand = prefix[m] if m < len(prefix) else UNREACHABLE
                if cand > best:
                    best = cand
            row.append(best)
        values[v] = tuple(row)
    return PiTable(values, k, target)


def _check_groups_path_free(g: StaticGraph, groups: BlockGroups) -> None:
    """Reject groups whose members could both occur on one directed path."""
    members: dict = {}
    for e in g.edges:
        members.setdefault(groups.arc_to_group[e.key], []).append(e)
    multi = [arcs for arcs in members.values() if len(arcs) > 1]
    if not multi:
        return
    reach_memo: dict = {}

    def descendants(v) -> frozenset:
        if v in reach_memo:
            return reach_memo[v]
        seen = set()
        stack = [v]
        while stack:
            x = stack.pop()
            for e in g.outgoing(x):
                if e.v not in seen:
                    seen.add(e.v)
                    stack.append(e.v)
        out = frozenset(seen)
        reach_memo[v] = out
        return out

    for arcs in multi:
        for a in arcs:
            reachable = descendants(a.v) | {a.v}
            for b in arcs:
                if b is not a and b.u in reachable:
                    raise ValueError(
                        f"block group members {a.key} and {b.key} can share a path"
                    )


def decide_dag(
    g: StaticGraph,
    s,
    t,
    budget: int,
    deadline,
    groups: Optional[BlockGroups] = None,
) -> bool:
    """True iff Traveller can guarantee reaching t from s with cost <= deadline."""
    table = compute_pi(g, t, budget, groups)
    if s not in g.index:
        raise ValueError(f"unknown source vertex {s!r}")
    return table.value(s, budget) <= deadline


def traveller_move(
    g: StaticGraph,
    table: PiTable,
    u,
    blocked_before: int,
    newly_blocked: Mapping[tuple, int],
) -> StaticEdge:
    """Pick the surviving arc out of u minimizing cost-from-head plus weight.

    blocked_before counts copies seen blocked at earlier vertices;
    newly_blocked maps arc key -> copies just revealed blocked at u. The
    relevant budget index is what Blocker has left after both.
    """
    m2 = sum(newly_blocked.values())
    i = table.budget - blocked_before - m2
    if i < 0:
        raise ValueError("observed blocks exceed the blocker budget")
    best = None
    best_key = None
    for e in sorted(g.outgoing(u), key=lambda a: a.key):
        if e.copies - newly_blocked.get(e.key, 0) < 1:
            continue
        cand = table.value(e.v, i) + e.weight
        if best_key is None or cand < best:
            best, best_key = cand, e
    if best_key is None or best == UNREACHABLE:
        raise NoSafeMoveError(f"no arc out of {u!r} keeps a finite guarantee")
    return best_key


def blocker_move(g: StaticGraph, table: PiTable, u, remaining: int) -> dict:
    """Arc copies to block at u: maximizes the survivor Traveller is forced to.

    Returns {arc key: copies blocked}; empty when blocking does not help.
    Ties between block sizes go to the smaller (cheaper) one.
    """
    if not 0 <= remaining <= table.budget:
        raise ValueError(f"remaining budget {remaining} outside 0..{table.budget}")
    out = sorted(g.outgoing(u), key=lambda a: a.key)
    best_m, best_val = 0, None
    per_m: dict[int, list] = {}
    for m in range(remaining + 1):
        cands = []
        for idx, e in enumerate(out):
            val = table.value(e.v, remaining - m) + e.weight
            for copy in range(min(e.copies, remaining + 1)):
                cands.append((val, idx, copy, e))
        cands.sort(key=lambda c: c[:3])
        per_m[m] = cands
        val = cands[m][0] if m < len(cands) else UNREACHABLE
        if best_val is None or val > best_val:
            best_m, best_val = m, val
    blocked: dict = {}
    for val, idx, copy, e in per_m[best_m][:best_m]:
        blocked[e.key] = blocked.get(e.key, 0) + 1
    return blocked


def brute_dag_game(
    g: StaticGraph,
    s,
    t,
    budget: int,
    groups: Optional[BlockGroups] = None,
    per_vertex_limit: int | None = 20,
    unlimited: bool = False,
):
    """Exact game value by exhaustive search over reveal histories.

    The information state is the set of block decisions made so far (one per
    group, fixed on first reveal); Blocker enumerates every legal count
    vector, budget permitting. Intended for small cross-check instances; the
    per-vertex information-state guard trips otherwise unless unlimited.
    """
    for x in (s, t):
        if x not in g.index:
            raise ValueError(f"unknown vertex {x!r}")
    topological_order(g)  # validates acyclicity
    grp = _groups_or_identity(g, groups)
    out_arcs = {v: sorted(g.outgoing(v), key=lambda a: a.key) for v in g.vertices}
    memo: dict = {}
    states_per_vertex: dict = {}

    def reveal_vectors(gids, rem, decided):
        """All ways to fix blocked counts for the given undecided groups."""
        if not gids:
            yield decided
            return
        gid, rest = gids[0], gids[1:]
        cap = min(grp.group_copies[gid], rem)
        for c in range(cap + 1):
            yield from reveal_vectors(rest, rem - c, decided + ((gid, c),))

    def value(v, decided: tuple):
        if v == t:
            return 0
        key = (v, decided)
        if key in memo:
            return memo[key]
        if not unlimited and per_vertex_limit is not None:
            n = states_per_vertex.get(v, 0) + 1
            if n > per_vertex_limit:
                raise SizeLimitError(
                    f"more than {per_vertex_limit} information states at {v!r}",
                    per_vertex_limit,
                )
            states_per_vertex[v] = n
        dmap = dict(decided)
        spent = sum(dmap.values())
        undecided = []
        seen = set()
        for e in out_arcs[v]:
            gid = grp.group_of(e)
            if gid not in dmap and gid not in seen:
                seen.add(gid)
                undecided.append(gid)
        worst = None
        for new_decided in reveal_vectors(tuple(undecided), budget - spent, decided):
            ndmap = dict(new_decided)
            ordered = tuple(sorted(new_decided))
            best = UNREACHABLE
            for e in out_arcs[v]:
                if e.copies - ndmap.get(grp.group_of(e), 0) < 1:
                    continue
                sub = e.weight + value(e.v, ordered)
                if sub < best:
                    best = sub
            if worst is None or best > worst:
                worst = best
            if worst == UNREACHABLE:
                break
        return memo.setdefault(key, worst if worst is not None else UNREACHABLE)

    return value(s, ())
