"""Uninformed temporal game: blocked copies surface only at departure time.

Blocker reveals the status of a time edge exactly when Traveller stands at
one of its endpoints at its departure time. Deciding a window reduces to
finite-budget reachability on the time expansion; the optimizers scan event
times, and ``brute_u_game`` replays the game definition directly on
tiny instances as an independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .core import Instance, TemporalGraph, lifespan
from .dagctp import UNREACHABLE, PiTable, compute_pi
from .errors import SizeLimitError
from .expansion import ExpandedDag, build_expansion


@dataclass
class UDecision:
    wins: bool
    t1: int
    t2: Union[int, float]
    guaranteed_arrival: Union[int, float]
    expansion: ExpandedDag
    table: PiTable

    def __bool__(self) -> bool:
        return self.wins


def decide_u(
    inst: Instance, t1: int = 0, t2: Union[int, float, None] = None
) -> UDecision:
    """Can Traveller guarantee reaching t, departing no sooner than t1 and
    arriving by t2, against up to k blocked copies revealed at departure time?
    """
    g = inst.graph
    if not isinstance(g, TemporalGraph):
        raise ValueError("uninformed solver needs a temporal instance")
    if t2 is None:
        t2 = inst.deadline if inst.deadline is not None else math.inf
    xd = build_expansion(g, inst.s, inst.t, inst.k, t1, t2)
    table = compute_pi(xd.graph, xd.target, inst.k, xd.groups)
    cost = table.value(xd.source, inst.k)
    wins = cost != UNREACHABLE
    return UDecision(wins, t1, t2, t1 + cost if wins else UNREACHABLE, xd, table)


def earliest_arrival(inst: Instance) -> Optional[int]:
    """Least t2 with a (0, t2) win; None when no window works."""
    if inst.s == inst.t:
        return 0
    g = inst.graph
    for t2 in sorted({e.arrival for e in g.edges}):
        if decide_u(inst, 0, t2).wins:
            return t2
    return None


def latest_departure(inst: Instance) -> Union[int, float, None]:
    """Greatest t1 with a (t1, infinity) win; +inf when s = t, else None if none."""
    if inst.s == inst.t:
        return math.inf
    g = inst.graph
    for t1 in sorted({e.tau for e in g.edges}, reverse=True):
        if decide_u(inst, t1, math.inf).wins:
            return t1
    return None


def shortest_duration(inst: Instance) -> Optional[tuple]:
    """Window (t1, t2) of least width that wins; ties prefer the earlier t1."""
    if inst.s == inst.t:
        return (0, 0)
    g = inst.graph
    departures = sorted({e.tau for e in g.edges})
    arrivals = sorted({e.arrival for e in g.edges})
    best = None
    for t1 in departures:
        for t2 in arrivals:
            if t2 < t1:
                continue
            if best is not None and t2 - t1 >= best[0]:
                break
            if decide_u(inst, t1, t2).wins:
                best = (t2 - t1, t1, t2)
                break
    return (best[1], best[2]) if best else None


def brute_u_game(
    inst: Instance,
    t1: int = 0,
    t2: Union[int, float, None] = None,
    override: bool = False,
) -> bool:
    """Direct game-tree evaluation of the uninformed game (oracle).

    Blocker enumerates every legal count vector over the edges departing from
    Traveller's position at each event time. Guarded to tiny instances
    (<= 6 vertices, lifespan <= 6, k <= 2) unless override is set.
    """
    g = inst.graph
    if not isinstance(g, TemporalGraph):
        raise ValueError("uninformed solver needs a temporal instance")
    if t2 is None:
        t2 = inst.deadline if inst.deadline is not None else math.inf
    if t1 < 0 or t1 > t2:
        raise ValueError(f"bad window [{t1}, {t2}]")
    if not override and (
        len(g.vertices) > 6 or lifespan(g) > 6 or inst.k > 2
    ):
        raise SizeLimitError(
            "instance too large for the brute-force oracle (override to force)"
        )

    window = [e for e in g.edges if t1 <= e.tau and e.tau + e.d <= t2]
    incident: dict = {v: [] for v in g.vertices}
    for e in window:
        incident[e.u].append(e)
        incident[e.v].append(e)

    def next_event(v, time):
        times = [e.tau for e in incident[v] if e.tau >= time]
        return min(times) if times else None

    memo: dict = {}

    def vectors(edges, cap):
        if not edges:
            yield ()
            return
        e, rest = edges[0], edges[1:]
        for c in range(min(e.copies, cap) + 1):
            for tail in vectors(rest, cap - c):
                yield (c,) + tail

    def win(v, arrive, rem) -> bool:
        if v == inst.t:
            return True
        tau = next_event(v, arrive)
        if tau is None:
            return False
        key = (v, tau, rem)
        if key in memo:
            return memo[key]
        departing = sorted(
            (e for e in incident[v] if e.tau == tau), key=lambda e: e.key
        )
        result = True
        for vec in vectors(departing, rem):
            spent = sum(vec)
            ok = win(v, tau + 1, rem - spent)  # wait out this instant
            if not ok:
                for e, blocked in zip(departing, vec):
                    if blocked < e.copies and win(e.other(v), tau + e.d, rem - spent):
                        ok = True
                        break
            if not ok:
                result = False
                break
        memo[key] = result
        return result

    return win(inst.s, t1, inst.k)
