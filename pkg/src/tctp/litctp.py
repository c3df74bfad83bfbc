"""Locally-informed temporal game: statuses of every edge incident to a
vertex surface on first arrival there, future departures included.

``solve_k1`` decides the single-block case in polynomial time with a
Dijkstra-like pass over latest-safe-departure values. ``exact_li`` decides
any budget by memoized minimax over knowledge states and yields playable
strategies for both sides.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple, Union

from .core import Instance, TemporalGraph, TimeEdge
from .errors import SizeLimitError

NEVER = -math.inf


@dataclass(frozen=True)
class LiInfoState:
    """Everything the walking player knows mid-game.

    ``decided`` maps edge keys to blocked-copy counts and covers exactly the
    edges incident to ``visited`` vertices; ``budget_used`` is the sum of its
    values. Statuses are immutable once recorded.
    """

    position: str
    clock: int
    decided: Mapping[tuple, int]
    visited: frozenset
    budget_used: int

    @property
    def spent(self) -> int:
        return self.budget_used


def latest_departure_labels(
    g: TemporalGraph, t, deadline=math.inf, skip_one: Optional[tuple] = None
) -> dict:
    """Latest time one can leave each vertex and still reach t by the deadline.

    Plain reachability, no adversary. skip_one names an edge key with one
    copy removed; removal only matters when that key has a single copy.
    A single pass over edges in decreasing tau order suffices: consecutive
    walk edges have strictly increasing tau (d >= 1), so the label a step
    relies on is final before the step's own edge is processed.
    """
    if t not in g.index:
        raise ValueError(f"unknown target vertex {t!r}")
    labels = {v: NEVER for v in g.vertices}
    labels[t] = deadline
    for e in sorted(g.edges, key=lambda e: (-e.tau, e.key)):
        if skip_one == e.key and e.copies == 1:
            continue
        if e.tau + e.d <= labels[e.v] and e.tau > labels[e.u]:
            labels[e.u] = e.tau
        if e.tau + e.d <= labels[e.u] and e.tau > labels[e.v]:
            labels[e.v] = e.tau
    labels[t] = deadline
    return labels


def compute_mu(g: TemporalGraph, t, T, v, e: Union[TimeEdge, tuple]):
    """Latest departure from v reaching t by T when one copy of e is blocked."""
    key = e.key if isinstance(e, TimeEdge) else tuple(e)
    if key not in g.by_key:
        raise ValueError(f"edge {key} not in graph")
    if v not in (key[0], key[1]):
        raise ValueError(f"edge {key} is not incident to {v!r}")
    return latest_departure_labels(g, t, T, skip_one=key)[v]


@dataclass(frozen=True)
class Pi1Table:
    """Output of the single-block solver.

    pi1[v] is the latest time Traveller may stand at v and still win against
    one blocked copy; nu1 and mu are the auxiliary quantities (best settled
    through-edge departure, and per-(vertex, incident edge) fallbacks) it was
    assembled from. order records the settling sequence.
    """

    pi1: Mapping[object, float]
    nu1: Mapping[object, float]
    mu: Mapping[tuple, float]
    lam1: Mapping[object, float]
    deadline: float
    order: tuple

    def latest_safe(self, v):
        return self.pi1[v]


@dataclass
class K1Result:
    wins: bool
    table: Pi1Table
    instance: Instance

    def __bool__(self) -> bool:
        return self.wins


def solve_k1(inst: Instance, T=None) -> K1Result:
    """Decide the locally-informed game for budget one.

    pi1 combines two guarantees: lam1(v), the worst case over which single
    incident edge turns out blocked (each answered by plain latest-departure
    routing on the graph missing that copy), and nu1(v), the best departure
    over edges into already-settled vertices u arriving by pi1(u). Vertices
    settle in order of decreasing pi1 = min(lam1, nu1). Traveller wins iff
    standing at s at time 0 is safe, i.e. pi1(s) >= 0.
    """
    g = inst.graph
    if not isinstance(g, TemporalGraph):
        raise ValueError("locally-informed solver needs a temporal instance")
    if inst.k != 1:
        raise ValueError(f"single-block solver got k={inst.k}")
    if T is None:
        T = inst.deadline if inst.deadline is not None else math.inf

    base = latest_departure_labels(g, inst.t, T)
    cache = {
        e.key: latest_departure_labels(g, inst.t, T, skip_one=e.key)
        for e in g.edges
        if e.copies == 1
    }
    mu: Dict[tuple, float] = {}
    lam1: Dict[object, float] = {}
    for v in g.vertices:
        if v == inst.t:
            continue
        vals = []
        for e in g.incident(v):
            m = cache[e.key][v] if e.copies == 1 else base[v]
            mu[(v, e.key)] = m
            vals.append(m)
        lam1[v] = min(vals) if vals else math.inf

    pi1: Dict[object, float] = {inst.t: T}
    nu: Dict[object, float] = {v: NEVER for v in g.vertices if v != inst.t}
    for e in g.incident(inst.t):
        other = e.other(inst.t)
        if e.tau + e.d <= T and e.tau > nu[other]:
            nu[other] = e.tau
    order = [inst.t]
    unsettled = set(nu)
    while unsettled:
        best_v, best_val = None, None
        for v in sorted(unsettled):
            val = min(lam1[v], nu[v])
            if best_v is None or val > best_val:
                best_v, best_val = v, val
        unsettled.discard(best_v)
        pi1[best_v] = best_val
        order.append(best_v)
        for e in g.incident(best_v):
            other = e.other(best_v)
            if other in unsettled and e.tau + e.d <= best_val and e.tau > nu[other]:
                nu[other] = e.tau
    table = Pi1Table(pi1, nu, mu, lam1, T, tuple(order))
    return K1Result(pi1[inst.s] >= 0, table, inst)


def k1_traveller_policy(result: K1Result):
    """Arena policy following the single-block certificate.

    While no block has been seen, move along any edge arriving in time for
    the head's pi1; once the blocked copy is known, switch to plain
    latest-departure routing on the remaining graph.
    """
    inst = result.instance
    g = inst.graph
    table = result.table
    plain_cache: dict = {}

    def labels_after(key):
        if key not in plain_cache:
            plain_cache[key] = latest_departure_labels(
                g, inst.t, table.deadline, skip_one=key
            )
        return plain_cache[key]

    def policy(view):
        pos, clock = view.position, view.clock
        blocked = [k for k, c in view.decided.items() if c > 0]
        if blocked:
            labels = labels_after(blocked[0])
            target_of = labels
        else:
            target_of = table.pi1
        best = None
        for e in sorted(g.incident(pos), key=lambda e: (e.tau + e.d, e.key)):
            if e.copies - view.decided.get(e.key, 0) < 1:
                continue
            if e.tau < clock:
                continue
            if e.tau + e.d <= target_of[e.other(pos)]:
                best = e
                break
        if best is None:
            return ("resign",)
        return ("move", best.key)

    return policy


class LiGame:
    """Memoized minimax search over locally-informed knowledge states.

    A state is (position, clock, decided) where decided maps every edge key
    incident to a visited vertex to its blocked-copy count -- zero counts are
    knowledge too and stay in the state. On arrival at an unvisited vertex,
    Blocker fixes the undecided incident keys. Two prunings keep this exact:
    partially blocking a key is dominated by not blocking it (the key stays
    crossable either way and never gets re-decided, so the spent budget buys
    nothing), and keys costlier than the remaining budget can only be left
    unblocked. Clocks are snapped to the next feasible departure so states
    between events collapse.
    """

    def __init__(self, inst: Instance, t1=0, t2=None, state_limit: int = 10**7):
        g = inst.graph
        if not isinstance(g, TemporalGraph):
            raise ValueError("locally-informed solver needs a temporal instance")
        if t2 is None:
            t2 = inst.deadline if inst.deadline is not None else math.inf
        if t1 > t2:
            raise ValueError(f"bad window [{t1}, {t2}]")
        self.inst = inst
        self.g = g
        self.t1, self.t2 = t1, t2
        self.state_limit = state_limit
        self.memo: dict = {}
        self.incident = {
            v: sorted(g.incident(v), key=lambda e: (e.tau, e.key)) for v in g.vertices
        }

    def _options(self, pos, clock, decided):
        out = []
        for e in self.incident[pos]:
            if e.tau < clock or e.tau + e.d > self.t2:
                continue
            if e.copies - decided[e.key] >= 1:
                out.append(e)
        return out

    def traveller_wins(self, pos, clock, decided: dict) -> bool:
        """Post-reveal: every key incident to pos is present in decided."""
        if pos == self.inst.t:
            return True
        options = self._options(pos, clock, decided)
        if not options:
            return False
        snap = options[0].tau
        key = (pos, snap, tuple(sorted(decided.items())))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if len(self.memo) >= self.state_limit:
            raise SizeLimitError(
                f"memoized state count exceeded {self.state_limit}", self.state_limit
            )
        self.memo[key] = False  # cycle guard; clock strictly increases anyway
        win = any(
            self.reveal_wins(e.other(pos), e.tau + e.d, decided) for e in options
        )
        self.memo[key] = win
        return win

    def reveal_wins(self, v, arrive, decided: dict) -> bool:
        """Blocker to fix statuses of v's undecided incident keys."""
        for choice in self.reveal_choices(v, decided):
            if not self.traveller_wins(v, arrive, choice):
                return False
        return True

    def reveal_choices(self, v, decided: dict):
        """All undominated reveals, nothing-blocked first, then by cost."""
        undecided = [e for e in self.incident[v] if e.key not in decided]
        remaining = self.inst.k - sum(decided.values())
        blockable = [e for e in undecided if e.copies <= remaining]
        base = dict(decided)
        for e in undecided:
            base[e.key] = 0
        subsets = []
        for mask in range(1 << len(blockable)):
            total = sum(
                blockable[i].copies for i in range(len(blockable)) if mask >> i & 1
            )
            if total <= remaining:
                subsets.append((total, mask))
        subsets.sort()
        for total, mask in subsets:
            choice = dict(base)
            for i in range(len(blockable)):
                if mask >> i & 1:
                    choice[blockable[i].key] = blockable[i].copies
            yield choice


@dataclass
class LiResult:
    wins: bool
    game: LiGame = field(repr=False)

    def __bool__(self) -> bool:
        return self.wins

    @property
    def states(self) -> int:
        return len(self.game.memo)

    def traveller_policy(self):
        game = self.game

        def policy(view):
            decided = dict(view.decided)
            for e in game.incident[view.position]:
                decided.setdefault(e.key, 0)
            options = game._options(view.position, view.clock, decided)
            for e in options:
                if game.reveal_wins(e.other(view.position), e.tau + e.d, decided):
                    return ("move", e.key)
            return ("resign",)

        return policy

    def blocker_policy(self):
        game = self.game

        def policy(view):
            for choice in game.reveal_choices(view.position, dict(view.decided)):
                if not game.traveller_wins(view.position, view.clock, choice):
                    return {
                        k: c
                        for k, c in choice.items()
                        if k not in view.decided and c > 0
                    }
            return {}

        return policy


def exact_li(
    inst: Instance,
    t1=0,
    t2=None,
    state_limit: int = 10**7,
) -> LiResult:
    """Exact decision of the locally-informed game for any budget.

    Traveller departs no sooner than t1 and must reach t by t2 (t2 defaults
    to the instance deadline, else unbounded). Returns a result exposing
    playable strategies for both sides.
    """
    game = LiGame(inst, t1, t2, state_limit)
    wins = game.reveal_wins(inst.s, game.t1, {})
    return LiResult(wins, game)
