"""Referee running Traveller-vs-Blocker policies, with exhaustive verification.

``play`` referees a single game under one of four information models and
returns a Transcript. Policies are plain callables from a view of the
current knowledge state to an action; an illegal output becomes a FOUL
event that awards the game to the opponent instead of raising.

``verify_traveller_strategy`` replaces the Blocker with an exhaustive
adversary trying every legal count vector at every reveal, and either
certifies that the Traveller policy wins within the deadline or produces a
losing transcript. It assumes the policy is a pure function of its view.

Models:
  "li"      temporal graph; all edges incident to a vertex are decided at the
            Traveller's first arrival there.
  "u"       temporal graph; edges departing the Traveller's position at the
            current instant are decided right before the Traveller acts.
  "static"  weighted graph; edges incident to a vertex are decided at first
            arrival, the clock is accumulated weight.
  "dag"     directed weighted graph; like "static" but only out-arcs are
            decided on arrival.

Traveller actions: ("move", edge_key), ("wait", until) on temporal models,
("resign",). A wait is a commitment, interrupted early only when new
statuses would be revealed before ``until``; a policy wanting to re-decide
every instant can simply wait one step at a time.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .core import Instance, StaticGraph, TemporalGraph, TimeEdge
from .dagctp import PiTable, blocker_move, compute_pi, traveller_move
from .errors import NoSafeMoveError, SizeLimitError
from .litctp import LiInfoState, exact_li
from .staticctp import StaticGame, static_blocker_policy, static_traveller_policy
from .utctp import decide_u

TRAVELLER_WIN = "TRAVELLER_WIN"
BLOCKER_WIN = "BLOCKER_WIN"
MODELS = ("li", "u", "static", "dag")

Policy = Callable


# ---------------------------------------------------------------------------
# views handed to policies


@dataclass(frozen=True)
class BlockerView:
    """What Blocker sees when asked to fix statuses.

    ``undecided`` lists the edge keys whose statuses are being fixed right
    now; anything the returned mapping leaves out is recorded as unblocked.
    ``clock`` is accumulated cost in the static models.
    """

    position: object
    clock: object
    decided: Mapping
    undecided: tuple
    remaining: int
    spent: int
    inst: Instance
    t1: int = 0
    t2: object = None


@dataclass(frozen=True)
class LiView(LiInfoState):
    inst: Instance = None
    t1: int = 0
    t2: object = None


@dataclass(frozen=True)
class UView:
    """Traveller knowledge in the per-instant reveal model."""

    position: str
    clock: int
    decided: Mapping
    spent: int
    inst: Instance
    t1: int = 0
    t2: object = None


@dataclass(frozen=True)
class StaticView:
    position: object
    cost: int
    decided: Mapping
    spent: int
    inst: Instance
    deadline: object = None


# ---------------------------------------------------------------------------
# transcripts


@dataclass
class Transcript:
    """Full record of one playout.

    Events are dicts with a "type" field: REVEAL {at, clock, statuses},
    MOVE {key, depart, arrive}, WAIT {at, until}, RESIGN {by},
    FOUL {by, reason}. ``final_time`` is the clock (cost) when the game
    ended; ``t2`` doubles as the deadline for the static models.
    """

    model: str
    s: object
    t: object
    k: int
    events: tuple
    outcome: str
    final_time: object
    budget_spent: int
    t1: int = 0
    t2: object = None

    def __bool__(self) -> bool:
        return self.outcome == TRAVELLER_WIN

    def moves(self) -> tuple:
        return tuple(e for e in self.events if e["type"] == "MOVE")

    def to_json_lines(self) -> str:
        head = {"model": self.model, "s": self.s, "t": self.t, "k": self.k,
                "t1": self.t1, "t2": self.t2}
        lines = [json.dumps(head, sort_keys=True)]
        for ev in self.events:
            lines.append(json.dumps(_jsonable(ev), sort_keys=True))
        foot = {"outcome": self.outcome, "final_time": self.final_time,
                "budget_spent": self.budget_spent}
        lines.append(json.dumps(foot, sort_keys=True))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json_lines(cls, text: str) -> "Transcript":
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        if len(rows) < 2:
            raise ValueError("transcript needs a header and a footer line")
        head, foot = rows[0], rows[-1]
        events = tuple(_tupled_event(ev) for ev in rows[1:-1])
        t2 = head.get("t2")
        return cls(
            model=head["model"], s=head["s"], t=head["t"], k=head["k"],
            events=events, outcome=foot["outcome"],
            final_time=foot["final_time"], budget_spent=foot["budget_spent"],
            t1=head.get("t1", 0), t2=t2,
        )


def _jsonable(ev: dict) -> dict:
    out = dict(ev)
    if "key" in out:
        out["key"] = list(out["key"])
    if "statuses" in out:
        out["statuses"] = [[list(k), c] for k, c in out["statuses"]]
    return out


def _tupled_event(ev: dict) -> dict:
    out = dict(ev)
    if "key" in out:
        out["key"] = tuple(out["key"])
    if "statuses" in out:
        out["statuses"] = tuple((tuple(k), c) for k, c in out["statuses"])
    return out


def _script_points(tr: Transcript):
    """Walk a transcript reconstructing the knowledge state at each consult.

    Yields (side, position, clock, frozen decided, payload); payload is the
    action for the traveller side, the statuses mapping for the blocker side.
    """
    pos, clock = tr.s, tr.t1
    decided: dict = {}
    for ev in tr.events:
        kind = ev["type"]
        if kind == "REVEAL":
            yield ("blocker", pos, clock, _frozen(decided), dict(ev["statuses"]))
            for key, c in ev["statuses"]:
                decided[key] = c
        elif kind == "MOVE":
            yield ("traveller", pos, clock, _frozen(decided), ("move", ev["key"]))
            u, v = ev["key"][0], ev["key"][1]
            pos = v if pos == u else u
            clock = ev["arrive"]
        elif kind == "WAIT":
            yield ("traveller", pos, clock, _frozen(decided), ("wait", ev["until"]))
            clock = ev["until"]
        elif kind == "RESIGN" and ev.get("by", "traveller") == "traveller":
            yield ("traveller", pos, clock, _frozen(decided), ("resign",))


def _view_clock(view):
    return view.clock if hasattr(view, "clock") else view.cost


def transcript_traveller_policy(tr: Transcript) -> Policy:
    """Pure replay: repeat the transcript's action in each knowledge state.

    Off the recorded line (for example against a Blocker that deviates) the
    policy resigns.
    """
    script = {(p, c, d): payload for side, p, c, d, payload in _script_points(tr)
              if side == "traveller"}

    def policy(view):
        key = (view.position, _view_clock(view), _frozen(view.decided))
        return script.get(key, ("resign",))

    return policy


def transcript_blocker_policy(tr: Transcript) -> Policy:
    """Pure replay of the recorded reveals; blocks nothing off-script."""
    script = {(p, c, d): payload for side, p, c, d, payload in _script_points(tr)
              if side == "blocker"}

    def policy(view):
        key = (view.position, view.clock, _frozen(view.decided))
        return script.get(key, {})

    return policy


def scripted_blocker(choices) -> Policy:
    """Blocker that plays a fixed list of reveal choices, then all-zeros."""
    cursor = iter(list(choices))

    def policy(view):
        return next(cursor, {})

    return policy


# ---------------------------------------------------------------------------
# shared referee pieces


def _frozen(decided: Mapping) -> tuple:
    return tuple(sorted(decided.items()))


def _li_scope(g: TemporalGraph, pos, decided) -> list:
    return sorted((e for e in g.incident(pos) if e.key not in decided),
                  key=lambda e: e.key)


def _u_scope(g: TemporalGraph, pos, clock, decided) -> list:
    return sorted(
        (e for e in g.incident(pos) if e.tau == clock and e.key not in decided),
        key=lambda e: e.key,
    )


def _static_scope(g: StaticGraph, pos, decided, model: str) -> list:
    edges = g.outgoing(pos) if model == "dag" else g.incident(pos)
    return sorted((e for e in edges if e.key not in decided),
                  key=lambda e: e.key)


def _check_choice(scope, choice, remaining: int) -> Optional[str]:
    """None when legal, else a human-readable foul reason."""
    if not isinstance(choice, Mapping):
        return f"reveal must be a mapping, got {type(choice).__name__}"
    caps = {e.key: e.copies for e in scope}
    total = 0
    for key, c in choice.items():
        if key not in caps:
            return f"status for {key!r} which is not up for reveal"
        if not isinstance(c, int) or isinstance(c, bool) or c < 0:
            return f"bad copy count {c!r} for {key!r}"
        if c > caps[key]:
            return f"{c} blocked copies of {key!r} but only {caps[key]} exist"
        total += c
    if total > remaining:
        return f"blocking {total} copies with only {remaining} budget left"
    return None


def _apply_choice(decided: dict, scope, choice) -> tuple:
    """Record the choice (zeros for unmentioned keys); returns sorted statuses."""
    statuses = []
    for e in scope:
        c = int(choice.get(e.key, 0))
        decided[e.key] = c
        statuses.append((e.key, c))
    return tuple(statuses)


def _choices(scope, remaining: int):
    """Every legal count vector over the scope, all-zeros first.

    Deliberately naive: partially blocking a key is enumerated too, so a
    solver that prunes dominated reveals is checked against the full rule.
    """

    def rec(i, left, acc):
        if i == len(scope):
            yield dict(acc)
            return
        e = scope[i]
        for c in range(min(e.copies, left) + 1):
            acc[e.key] = c
            yield from rec(i + 1, left - c, acc)
        del acc[e.key]

    yield from rec(0, remaining, {})


def _horizon(g: TemporalGraph, t1: int, t2) -> int:
    if t2 != math.inf:
        return t2
    return max((e.arrival for e in g.edges), default=t1)


_MISS = object()


class _Foul(Exception):
    def __init__(self, by: str, reason: str):
        self.by = by
        self.reason = reason


def _take_action(act, by: str = "traveller"):
    """Normalize a policy output; raises _Foul on garbage."""
    if not isinstance(act, tuple) or not act:
        raise _Foul(by, f"action must be a nonempty tuple, got {act!r}")
    kind = act[0]
    if kind == "resign" and len(act) == 1:
        return ("resign",)
    if kind == "move" and len(act) == 2:
        return act
    if kind == "wait" and len(act) == 2:
        return act
    raise _Foul(by, f"unrecognized action {act!r}")


# ---------------------------------------------------------------------------
# the referee


def play(
    inst: Instance,
    traveller_policy: Policy,
    blocker_policy: Policy,
    model: str,
    t1: int = 0,
    t2=None,
) -> Transcript:
    """Referee one game; never raises on bad policy output (FOUL instead).

    For temporal models the window is [t1, t2] (t2 defaults to the instance
    deadline, else unbounded). For static models t2 acts as the deadline and
    t1 must stay 0.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    if model in ("li", "u"):
        if not isinstance(inst.graph, TemporalGraph):
            raise ValueError(f"model {model!r} needs a temporal instance")
        return _play_temporal(inst, traveller_policy, blocker_policy, model, t1, t2)
    if not isinstance(inst.graph, StaticGraph):
        raise ValueError(f"model {model!r} needs a weighted-graph instance")
    if model == "dag" and not inst.graph.directed:
        raise ValueError("model 'dag' needs a directed graph")
    if t1 != 0:
        raise ValueError("static models start at cost 0; t1 must be 0")
    return _play_static(inst, traveller_policy, blocker_policy, model, t2)


def _play_temporal(inst, tp, bp, model, t1, t2) -> Transcript:
    g = inst.graph
    if t2 is None:
        t2 = inst.deadline if inst.deadline is not None else math.inf
    if t1 < 0 or t1 > t2:
        raise ValueError(f"bad window [{t1}, {t2}]")
    horizon = _horizon(g, t1, t2)
    pos, clock, spent = inst.s, t1, 0
    decided: dict = {}
    visited: set = set()
    events: list = []

    def done(outcome):
        bound = None if t2 == math.inf else t2
        return Transcript(model, inst.s, inst.t, inst.k, tuple(events),
                          outcome, clock, spent, t1, bound)

    while True:
        if pos == inst.t:
            return done(TRAVELLER_WIN if clock <= t2 else BLOCKER_WIN)
        if clock > horizon:
            return done(BLOCKER_WIN)

        if model == "li":
            scope = [] if pos in visited else _li_scope(g, pos, decided)
            visited.add(pos)
        else:
            scope = _u_scope(g, pos, clock, decided)
        if scope:
            bview = BlockerView(pos, clock, dict(decided),
                                tuple(e.key for e in scope),
                                inst.k - spent, spent, inst, t1, t2)
            choice = bp(bview)
            reason = _check_choice(scope, choice, inst.k - spent)
            if reason is not None:
                events.append({"type": "FOUL", "by": "blocker", "reason": reason})
                return done(TRAVELLER_WIN)
            statuses = _apply_choice(decided, scope, choice)
            spent += sum(c for _, c in statuses)
            events.append({"type": "REVEAL", "at": pos, "clock": clock,
                           "statuses": statuses})

        if model == "li":
            view = LiView(position=pos, clock=clock, decided=dict(decided),
                          visited=frozenset(visited), budget_used=spent,
                          inst=inst, t1=t1, t2=t2)
        else:
            view = UView(position=pos, clock=clock, decided=dict(decided),
                         spent=spent, inst=inst, t1=t1, t2=t2)
        try:
            act = _take_action(tp(view))
            if act[0] == "resign":
                events.append({"type": "RESIGN", "by": "traveller"})
                return done(BLOCKER_WIN)
            if act[0] == "move":
                e = _legal_temporal_move(g, pos, clock, decided, act[1], model)
                events.append({"type": "MOVE", "key": e.key,
                               "depart": e.tau, "arrive": e.arrival})
                pos, clock = e.other(pos), e.arrival
            else:
                until = act[1]
                if not isinstance(until, int) or until <= clock:
                    raise _Foul("traveller", f"wait until {until!r} never passes {clock}")
                stop = _wait_stop(g, pos, clock, until, decided, model)
                events.append({"type": "WAIT", "at": pos, "until": stop})
                clock = stop
        except _Foul as f:
            events.append({"type": "FOUL", "by": f.by, "reason": f.reason})
            return done(BLOCKER_WIN if f.by == "traveller" else TRAVELLER_WIN)


def _legal_temporal_move(g, pos, clock, decided, key, model) -> TimeEdge:
    e = g.by_key.get(key)
    if e is None or not e.touches(pos):
        raise _Foul("traveller", f"no edge {key!r} at {pos!r}")
    if model == "u":
        if e.tau != clock:
            raise _Foul("traveller", f"edge {key!r} does not depart at instant {clock}")
    elif e.tau < clock:
        raise _Foul("traveller", f"edge {key!r} departed before time {clock}")
    if e.copies - decided.get(e.key, 0) < 1:
        raise _Foul("traveller", f"no surviving copy of {key!r}")
    return e


def _wait_stop(g, pos, clock, until, decided, model) -> int:
    """Earliest of `until` and the next instant that would reveal something."""
    if model != "u":
        return until
    nxt = min((e.tau for e in g.incident(pos)
               if clock < e.tau <= until and e.key not in decided),
              default=until)
    return nxt


def _play_static(inst, tp, bp, model, t2) -> Transcript:
    g = inst.graph
    deadline = t2 if t2 is not None else inst.deadline
    pos, cost, spent = inst.s, 0, 0
    decided: dict = {}
    visited: set = set()
    seen: set = set()
    events: list = []

    def done(outcome):
        return Transcript(model, inst.s, inst.t, inst.k, tuple(events),
                          outcome, cost, spent, 0, deadline)

    while True:
        if pos == inst.t:
            ok = deadline is None or cost <= deadline
            return done(TRAVELLER_WIN if ok else BLOCKER_WIN)
        if deadline is not None and cost > deadline:
            return done(BLOCKER_WIN)

        if pos not in visited:
            visited.add(pos)
            scope = _static_scope(g, pos, decided, model)
            if scope:
                bview = BlockerView(pos, cost, dict(decided),
                                    tuple(e.key for e in scope),
                                    inst.k - spent, spent, inst, 0, deadline)
                choice = bp(bview)
                reason = _check_choice(scope, choice, inst.k - spent)
                if reason is not None:
                    events.append({"type": "FOUL", "by": "blocker", "reason": reason})
                    return done(TRAVELLER_WIN)
                statuses = _apply_choice(decided, scope, choice)
                spent += sum(c for _, c in statuses)
                events.append({"type": "REVEAL", "at": pos, "clock": cost,
                               "statuses": statuses})

        # same knowledge, same place: the walk is circling, nothing can change
        state = (pos, _frozen(decided))
        if state in seen:
            return done(BLOCKER_WIN)
        seen.add(state)

        view = StaticView(position=pos, cost=cost, decided=dict(decided),
                          spent=spent, inst=inst, deadline=deadline)
        try:
            act = _take_action(tp(view))
            if act[0] == "resign":
                events.append({"type": "RESIGN", "by": "traveller"})
                return done(BLOCKER_WIN)
            if act[0] == "wait":
                raise _Foul("traveller", "waiting is not a move in the static game")
            e = _legal_static_move(g, pos, decided, act[1])
            events.append({"type": "MOVE", "key": e.key,
                           "depart": cost, "arrive": cost + e.weight})
            cost += e.weight
            pos = e.v if g.directed else e.other(pos)
        except _Foul as f:
            events.append({"type": "FOUL", "by": f.by, "reason": f.reason})
            return done(BLOCKER_WIN if f.by == "traveller" else TRAVELLER_WIN)


def _legal_static_move(g, pos, decided, key):
    candidates = {e.key: e for e in g.outgoing(pos)}
    e = candidates.get(key)
    if e is None:
        raise _Foul("traveller", f"no edge {key!r} usable from {pos!r}")
    if e.copies - decided.get(e.key, 0) < 1:
        raise _Foul("traveller", f"no surviving copy of {key!r}")
    return e


# ---------------------------------------------------------------------------
# exhaustive verification


@dataclass
class VerifyResult:
    ok: bool
    counterexample: Optional[Transcript]
    explored: int = 0

    def __bool__(self) -> bool:
        return self.ok


def verify_traveller_strategy(
    inst: Instance,
    traveller_policy: Policy,
    model: str,
    deadline=None,
    t1: int = 0,
    limit: int = 200_000,
    unlimited: bool = False,
) -> VerifyResult:
    """Does the policy beat every Blocker line within the deadline?

    Enumerates every legal reveal (all count vectors, partial blocks
    included) and follows the policy's deterministic replies. On failure the
    losing Blocker script is replayed through ``play`` so the counterexample
    is an ordinary transcript. Raises SizeLimitError beyond ``limit``
    explored reveal states unless ``unlimited``.
    """
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}")
    v = _Verifier(inst, traveller_policy, model, deadline, t1, limit, unlimited)
    script = v.refute()
    if script is None:
        return VerifyResult(True, None, v.explored)
    tr = play(inst, traveller_policy, scripted_blocker(script), model,
              t1=t1, t2=v.bound)
    assert tr.outcome == BLOCKER_WIN, "verifier and referee disagree"
    return VerifyResult(False, tr, v.explored)


class _Verifier:
    """Min-max over Blocker choices with the Traveller side fixed.

    ``refute`` returns None when the policy always wins, else the list of
    reveal choices (in consult order) forcing a loss. Memoized on the
    knowledge state at each reveal; sound because policies see nothing
    beyond their view.
    """

    def __init__(self, inst, tp, model, deadline, t1, limit, unlimited):
        self.inst = inst
        self.g = inst.graph
        self.tp = tp
        self.model = model
        self.t1 = t1
        self.limit = limit
        self.unlimited = unlimited
        self.explored = 0
        self.memo: dict = {}
        if model in ("li", "u"):
            if not isinstance(self.g, TemporalGraph):
                raise ValueError(f"model {model!r} needs a temporal instance")
            if deadline is None:
                deadline = inst.deadline if inst.deadline is not None else math.inf
            self.bound = deadline
            self.horizon = _horizon(self.g, t1, deadline)
        else:
            if not isinstance(self.g, StaticGraph):
                raise ValueError(f"model {model!r} needs a weighted-graph instance")
            self.bound = deadline if deadline is not None else inst.deadline
        self.k = inst.k

    def refute(self) -> Optional[list]:
        if self.model == "li":
            return self._advance_li(self.inst.s, self.t1, {}, 0, frozenset())
        if self.model == "u":
            return self._advance_u(self.inst.s, self.t1, {}, 0)
        return self._advance_static(self.inst.s, 0, {}, 0, frozenset())

    def _bump(self) -> None:
        self.explored += 1
        if not self.unlimited and self.explored > self.limit:
            raise SizeLimitError(
                f"verification explored more than {self.limit} reveal states",
                self.limit,
            )

    def _consult(self, view):
        try:
            act = _take_action(self.tp(view))
        except _Foul:
            return ("resign",)
        return act

    # each _advance_* mirrors the corresponding play loop exactly, except the
    # Blocker side branches over every legal choice instead of one policy call

    def _branch(self, scope, spent, after) -> Optional[list]:
        for choice in _choices(scope, self.k - spent):
            sub = after(choice, spent + sum(choice.values()))
            if sub is not None:
                return [choice] + sub
        return None

    def _advance_li(self, pos, clock, decided, spent, visited) -> Optional[list]:
        g = self.g
        while True:
            if pos == self.inst.t:
                return None if clock <= self.bound else []
            if clock > self.horizon:
                return []
            if pos not in visited:
                visited = visited | {pos}
                scope = _li_scope(g, pos, decided)
                if scope:
                    return self._reveal_li(pos, clock, decided, spent, visited, scope)
            view = LiView(position=pos, clock=clock, decided=dict(decided),
                          visited=visited, budget_used=spent,
                          inst=self.inst, t1=self.t1, t2=self.bound)
            act = self._consult(view)
            if act[0] == "resign":
                return []
            try:
                if act[0] == "move":
                    e = _legal_temporal_move(g, pos, clock, decided, act[1], "li")
                    pos, clock = e.other(pos), e.arrival
                else:
                    until = act[1]
                    if not isinstance(until, int) or until <= clock:
                        return []
                    clock = until
            except _Foul:
                return []

    def _reveal_li(self, pos, clock, decided, spent, visited, scope):
        key = (pos, clock, _frozen(decided), visited)
        hit = self.memo.get(key, _MISS)
        if hit is not _MISS:
            return hit
        self._bump()

        def after(choice, nspent):
            nd = dict(decided)
            _apply_choice(nd, scope, choice)
            return self._advance_li(pos, clock, nd, nspent, visited)

        out = self._branch(scope, spent, after)
        self.memo[key] = out
        return out

    def _advance_u(self, pos, clock, decided, spent) -> Optional[list]:
        g = self.g
        while True:
            if pos == self.inst.t:
                return None if clock <= self.bound else []
            if clock > self.horizon:
                return []
            scope = _u_scope(g, pos, clock, decided)
            if scope:
                return self._reveal_u(pos, clock, decided, spent, scope)
            view = UView(position=pos, clock=clock, decided=dict(decided),
                         spent=spent, inst=self.inst, t1=self.t1, t2=self.bound)
            act = self._consult(view)
            if act[0] == "resign":
                return []
            try:
                if act[0] == "move":
                    e = _legal_temporal_move(g, pos, clock, decided, act[1], "u")
                    pos, clock = e.other(pos), e.arrival
                else:
                    until = act[1]
                    if not isinstance(until, int) or until <= clock:
                        return []
                    clock = _wait_stop(g, pos, clock, until, decided, "u")
            except _Foul:
                return []

    def _reveal_u(self, pos, clock, decided, spent, scope):
        key = (pos, clock, _frozen(decided))
        hit = self.memo.get(key, _MISS)
        if hit is not _MISS:
            return hit
        self._bump()

        def after(choice, nspent):
            nd = dict(decided)
            _apply_choice(nd, scope, choice)
            return self._advance_u(pos, clock, nd, nspent)

        out = self._branch(scope, spent, after)
        self.memo[key] = out
        return out

    def _advance_static(self, pos, cost, decided, spent, path) -> Optional[list]:
        g = self.g
        while True:
            if pos == self.inst.t:
                return None if self.bound is None or cost <= self.bound else []
            if self.bound is not None and cost > self.bound:
                return []
            revealed_here = all(e.key in decided
                                for e in _static_scope(g, pos, {}, self.model))
            if not revealed_here:
                scope = _static_scope(g, pos, decided, self.model)
                return self._reveal_static(pos, cost, decided, spent, scope)
            if pos in path:
                return []
            path = path | {pos}
            view = StaticView(position=pos, cost=cost, decided=dict(decided),
                              spent=spent, inst=self.inst, deadline=self.bound)
            act = self._consult(view)
            if act[0] == "resign":
                return []
            try:
                if act[0] != "move":
                    return []
                e = _legal_static_move(g, pos, decided, act[1])
                cost += e.weight
                pos = e.v if g.directed else e.other(pos)
            except _Foul:
                return []

    def _reveal_static(self, pos, cost, decided, spent, scope):
        key = (pos, cost, _frozen(decided))
        hit = self.memo.get(key, _MISS)
        if hit is not _MISS:
            return hit
        self._bump()

        def after(choice, nspent):
            nd = dict(decided)
            _apply_choice(nd, scope, choice)
            return self._advance_static(pos, cost, nd, nspent, frozenset())

        out = self._branch(scope, spent, after)
        self.memo[key] = out
        return out


# ---------------------------------------------------------------------------
# ready-made policies


def expansion_policies(inst: Instance, t1: int = 0, t2=None) -> tuple:
    """Both sides of the per-instant model, guided by the expansion table."""
    dec = decide_u(inst, t1, t2)
    xd, table = dec.expansion, dec.table
    g = xd.graph

    def newly_at(node, decided) -> dict:
        out = {}
        for arc in g.outgoing(node):
            origin = xd.origins[arc.key]
            if isinstance(origin, TimeEdge):
                c = decided.get(origin.key, 0)
                if c:
                    out[arc.key] = c
        return out

    def traveller(view):
        node = (view.position, view.clock)
        if node not in g.index:
            return ("resign",)
        newly = newly_at(node, view.decided)
        try:
            arc = traveller_move(g, table, node, view.spent - sum(newly.values()),
                                 newly)
        except NoSafeMoveError:
            return ("resign",)
        origin = xd.origins[arc.key]
        if isinstance(origin, TimeEdge):
            return ("move", origin.key)
        return ("wait", arc.v[1])

    def blocker(view):
        node = (view.position, view.clock)
        if node not in g.index:
            return {}
        scope = set(view.undecided)
        out = {}
        for ak, c in blocker_move(g, table, node, view.remaining).items():
            origin = xd.origins[ak]
            if isinstance(origin, TimeEdge) and origin.key in scope:
                out[origin.key] = c
        return out

    return traveller, blocker


def table_policies(inst: Instance, table: Optional[PiTable] = None) -> tuple:
    """Both sides of the directed blocking game, guided by the budget table."""
    g = inst.graph
    if table is None:
        table = compute_pi(g, inst.t, inst.k)

    def traveller(view):
        newly = {}
        for e in g.outgoing(view.position):
            c = view.decided.get(e.key, 0)
            if c:
                newly[e.key] = c
        before = view.spent - sum(newly.values())
        try:
            arc = traveller_move(g, table, view.position, before, newly)
        except NoSafeMoveError:
            return ("resign",)
        return ("move", arc.key)

    def blocker(view):
        scope = set(view.undecided)
        mv = blocker_move(g, table, view.position, view.remaining)
        return {k: c for k, c in mv.items() if k in scope}

    return traveller, blocker


def builtin_policies(inst: Instance, model: str, t1: int = 0, t2=None) -> tuple:
    """(traveller, blocker) pair backed by the matching solver."""
    if model == "li":
        res = exact_li(inst, t1, t2)
        return res.traveller_policy(), res.blocker_policy()
    if model == "u":
        return expansion_policies(inst, t1, t2)
    if model == "static":
        game = StaticGame(inst, discovery="incident")
        return static_traveller_policy(game), static_blocker_policy(game)
    if model == "dag":
        return table_policies(inst)
    raise ValueError(f"unknown model {model!r}")
