"""Locally-informed game: labels, the single-block solver, exact search."""
import math
import random
from types import SimpleNamespace

import pytest

from generators import enumerate_walks, rand_temporal
from tctp.core import Instance, StaticEdge, StaticGraph, TemporalGraph, TimeEdge
from tctp.errors import SizeLimitError
from tctp.litctp import (
    NEVER,
    compute_mu,
    exact_li,
    k1_traveller_policy,
    latest_departure_labels,
    solve_k1,
)
from tctp.samples import separating_instance
from tctp.utctp import decide_u


def _chain(copies):
    return TemporalGraph.build(
        ["s", "a", "t"],
        [
            TimeEdge("s", "a", 0, 1, copies=copies),
            TimeEdge("a", "t", 1, 1, copies=copies),
        ],
    )


# ---------------------------------------------------------------------------
# latest-departure labels


def test_labels_on_a_chain():
    g = _chain(2)
    labels = latest_departure_labels(g, "t")
    assert labels == {"s": 0, "a": 1, "t": math.inf}
    tight = latest_departure_labels(g, "t", deadline=1)
    assert tight == {"s": NEVER, "a": NEVER, "t": 1}
    assert latest_departure_labels(g, "t", deadline=2)["a"] == 1


def _labels_oracle(g, t, deadline, skip=None):
    """Brute restatement: best first departure over all feasible walks."""
    out = {}
    for v in g.vertices:
        if v == t:
            out[v] = deadline
            continue
        best = NEVER
        for verts, steps in enumerate_walks(g, v, 0):
            if verts[-1] != t or not steps:
                continue
            if skip is not None and any(e.key == skip for e, _ in steps):
                continue
            arrival = steps[-1][1] + steps[-1][0].d
            if arrival <= deadline and steps[0][1] > best:
                best = steps[0][1]
        out[v] = best
    return out


def test_labels_match_walk_enumeration():
    rng = random.Random(2112)
    for _ in range(25):
        inst = rand_temporal(rng, max_n=5, max_keys=7, max_tau=4)
        g = inst.graph
        for deadline in (math.inf, 4, 2):
            got = latest_departure_labels(g, inst.t, deadline)
            assert got == _labels_oracle(g, inst.t, deadline)
        single = [e.key for e in g.edges if e.copies == 1]
        for key in single[:2]:
            got = latest_departure_labels(g, inst.t, skip_one=key)
            assert got == _labels_oracle(g, inst.t, math.inf, skip=key)


def test_skip_one_ignores_multicopy_edges():
    g = _chain(2)
    key = ("a", "s", 0, 1)
    assert latest_departure_labels(g, "t", skip_one=key)["s"] == 0
    thin = _chain(1)
    assert latest_departure_labels(thin, "t", skip_one=key)["s"] == NEVER


def test_labels_unknown_target():
    with pytest.raises(ValueError, match="unknown target"):
        latest_departure_labels(_chain(1), "zzz")


# ---------------------------------------------------------------------------
# single-block certificate


def test_mu_on_chain_and_bridge():
    robust = _chain(2)
    e = robust.by_key[("a", "s", 0, 1)]
    assert compute_mu(robust, "t", math.inf, "s", e) == 0
    brittle = _chain(1)
    assert compute_mu(brittle, "t", math.inf, "s", ("a", "s", 0, 1)) == NEVER
    with pytest.raises(ValueError, match="not in graph"):
        compute_mu(robust, "t", math.inf, "s", ("a", "s", 9, 9))
    with pytest.raises(ValueError, match="not incident"):
        compute_mu(robust, "t", math.inf, "t", e)


def test_solve_k1_chain_and_bridge():
    win = solve_k1(Instance(_chain(2), "s", "t", 1))
    assert win and win.wins
    assert win.table.pi1 == {"s": 0, "a": 1, "t": math.inf}
    assert win.table.latest_safe("s") == 0
    lose = solve_k1(Instance(_chain(1), "s", "t", 1))
    assert not lose.wins
    assert lose.table.pi1["s"] == NEVER


def test_solve_k1_rejects_other_budgets():
    with pytest.raises(ValueError, match="k=2"):
        solve_k1(Instance(_chain(3), "s", "t", 2))
    sg = StaticGraph.build(["a", "b"], [StaticEdge("a", "b", 1)])
    with pytest.raises(ValueError, match="temporal"):
        solve_k1(Instance(sg, "a", "b", 1))


def test_solve_k1_on_the_separating_instance():
    inst = separating_instance(1)
    assert solve_k1(inst).wins
    assert exact_li(inst).wins
    assert not decide_u(inst).wins


def test_solve_k1_matches_exact_search():
    rng = random.Random(4242)
    for _ in range(120):
        inst = rand_temporal(rng, k=1)
        assert solve_k1(inst).wins == exact_li(inst).wins


def test_k1_policy_reads_the_table():
    result = solve_k1(Instance(_chain(2), "s", "t", 1))
    policy = k1_traveller_policy(result)
    fresh = SimpleNamespace(position="s", clock=0, decided={})
    assert policy(fresh) == ("move", ("a", "s", 0, 1))
    seen = SimpleNamespace(position="s", clock=0, decided={("a", "s", 0, 1): 1})
    assert policy(seen) == ("move", ("a", "s", 0, 1))
    stuck = SimpleNamespace(position="s", clock=3, decided={})
    assert policy(stuck) == ("resign",)


# ---------------------------------------------------------------------------
# exact search


def test_separating_instance_splits_the_models():
    inst = separating_instance(2)
    res = exact_li(inst)
    assert res.wins and bool(res)
    assert res.states > 0
    assert not decide_u(inst).wins


def test_fork_wins_whichever_way_the_reveal_goes():
    res = exact_li(separating_instance(2))
    decided = {("s", "v0", 0, 1): 0, ("v0", "v1", 1, 1): 0, ("v0", "v2", 2, 1): 0}
    assert res.game.traveller_wins("v0", 1, dict(decided))
    blocked = dict(decided)
    blocked[("v0", "v2", 2, 1)] = 1
    assert res.game.traveller_wins("v0", 1, blocked)


def _naive_li(inst, t1=0, t2=None):
    """Minimax restated without prunings: every count vector is on the table."""
    g, k = inst.graph, inst.k
    if t2 is None:
        t2 = inst.deadline if inst.deadline is not None else math.inf
    incident = {v: sorted(g.incident(v), key=lambda e: e.key) for v in g.vertices}
    memo = {}

    def vectors(edges, cap):
        if not edges:
            yield ()
            return
        e, rest = edges[0], edges[1:]
        for c in range(min(e.copies, cap) + 1):
            for tail in vectors(rest, cap - c):
                yield (c,) + tail

    def win(v, clock, decided):
        if v == inst.t:
            return True
        state = (v, clock, decided)
        if state in memo:
            return memo[state]
        dmap = dict(decided)
        undecided = [e for e in incident[v] if e.key not in dmap]
        result = True
        for vec in vectors(undecided, k - sum(dmap.values())):
            nd = dict(dmap)
            for e, c in zip(undecided, vec):
                nd[e.key] = c
            frozen = tuple(sorted(nd.items()))
            ok = False
            for e in incident[v]:
                if e.tau < clock or e.tau + e.d > t2:
                    continue
                if e.copies - nd[e.key] >= 1 and win(e.other(v), e.tau + e.d, frozen):
                    ok = True
                    break
            if not ok:
                result = False
                break
        memo[state] = result
        return result

    return win(inst.s, t1, ())


def test_exact_search_matches_naive_minimax():
    rng = random.Random(777)
    for _ in range(30):
        inst = rand_temporal(rng, max_n=5, max_keys=6)
        assert exact_li(inst).wins == _naive_li(inst)


def test_windowed_search_matches_naive_minimax():
    rng = random.Random(778)
    for _ in range(20):
        inst = rand_temporal(rng, max_n=5, max_keys=6)
        for t1, t2 in ((1, math.inf), (0, 3)):
            assert exact_li(inst, t1, t2).wins == _naive_li(inst, t1, t2)


def test_state_limit_guard():
    with pytest.raises(SizeLimitError):
        exact_li(separating_instance(2), state_limit=1)


def test_exact_search_input_checks():
    sg = StaticGraph.build(["a", "b"], [StaticEdge("a", "b", 1)])
    with pytest.raises(ValueError, match="temporal"):
        exact_li(Instance(sg, "a", "b", 0))
    with pytest.raises(ValueError, match="bad window"):
        exact_li(separating_instance(1), 3, 1)
