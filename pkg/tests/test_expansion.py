"""Time expansion: inventory, block groups, and walk correspondence."""
import math
import random

import pytest

from generators import enumerate_walks, rand_temporal
from tctp.core import TemporalGraph, TemporalWalk, TimeEdge, WalkStep, validate_walk
from tctp.dagctp import compute_pi
from tctp.expansion import SINK, TARGET, WAIT, build_expansion, project_walk
from tctp.samples import separating_instance


def _fig():
    inst = separating_instance(2)
    return build_expansion(inst.graph, "s", "t", 2, 0, 3)


def test_window_node_inventory():
    xd = _fig()
    # (v2,t) arrives at 4 and falls out of the window, everything else stays
    assert len(xd.non_target_nodes()) == 13
    times = {}
    for name, tau in xd.non_target_nodes():
        times.setdefault(name, set()).add(tau)
    assert times == {
        "s": {0, 1},
        "v0": {0, 1, 2, 3},
        "v1": {1, 2, 3},
        "v2": {2, 3},
        "t": {2, 3},
    }
    assert xd.source == ("s", 0) and xd.target == TARGET


def test_arc_inventory():
    xd = _fig()
    kinds = {WAIT: 0, SINK: 0, "edge": 0}
    for arc in xd.graph.edges:
        origin = xd.origins[arc.key]
        kinds["edge" if isinstance(origin, TimeEdge) else origin] += 1
    assert kinds == {"edge": 8, WAIT: 8, SINK: 2}
    arc = xd.arc_by_pair[(("v0", 2), ("v2", 3))]
    assert arc.weight == 1 and arc.copies == 1


def test_node_count_is_linear_in_surviving_edges():
    rng = random.Random(91)
    for _ in range(40):
        inst = rand_temporal(rng)
        xd = build_expansion(inst.graph, inst.s, inst.t, inst.k)
        assert len(xd.non_target_nodes()) <= 4 * len(inst.graph.edges) + 2


def test_orientations_share_a_block_group():
    xd = _fig()
    e = separating_instance(2).graph.by_key[("v0", "v1", 1, 1)]
    fwd = xd.arc_by_pair[(("v0", 1), ("v1", 2))]
    bwd = xd.arc_by_pair[(("v1", 1), ("v0", 2))]
    gid = ("edge", e.key)
    assert xd.groups.group_of(fwd) == gid
    assert xd.groups.group_of(bwd) == gid
    assert xd.groups.group_copies[gid] == 3


def test_wait_and_sink_arcs_cannot_be_blocked():
    xd = _fig()
    for arc in xd.graph.edges:
        origin = xd.origins[arc.key]
        if origin is WAIT:
            assert arc.copies == xd.k + 1
            assert arc.weight == arc.v[1] - arc.u[1]
        elif origin is SINK:
            assert arc.copies == xd.k + 1
            assert arc.weight == 0 and arc.v == TARGET


def test_window_excludes_late_arrivals():
    inst = separating_instance(2)
    tight = build_expansion(inst.graph, "s", "t", 2, 0, 3)
    assert (("t", 3), TARGET) in tight.arc_by_pair
    assert (("v2", 3), ("t", 4)) not in tight.arc_by_pair
    wide = build_expansion(inst.graph, "s", "t", 2, 0, None)
    assert (("v2", 3), ("t", 4)) in wide.arc_by_pair
    assert wide.t2 == math.inf


def test_values_on_the_expansion():
    xd = _fig()
    table = compute_pi(xd.graph, xd.target, 2, xd.groups)
    assert table.value(xd.source, 0) == 3
    assert table.value(xd.source, 2) == math.inf


def test_project_walk_drops_waits_and_sinks():
    inst = separating_instance(2)
    xd = build_expansion(inst.graph, "s", "t", 2, 0, None)
    path = [("s", 0), ("v0", 1), ("v0", 2), ("v2", 3), ("t", 4), TARGET]
    w = project_walk(xd, path)
    assert w.vertices() == ("s", "v0", "v2", "t")
    assert w.arrival_time == 4
    assert validate_walk(inst.graph, w)


def test_project_walk_rejects_non_paths():
    xd = _fig()
    with pytest.raises(ValueError, match="no arc"):
        project_walk(xd, [("s", 0), ("v1", 1)])
    with pytest.raises(ValueError, match="empty"):
        project_walk(xd, [])
    with pytest.raises(ValueError, match="synthetic target"):
        project_walk(xd, [TARGET])


def _paths_to_target(xd):
    out = []

    def go(node, acc):
        if node == xd.target:
            out.append(tuple(acc))
            return
        for arc in xd.graph.outgoing(node):
            acc.append(arc.v)
            go(arc.v, acc)
            acc.pop()

    go(xd.source, [xd.source])
    return out


def test_expansion_paths_project_onto_exactly_the_feasible_walks():
    # the projections of all source-to-target paths must equal the set of
    # walks of the original graph that start at s, end at t, and respect the
    # window; waiting chains make the map many-to-one, hence set equality
    rng = random.Random(2024)
    for _ in range(25):
        inst = rand_temporal(rng, max_n=4, max_keys=6, max_tau=4)
        g, s, t = inst.graph, inst.s, inst.t
        for t1, t2 in ((0, math.inf), (1, 4), (0, 3)):
            xd = build_expansion(g, s, t, inst.k, t1, t2)
            projected = {project_walk(xd, p) for p in _paths_to_target(xd)}
            direct = set()
            for verts, steps in enumerate_walks(g, s, t1):
                if verts[-1] != t:
                    continue
                w = TemporalWalk(s, tuple(WalkStep(e, d) for e, d in steps))
                if w.arrival_time is None or w.arrival_time <= t2:
                    direct.add(w)
            assert projected == direct


def test_source_equal_target_still_reaches():
    g = TemporalGraph.build(["a", "b"], [TimeEdge("a", "b", 1, 1)])
    xd = build_expansion(g, "a", "a", 1)
    assert (("a", 0), TARGET) in xd.arc_by_pair
    table = compute_pi(xd.graph, xd.target, 1, xd.groups)
    assert table.value(xd.source, 1) == 0


def test_bad_window_raises():
    g = separating_instance(1).graph
    with pytest.raises(ValueError, match="bad window"):
        build_expansion(g, "s", "t", 1, 3, 2)
    with pytest.raises(ValueError, match="bad window"):
        build_expansion(g, "s", "t", 1, -1, 2)
    with pytest.raises(ValueError, match="unknown vertex"):
        build_expansion(g, "nope", "t", 1)
