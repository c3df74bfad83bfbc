"""Data model, walk validation, and instance format round trips."""
import math
import random

import pytest

from generators import rand_dag, rand_temporal
from tctp.core import (
    Instance,
    StaticEdge,
    StaticGraph,
    TemporalGraph,
    TemporalWalk,
    TimeEdge,
    WalkStep,
    lifespan,
    parse_instance,
    serialize_instance,
    validate_walk,
)
from tctp.errors import InstanceFormatError
from tctp.samples import separating_instance


def test_time_edge_orients_endpoints_canonically():
    e = TimeEdge("z", "a", 3, 1)
    assert (e.u, e.v) == ("a", "z")
    assert e.key == ("a", "z", 3, 1)
    assert e.arrival == 4
    assert e.other("a") == "z" and e.other("z") == "a"


def test_time_edge_rejects_bad_fields():
    with pytest.raises(ValueError):
        TimeEdge("a", "a", 0, 1)
    with pytest.raises(ValueError):
        TimeEdge("a", "b", -1, 1)
    with pytest.raises(ValueError):
        TimeEdge("a", "b", 0, 0)
    with pytest.raises(ValueError):
        TimeEdge("a", "b", 0, 1, copies=0)
    with pytest.raises(ValueError):
        e = TimeEdge("a", "b", 0, 1)
        e.other("c")


def test_static_edge_allows_zero_weight():
    assert StaticEdge("a", "b", 0).weight == 0
    with pytest.raises(ValueError):
        StaticEdge("a", "b", -1)
    with pytest.raises(ValueError):
        StaticEdge("a", "b", 1, copies=0)


def test_build_merges_parallel_records():
    g = TemporalGraph.build(
        ["a", "b"],
        [TimeEdge("a", "b", 0, 1, copies=2), TimeEdge("b", "a", 0, 1, copies=3)],
    )
    assert len(g.edges) == 1
    assert g.edges[0].copies == 5


def test_build_rejects_dangling_endpoint():
    with pytest.raises(ValueError):
        TemporalGraph.build(["a"], [TimeEdge("a", "b", 0, 1)])
    with pytest.raises(ValueError):
        StaticGraph.build(["a"], [StaticEdge("a", "b", 1)])


def test_canonicalization_is_idempotent():
    rng = random.Random(11)
    for _ in range(20):
        g = rand_temporal(rng).graph
        again = TemporalGraph.build(g.vertices, g.edges)
        assert again == g


def test_undirected_static_edges_canonicalize():
    g = StaticGraph.build(["a", "b"], [StaticEdge("b", "a", 2)])
    assert g.edges[0].key == ("a", "b", 2)
    d = StaticGraph.build(["a", "b"], [StaticEdge("b", "a", 2)], directed=True)
    assert d.edges[0].key == ("b", "a", 2)
    assert d.outgoing("a") == ()
    assert g.outgoing("a") == g.edges


def test_lifespan():
    assert lifespan(separating_instance(2).graph) == 3
    assert lifespan(TemporalGraph.build(["a"], [])) == 0
    assert lifespan(TemporalGraph.build(["a", "b"], [TimeEdge("a", "b", 7, 2)])) == 7


def test_instance_validation():
    g = TemporalGraph.build(["a", "b"], [TimeEdge("a", "b", 0, 1)])
    with pytest.raises(ValueError):
        Instance(g, "zzz", "b", 0)
    with pytest.raises(ValueError):
        Instance(g, "a", "zzz", 0)
    with pytest.raises(ValueError):
        Instance(g, "a", "b", -1)
    with pytest.raises(ValueError):
        Instance(g, "a", "b", 0, deadline=-1)
    assert Instance(g, "a", "b", 2).forced_copies() == 3


def test_model_tags():
    assert separating_instance(1).model == "temporal"
    sg = StaticGraph.build(["a", "b"], [StaticEdge("a", "b", 1)])
    assert Instance(sg, "a", "b", 0).model == "static"
    dg = StaticGraph.build(["a", "b"], [StaticEdge("a", "b", 1)], directed=True)
    assert Instance(dg, "a", "b", 0).model == "dag"


# ---------------------------------------------------------------------------
# walks


def test_empty_walk_is_valid():
    g = separating_instance(2).graph
    w = TemporalWalk("s")
    assert validate_walk(g, w)
    assert w.end == "s" and w.arrival_time is None and w.vertices() == ("s",)


def test_walk_through_separating_instance():
    g = separating_instance(2).graph
    e1 = g.by_key[("s", "v0", 0, 1)]
    e2 = g.by_key[("v0", "v1", 1, 1)]
    w = TemporalWalk("s", (WalkStep(e1, 0), WalkStep(e2, 1)))
    assert validate_walk(g, w)
    assert w.end == "v1" and w.arrival_time == 2
    assert w.vertices() == ("s", "v0", "v1")


def test_walk_rejects_backward_time():
    g = separating_instance(2).graph
    late = g.by_key[("v0", "v2", 2, 1)]
    early = g.by_key[("v0", "v1", 1, 1)]
    w = TemporalWalk("v2", (WalkStep(late, 2), WalkStep(early, 1)))
    check = validate_walk(g, w)
    assert not check
    assert check.violation_index == 1
    assert "before arrival" in check.reason


def test_walk_rejects_wrong_departure_and_detached_edge():
    g = separating_instance(2).graph
    e = g.by_key[("s", "v0", 0, 1)]
    assert not validate_walk(g, TemporalWalk("s", (WalkStep(e, 1),)))
    assert not validate_walk(g, TemporalWalk("v1", (WalkStep(e, 0),)))
    assert not validate_walk(g, TemporalWalk("nope", ()))
    foreign = TimeEdge("s", "v0", 9, 1)
    assert not validate_walk(g, TemporalWalk("s", (WalkStep(foreign, 9),)))


def _chained(g, start, steps):
    """Test-local re-statement of the walk rules, used as the oracle."""
    here, arrived = start, None
    for e, depart in steps:
        if e.key not in g.by_key or depart != e.tau or not e.touches(here):
            return False
        if arrived is not None and depart < arrived:
            return False
        here, arrived = e.other(here), depart + e.d
    return True


def test_validate_walk_agrees_with_step_rules():
    # every step sequence up to length 3, valid and invalid alike
    rng = random.Random(404)
    for _ in range(6):
        inst = rand_temporal(rng, max_n=4, max_keys=5, max_tau=4)
        g = inst.graph
        seqs = [()]
        for _ in range(3):
            seqs += [s + (e,) for s in seqs[-len(seqs):] for e in g.edges]
        for start in g.vertices:
            for seq in seqs:
                steps = tuple((e, e.tau) for e in seq)
                w = TemporalWalk(start, tuple(WalkStep(e, d) for e, d in steps))
                assert bool(validate_walk(g, w)) == _chained(g, start, steps)


# ---------------------------------------------------------------------------
# serialization


def _instances(rng, n):
    out = [separating_instance(2), separating_instance(1)]
    for _ in range(n):
        out.append(rand_temporal(rng))
        out.append(rand_dag(rng))
    sg = StaticGraph.build(["a", "b", "c"], [StaticEdge("a", "b", 0, 2),
                                            StaticEdge("b", "c", 3)])
    out.append(Instance(sg, "a", "c", 1, deadline=9))
    return out


def test_round_trip_both_formats():
    rng = random.Random(7)
    for inst in _instances(rng, 10):
        for fmt in ("text", "json"):
            assert parse_instance(serialize_instance(inst, fmt)) == inst


def test_serialization_is_byte_stable():
    rng = random.Random(8)
    for inst in _instances(rng, 6):
        text = serialize_instance(inst)
        assert serialize_instance(parse_instance(text)) == text


def test_parse_reports_line_numbers():
    with pytest.raises(InstanceFormatError, match="line 3.*unknown source"):
        parse_instance("model temporal\nvertices a b\ns zz\nt b\nk 0\n")
    with pytest.raises(InstanceFormatError, match="missing model"):
        parse_instance("vertices a b\ns a\nt b\nk 0\n")
    with pytest.raises(InstanceFormatError, match="bad k value"):
        parse_instance("model temporal\nvertices a b\ns a\nt b\nk many\n")
    with pytest.raises(InstanceFormatError, match="edge record"):
        parse_instance("model temporal\nvertices a b\ns a\nt b\nk 0\nedge a b 0\n")
    with pytest.raises(InstanceFormatError, match="unknown keyword"):
        parse_instance("model temporal\nwat\n")


def test_parse_merges_duplicate_edge_records():
    inst = parse_instance(
        "model temporal\nvertices a b\ns a\nt b\nk 1\n"
        "edge a b 0 1 2\nedge a b 0 1 3\n"
    )
    assert len(inst.graph.edges) == 1
    assert inst.graph.edges[0].copies == 5


def test_parse_allows_comments_and_default_copies():
    inst = parse_instance(
        "# a comment\nmodel temporal\nvertices a b  # trailing\n"
        "s a\nt b\nk 0\n\nedge a b 2 1\n"
    )
    assert inst.graph.edges[0].copies == 1
    assert inst.graph.edges[0].tau == 2


def test_parse_json_errors():
    with pytest.raises(InstanceFormatError, match="missing field"):
        parse_instance('{"model": "temporal"}')
    with pytest.raises(InstanceFormatError):
        parse_instance('{"model": "wat", "vertices": [], "s": "a", "t": "a", "k": 0}')


def test_deadline_round_trips():
    inst = Instance(separating_instance(2).graph, "s", "t", 2, deadline=4)
    for fmt in ("text", "json"):
        assert parse_instance(serialize_instance(inst, fmt)).deadline == 4
    assert parse_instance(serialize_instance(separating_instance(2))).deadline is None
