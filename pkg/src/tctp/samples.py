"""Small hand-built instances used across tests and documentation."""

from .core import Instance, TemporalGraph, TimeEdge


def separating_instance(k: int = 2) -> Instance:
    """Instance whose decision splits the uninformed and locally-informed games.

    All edges have length 1. Uninformed play loses for k >= 1: committing to
    the v1 line lets the blocker spend everything on the k-copy bundle, while
    waiting at v0 lets them cut the single (v0,v2) edge.  A locally-informed
    walker stands at v0 at time 1, sees whether (v0,v2,2) survived, and picks
    the matching exit, winning with one time step to spare on either branch.
    """
    forced = k + 1
    edges = [
        TimeEdge("s", "v0", 0, 1, copies=forced),
        TimeEdge("v0", "v1", 1, 1, copies=forced),
        TimeEdge("v1", "t", 2, 1, copies=max(k, 1)),
        TimeEdge("v0", "v2", 2, 1),
        TimeEdge("v2", "t", 3, 1, copies=forced),
    ]
    vertices = ["s", "t", "v0", "v1", "v2"]
    return Instance(TemporalGraph.build(vertices, edges), "s", "t", k)
