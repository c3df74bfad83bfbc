"""Command-line front end.

One binary, eight subcommands: expand, dag-solve, solve-u, solve-li,
solve-static, gen, play, verify. Global flags may sit before or after the
subcommand. Exit codes: 0 Traveller wins / success, 3 Blocker wins /
UNREACHABLE, 2 usage or input error, 4 state-limit tripped.

Output is deterministic: identical invocations yield identical bytes.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional

from .arena import (
    BLOCKER_WIN,
    TRAVELLER_WIN,
    Transcript,
    builtin_policies,
    play,
    transcript_traveller_policy,
    verify_traveller_strategy,
)
from .core import Instance, TemporalGraph, parse_instance, serialize_instance
from .dagctp import UNREACHABLE, compute_pi
from .errors import InstanceFormatError, SizeLimitError
from .expansion import build_expansion
from .gadgets import QbfFormula, gen_li_np, gen_li_pspace, gen_static_np, parse_dimacs
from .litctp import NEVER, exact_li, solve_k1
from .staticctp import StaticGame, static_blocker_policy, static_traveller_policy
from .utctp import decide_u, earliest_arrival, latest_departure, shortest_duration

DEFAULT_SEED = 0


def _common_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being clobbered
    # by the subparser's default
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                   help="output style (default text)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help=f"random seed (default {DEFAULT_SEED}; current "
                        "subcommands are deterministic)")
    p.add_argument("--limit", type=int, default=argparse.SUPPRESS, metavar="STATES",
                   help="override the exhaustive-search state guard")
    p.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                   help="no stdout; the exit code carries the answer")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    root = argparse.ArgumentParser(prog="tctp", parents=[common],
                                   description=__doc__.splitlines()[0])
    subs = root.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = subs.add_parser("expand", parents=[common],
                        help="time-expand a temporal instance into a DAG instance")
    p.add_argument("instance")
    p.add_argument("--t1", type=int, default=0)
    p.add_argument("--t2", type=int, default=None)
    p.set_defaults(func=cmd_expand)

    p = subs.add_parser("dag-solve", parents=[common],
                        help="worst-case cost table of a directed instance")
    p.add_argument("instance")
    p.add_argument("--table", action="store_true",
                   help="print the whole table as TSV (vertex, pi_0..pi_k)")
    p.set_defaults(func=cmd_dag_solve)

    p = subs.add_parser("solve-u", parents=[common],
                        help="decide or optimize the per-instant reveal game")
    p.add_argument("instance")
    p.add_argument("--objective", choices=("decide", "earliest", "latest", "duration"),
                   default="decide")
    p.add_argument("--t1", type=int, default=0)
    p.add_argument("--t2", type=int, default=None)
    p.set_defaults(func=cmd_solve_u)

    p = subs.add_parser("solve-li", parents=[common],
                        help="decide the first-arrival reveal game")
    p.add_argument("instance")
    p.add_argument("--exact", action="store_true",
                   help="full game search (any budget) plus one optimal playout")
    p.add_argument("--deadline", type=int, default=None)
    p.set_defaults(func=cmd_solve_li)

    p = subs.add_parser("solve-static", parents=[common],
                        help="exact value of the blocking game on a weighted graph")
    p.add_argument("instance")
    p.add_argument("--deadline", type=int, default=None)
    p.set_defaults(func=cmd_solve_static)

    p = subs.add_parser("gen", parents=[common],
                        help="build a hardness instance from a formula file")
    p.add_argument("kind", choices=("qbf", "sat4", "sat2"))
    p.add_argument("formula")
    p.add_argument("-o", "--output", default=None,
                   help="instance file to write (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("play", parents=[common],
                        help="referee one playout and print its transcript")
    p.add_argument("instance")
    p.add_argument("--model", choices=("li", "u", "static", "dag"), required=True)
    p.add_argument("--traveller", choices=("builtin", "transcript"), default="builtin")
    p.add_argument("--blocker", choices=("builtin", "exhaustive"), default="builtin")
    p.add_argument("--transcript", default=None, metavar="FILE",
                   help="transcript to replay (with --traveller transcript)")
    p.add_argument("--t1", type=int, default=0)
    p.add_argument("--t2", type=int, default=None)
    p.set_defaults(func=cmd_play)

    p = subs.add_parser("verify", parents=[common],
                        help="check a traveller policy against every blocker line")
    p.add_argument("instance")
    p.add_argument("--model", choices=("li", "u", "static", "dag"), required=True)
    p.add_argument("--traveller", choices=("builtin", "transcript"), default="builtin")
    p.add_argument("--transcript", default=None, metavar="FILE")
    p.add_argument("--deadline", type=int, default=None)
    p.add_argument("--t1", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    return root


class _Out:
    def __init__(self, ns):
        self.fmt = getattr(ns, "format", "text")
        self.quiet = getattr(ns, "quiet", False)

    def line(self, text: str) -> None:
        if not self.quiet:
            sys.stdout.write(text + "\n")

    def block(self, text: str) -> None:
        if not self.quiet:
            sys.stdout.write(text)

    def result(self, obj: dict, text_lines) -> None:
        """Emit obj as JSON, or the prepared text lines."""
        if self.quiet:
            return
        if self.fmt == "json":
            sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
        else:
            for line in text_lines:
                sys.stdout.write(line + "\n")


def _load(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _limit(ns, default: int) -> int:
    return getattr(ns, "limit", default)


def _finite(x):
    return None if x == UNREACHABLE else x


def _render(x) -> str:
    return "inf" if x == math.inf else str(x)


def _transcript_obj(tr: Transcript) -> dict:
    rows = [json.loads(line) for line in tr.to_json_lines().splitlines()]
    return {"header": rows[0], "events": rows[1:-1], "footer": rows[-1]}


# ---------------------------------------------------------------------------
# subcommands


def cmd_expand(ns) -> int:
    inst = _load(ns.instance)
    if not isinstance(inst.graph, TemporalGraph):
        raise ValueError("expand needs a temporal instance")
    t2 = ns.t2 if ns.t2 is not None else inst.deadline
    xd = build_expansion(inst.graph, inst.s, inst.t, inst.k, ns.t1, t2)
    out_inst = Instance(xd.graph, xd.source, xd.target, inst.k)
    out = _Out(ns)
    if out.fmt == "json":
        out.block(serialize_instance(out_inst, "json"))
        return 0
    labels = " ".join(
        f"{name}@{time}" for name, time in xd.non_target_nodes()
    )
    comment = (
        f"# time expansion, window [{ns.t1}, {_render(xd.t2)}]\n"
        "# label name@time = that vertex at that time; @target absorbs every\n"
        "# (target, time) node through zero-weight sink arcs\n"
        f"# nodes: {labels}\n"
    )
    out.block(comment + serialize_instance(out_inst, "text"))
    return 0


def cmd_dag_solve(ns) -> int:
    inst = _load(ns.instance)
    table = compute_pi(inst.graph, inst.t, inst.k)
    val = table.value(inst.s, inst.k)
    obj = {"source": str(inst.s), "k": inst.k, "value": _finite(val)}
    lines = [f"pi_{inst.k}({inst.s}) = "
             + ("UNREACHABLE" if val == UNREACHABLE else str(val))]
    if ns.table:
        header = "vertex\t" + "\t".join(f"pi_{i}" for i in range(inst.k + 1))
        lines.append(header)
        tab = {}
        for v in inst.graph.vertices:
            row = [table.value(v, i) for i in range(inst.k + 1)]
            tab[str(v)] = [_finite(x) for x in row]
            lines.append(str(v) + "\t" + "\t".join(_render(x) for x in row))
        obj["table"] = tab
    _Out(ns).result(obj, lines)
    return 0 if val != UNREACHABLE else 3


def cmd_solve_u(ns) -> int:
    inst = _load(ns.instance)
    out = _Out(ns)
    if ns.objective == "decide":
        dec = decide_u(inst, ns.t1, ns.t2)
        window = [dec.t1, None if dec.t2 == math.inf else dec.t2]
        obj = {"objective": "decide", "wins": dec.wins, "window": window,
               "guaranteed_arrival": _finite(dec.guaranteed_arrival)}
        who = "Traveller wins" if dec.wins else "Blocker wins"
        line = f"{who} window [{dec.t1}, {_render(dec.t2)}]"
        if dec.wins:
            line += f": guaranteed arrival {dec.guaranteed_arrival}"
        out.result(obj, [line])
        return 0 if dec.wins else 3
    if ns.objective == "earliest":
        val = earliest_arrival(inst)
        out.result({"objective": "earliest", "value": val},
                   [f"earliest arrival {val}" if val is not None else "UNREACHABLE"])
        return 0 if val is not None else 3
    if ns.objective == "latest":
        val = latest_departure(inst)
        obj_val = "inf" if val == math.inf else val
        out.result({"objective": "latest", "value": obj_val},
                   [f"latest departure {_render(val)}" if val is not None
                    else "UNREACHABLE"])
        return 0 if val is not None else 3
    window = shortest_duration(inst)
    obj = {"objective": "duration",
           "window": list(window) if window else None,
           "value": window[1] - window[0] if window else None}
    text = (f"shortest window [{window[0]}, {window[1]}] "
            f"(duration {window[1] - window[0]})" if window else "UNREACHABLE")
    out.result(obj, [text])
    return 0 if window is not None else 3


def cmd_solve_li(ns) -> int:
    inst = _load(ns.instance)
    out = _Out(ns)
    obj: dict = {"k": inst.k, "deadline": ns.deadline
                 if ns.deadline is not None else inst.deadline}
    if ns.exact or inst.k != 1:
        res = exact_li(inst, 0, ns.deadline, state_limit=_limit(ns, 10**7))
        obj["wins"] = res.wins
        lines = ["Traveller wins" if res.wins else "Blocker wins"]
        if ns.exact:
            tp, bp = res.traveller_policy(), res.blocker_policy()
            tr = play(inst, tp, bp, "li", 0, ns.deadline)
            obj["transcript"] = _transcript_obj(tr)
            lines.append(tr.to_json_lines().rstrip("\n"))
        out.result(obj, lines)
        return 0 if res.wins else 3
    res = solve_k1(inst, ns.deadline)
    obj["wins"] = res.wins
    table = {v: ("never" if res.table.pi1[v] == NEVER
                 else "inf" if res.table.pi1[v] == math.inf
                 else res.table.pi1[v])
             for v in inst.graph.vertices}
    obj["pi1"] = table
    lines = ["Traveller wins" if res.wins else "Blocker wins",
             "vertex\tlatest_safe"]
    for v in inst.graph.vertices:
        val = res.table.pi1[v]
        lines.append(f"{v}\t" + ("never" if val == NEVER else str(val)))
    out.result(obj, lines)
    return 0 if res.wins else 3


def cmd_solve_static(ns) -> int:
    inst = _load(ns.instance)
    discovery = "out" if inst.graph.directed else "incident"
    game = StaticGame(inst, discovery=discovery, state_limit=_limit(ns, 10**7))
    val = game.entry_value()
    deadline = ns.deadline if ns.deadline is not None else inst.deadline
    wins = val != UNREACHABLE and (deadline is None or val <= deadline)
    obj = {"value": _finite(val), "deadline": deadline, "wins": wins}
    lines = ["value " + ("UNREACHABLE" if val == UNREACHABLE else str(val))]
    if val != UNREACHABLE:
        tr = play(inst, static_traveller_policy(game), static_blocker_policy(game),
                  "dag" if inst.graph.directed else "static")
        obj["transcript"] = _transcript_obj(tr)
        lines.append(tr.to_json_lines().rstrip("\n"))
    _Out(ns).result(obj, lines)
    return 0 if wins else 3


def cmd_gen(ns) -> int:
    with open(ns.formula, "r", encoding="utf-8") as fh:
        cnf, _ = parse_dimacs(fh.read())
    if ns.kind == "qbf":
        inst = gen_li_pspace(QbfFormula.from_cnf(cnf))
    elif ns.kind == "sat4":
        inst, _ = gen_static_np(cnf)
    else:
        inst, _ = gen_li_np(cnf)
    out = _Out(ns)
    text = serialize_instance(inst, out.fmt)
    if ns.output is None:
        out.block(text)
    else:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _pick_traveller(ns, inst: Instance):
    if ns.traveller == "transcript":
        if ns.transcript is None:
            raise ValueError("--traveller transcript needs --transcript FILE")
        with open(ns.transcript, "r", encoding="utf-8") as fh:
            return transcript_traveller_policy(Transcript.from_json_lines(fh.read()))
    return builtin_policies(inst, ns.model, getattr(ns, "t1", 0),
                            getattr(ns, "t2", None))[0]


def cmd_play(ns) -> int:
    inst = _load(ns.instance)
    tp = _pick_traveller(ns, inst)
    if ns.blocker == "exhaustive":
        res = verify_traveller_strategy(inst, tp, ns.model, deadline=ns.t2,
                                        t1=ns.t1, limit=_limit(ns, 200_000))
        if res.counterexample is not None:
            tr = res.counterexample
        else:
            bp = builtin_policies(inst, ns.model, ns.t1, ns.t2)[1]
            tr = play(inst, tp, bp, ns.model, ns.t1, ns.t2)
    else:
        bp = builtin_policies(inst, ns.model, ns.t1, ns.t2)[1]
        tr = play(inst, tp, bp, ns.model, ns.t1, ns.t2)
    out = _Out(ns)
    out.result(_transcript_obj(tr), [tr.to_json_lines().rstrip("\n")])
    return 0 if tr.outcome == TRAVELLER_WIN else 3


def cmd_verify(ns) -> int:
    inst = _load(ns.instance)
    tp = _pick_traveller(ns, inst)
    res = verify_traveller_strategy(inst, tp, ns.model, deadline=ns.deadline,
                                    t1=ns.t1, limit=_limit(ns, 200_000))
    out = _Out(ns)
    obj = {"ok": res.ok, "explored": res.explored,
           "counterexample": _transcript_obj(res.counterexample)
           if res.counterexample else None}
    if res.ok:
        out.result(obj, [f"verified: wins every blocker line "
                         f"({res.explored} reveal states)"])
        return 0
    out.result(obj, ["refuted:", res.counterexample.to_json_lines().rstrip("\n")])
    return 3


# ---------------------------------------------------------------------------


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2
    try:
        return ns.func(ns)
    except SizeLimitError as exc:
        print(f"tctp: state limit: {exc}", file=sys.stderr)
        return 4
    except (InstanceFormatError, OSError, ValueError) as exc:
        print(f"tctp: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
