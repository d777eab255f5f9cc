"""The ``wnk`` command line.

    wnk check --semiring S (--safe R | --reach R) [--policy F] [--schema F]
              [--topology F [--variant V] [--flavor X]] [--ingress P] [--egress P] [--json]
    wnk eval --semiring S --policy F --packet f=v,.. (--history '..' | --approx [N])
    wnk compile --semiring S --policy F (--dump | --stats)

Limits from ``wnetkat/conf.yml`` are options too, e.g. ``--packet_cap 5000``.
Exit codes: 0 property holds, 1 property fails, 2 usage or input error,
3 resource cap exceeded.
"""
import argparse
import json
import logging
import os
import sys
import warnings

import wnetkat
from wnetkat import semirings
from wnetkat.automata import thompson
from wnetkat.denotational import eval_approx, format_weighting
from wnetkat.errors import ResourceCapError, WnkError
from wnetkat.netcore import format_policy, parse_program, parse_schema
from wnetkat.netcore.parser import parse_predicate
from wnetkat.netcore.syntax import Filter, Seq, node_counts
from wnetkat.report import dumps, format_verdict, verdict_to_dict, weight_to_json
from wnetkat.topology import FLAVORS, load_topology, query_policy, topology_schema
from wnetkat.topology import topology_to_policy
from wnetkat.utils import load_conf, parse_args_as_dict, prepare_parser_from_dict
from wnetkat.verify import check_reachability, check_safety, eval_weight

logger = logging.getLogger(__name__)

DEFAULT_CONF = os.path.join(os.path.dirname(wnetkat.__file__), "conf.yml")

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_CAP = 3

# Flavor picked for a topology when --flavor is not given.
DEFAULT_FLAVORS = {
    "prob-union": "rel",
    "viterbi": "success",
    "arctic": "latency",
    "tropical": "latency",
    "bottleneck": "band",
}


def _conf_path(argv):
    """Value of ``--conf`` in ``argv``, read before the full parser exists."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--conf", default=DEFAULT_CONF)
    known, _ = pre.parse_known_args(argv)
    return known.conf


def _base_parser(prog):
    parser = argparse.ArgumentParser(prog=prog)
    parser.add_argument("--conf", default=DEFAULT_CONF, help="YAML file of limits.")
    parser.add_argument("--semiring", required=True, help="Weight semiring, e.g. prob-union.")
    parser.add_argument("--policy", default=None, help="Policy file, or policy text.")
    parser.add_argument("--schema", default=None, help="File with a `fields { ... }` block.")
    parser.add_argument(
        "--topology", default=None, help="Topology JSON file, or the name of a bundled one."
    )
    parser.add_argument("--variant", default=None, help="Named variant of the topology.")
    parser.add_argument("--flavor", default=None, choices=FLAVORS, help="Topology weighting.")
    parser.add_argument("--ingress", default=None, help="Predicate guarding the input.")
    parser.add_argument("--egress", default=None, help="Predicate guarding the output.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug traces.")
    return parser


def _read_text(value):
    if os.path.isfile(value):
        with open(value, "r", encoding="utf-8") as f:
            return f.read()
    return value


def load_query(main_args, semiring):
    """Build the schema and the queried policy from the command-line options.

    With a topology, the generated network is available to policy text as
    ``net``; without ``--policy`` the query is ``ingress ; net ; egress``.

    Returns:
        tuple: ``(schema, policy, query_text)``
    """
    ingress, egress = main_args["ingress"], main_args["egress"]
    if main_args["topology"]:
        t = load_topology(main_args["topology"], main_args["variant"])
        schema = topology_schema(t)
        flavor = main_args["flavor"] or DEFAULT_FLAVORS.get(semiring.name, "plain")
        logger.info("encoding topology %s with the %s flavor", t.name, flavor)
        net = topology_to_policy(t, flavor, schema, semiring)
        if main_args["policy"] is None:
            policy = query_policy(t, net, schema, ingress, egress)
            shown = " ; ".join(
                s for s in (ingress or t.ingress, t.name, egress or t.egress) if s
            )
            return schema, policy, shown
        text = _read_text(main_args["policy"])
        program = parse_program(text, semiring, schema=schema, env={"net": net})
    else:
        if main_args["policy"] is None:
            raise WnkError("Give a --policy or a --topology")
        schema = None
        if main_args["schema"]:
            schema = parse_schema(_read_text(main_args["schema"]))
        text = _read_text(main_args["policy"])
        program = parse_program(text, semiring, schema=schema)
    schema, policy = program.schema, program.policy
    if egress:
        policy = Seq(policy, Filter(parse_predicate(egress, schema)))
    if ingress:
        policy = Seq(Filter(parse_predicate(ingress, schema)), policy)
    return schema, policy, format_policy(policy, schema)


def _setup_logging(verbose):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def run_query(schema, policy, semiring, safe=None, reach=None, trace=None, limits=None):
    """Compile ``policy`` and answer one query on it.

    Args:
        schema (FieldSchema): Packet fields.
        policy: Guarded policy, e.g. ``ingress ; net ; egress``.
        semiring: Semiring class.
        safe: Upper bound for every weight. Exactly one of ``safe``,
            ``reach`` and ``trace`` is given.
        reach: Weight some trace must meet.
        trace (tuple): ``(packet, history)`` whose exact weight is wanted.
        limits (dict, optional): ``packet_cap``, ``dup_length_cap`` and
            ``run_cap``; missing keys keep the library defaults.

    Returns:
        :class:`~wnetkat.verify.Verdict` for ``safe`` and ``reach``, the
        weight of the trace for ``trace``.
    """
    if sum(q is not None for q in (safe, reach, trace)) != 1:
        raise ValueError("Give exactly one of safe, reach and trace")
    limits = dict(limits or {})
    packet_cap = limits.pop("packet_cap", 100000)
    schema.check_cap(packet_cap)
    automaton = thompson(policy, schema, semiring, packet_cap=packet_cap)
    if trace is not None:
        return eval_weight(automaton, *trace)
    if safe is not None:
        return check_safety(
            automaton,
            safe,
            dup_length_cap=limits.get("dup_length_cap", 64),
            packet_cap=packet_cap,
        )
    return check_reachability(automaton, reach, run_cap=limits.get("run_cap", 1000000))


def check(argv):
    """``wnk check``: decide r-safety or r-reachability."""
    parser = _base_parser("wnk check")
    mode = parser.add_mutually_exclusive_group(required=True)
    mode.add_argument("--safe", default=None, help="Bound every weight from above.")
    mode.add_argument("--reach", default=None, help="Ask for some weight at least this.")
    parser.add_argument("--json", action="store_true", help="Print a JSON document.")
    prepare_parser_from_dict(load_conf(_conf_path(argv)), parser=parser)
    arg_dic = parse_args_as_dict(parser, args=argv)
    main_args, limits = arg_dic["main_args"], arg_dic["limits"]
    _setup_logging(main_args["verbose"])

    sr = semirings.get(main_args["semiring"])
    schema, policy, query = load_query(main_args, sr)
    if main_args["safe"] is not None:
        verdict = run_query(schema, policy, sr, safe=sr.parse(main_args["safe"]), limits=limits)
    else:
        verdict = run_query(schema, policy, sr, reach=sr.parse(main_args["reach"]), limits=limits)
    if main_args["json"]:
        print(dumps(verdict_to_dict(verdict, schema, sr, query)))
    else:
        print(format_verdict(verdict, schema, sr, query))
    return EXIT_HOLDS if verdict.holds else EXIT_FAILS


def evaluate(argv):
    """``wnk eval``: weight of one trace, or the approximate output weighting."""
    parser = _base_parser("wnk eval")
    parser.add_argument("--packet", required=True, help="Input packet, f=v,g=w.")
    parser.add_argument(
        "--history", default=None, help="Output history, head first, `::`-separated."
    )
    parser.add_argument(
        "--approx", nargs="?", type=int, const=-1, default=None, help="Unrolling depth."
    )
    parser.add_argument("--json", action="store_true", help="Print a JSON document.")
    prepare_parser_from_dict(load_conf(_conf_path(argv)), parser=parser)
    arg_dic = parse_args_as_dict(parser, args=argv)
    main_args, limits = arg_dic["main_args"], arg_dic["limits"]
    _setup_logging(main_args["verbose"])

    sr = semirings.get(main_args["semiring"])
    schema, policy, query = load_query(main_args, sr)
    packet = schema.parse_packet(main_args["packet"])
    if main_args["approx"] is not None:
        depth = main_args["approx"]
        if depth < 0:
            depth = arg_dic["oracle"]["approx_depth"]
        if not sr.idempotent:
            warnings.warn(
                f"Approximants over {sr.name} are lower bounds of the weights", UserWarning
            )
        m = eval_approx(policy, depth, (packet,), schema, sr)
        if main_args["json"]:
            doc = [
                {"history": [schema.packet_dict(p) for p in h], "weight": weight_to_json(w)}
                for h, w in sorted(m.items())
            ]
            print(json.dumps(doc, indent=2, ensure_ascii=False))
        else:
            print(format_weighting(m, schema) or "(empty)")
        return EXIT_HOLDS
    if main_args["history"] is None:
        raise WnkError("Give an output --history, or --approx")
    history = schema.parse_history(main_args["history"])
    weight = run_query(schema, policy, sr, trace=(packet, history), limits=limits)
    if main_args["json"]:
        print(json.dumps({"query": query, "weight": weight_to_json(weight)}, ensure_ascii=False))
    else:
        print(weight)
    return EXIT_HOLDS


def automaton_to_dict(a, pair_cap):
    """States, initial weights and all non-zero transition/output entries."""
    schema = a.schema
    pairs = schema.packet_count ** 2
    doc = {
        "semiring": a.semiring.name,
        "states": list(a.labels),
        "initial": {str(q): str(w) for q, w in sorted(a.initial.items())},
    }
    if pairs > pair_cap:
        warnings.warn(
            f"Not dumping transitions over {pairs} packet pairs (dump_pair_cap={pair_cap})",
            UserWarning,
        )
        return doc
    transitions, outputs = [], []
    for alpha in schema.packets():
        for beta, mat in sorted(a.transition_row(alpha).items()):
            for q, targets in sorted(mat.items()):
                for q2, w in sorted(targets.items()):
                    transitions.append(
                        {
                            "alpha": schema.format_packet(alpha),
                            "beta": schema.format_packet(beta),
                            "from": q,
                            "to": q2,
                            "weight": str(w),
                        }
                    )
        for beta, vec in sorted(a.output_row(alpha).items()):
            for q, w in sorted(vec.items()):
                outputs.append(
                    {
                        "alpha": schema.format_packet(alpha),
                        "beta": schema.format_packet(beta),
                        "state": q,
                        "weight": str(w),
                    }
                )
    doc["transitions"] = transitions
    doc["outputs"] = outputs
    return doc


def compile_policy(argv):
    """``wnk compile``: print the automaton of a policy."""
    parser = _base_parser("wnk compile")
    parser.add_argument("--dump", action="store_true", help="Print the automaton as JSON.")
    parser.add_argument("--stats", action="store_true", help="Print state counts.")
    prepare_parser_from_dict(load_conf(_conf_path(argv)), parser=parser)
    arg_dic = parse_args_as_dict(parser, args=argv)
    main_args, limits = arg_dic["main_args"], arg_dic["limits"]
    _setup_logging(main_args["verbose"])

    sr = semirings.get(main_args["semiring"])
    schema, policy, _ = load_query(main_args, sr)
    schema.check_cap(limits["packet_cap"])
    automaton = thompson(policy, schema, sr, packet_cap=limits["packet_cap"])
    if main_args["stats"] or not main_args["dump"]:
        counts = node_counts(policy)
        print(f"states: {automaton.num_states}")
        for key in ("primitives", "dups", "stars"):
            print(f"{key}: {counts[key]}")
        print(f"packets: {schema.packet_count}")
    if main_args["dump"]:
        print(dumps(automaton_to_dict(automaton, limits["dump_pair_cap"])))
    return EXIT_HOLDS


COMMANDS = {"check": check, "eval": evaluate, "compile": compile_policy}


def main(argv=None):
    """Entry point of ``wnk``; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS:
        print(__doc__, file=sys.stderr)
        return EXIT_USAGE
    command, rest = COMMANDS[argv[0]], argv[1:]
    try:
        return command(rest)
    except ResourceCapError as err:
        print(f"wnk: resource cap: {err}", file=sys.stderr)
        return EXIT_CAP
    except (WnkError, ValueError) as err:
        print(f"wnk: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as err:
        print(f"wnk: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
