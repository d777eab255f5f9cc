"""Network topologies and their translation into policies.

A topology file is JSON::

    {
      "name": "abilene",
      "fields": [{"name": "dst", "values": [...]}, {"name": "tid", "values": ["0..5"]}],
      "nodes": [{"name": "ATL", "failure_pct": 1.5, "latency_ms": 3}, ...],
      "links": [{"from": "ATL", "to": "DC", "bandwidth_mbps": 1750}, ...],
      "tunnels": [{"tid": 1, "path": ["BAY", "DEN", "KAN"]}, ...],
      "routes": [{"at": "BAY", "dst": "NYC", "tunnels": [1, 2], "video": 1}, ...],
      "handoffs": [{"at": "KAN", "tid": 2, "dst": "NYC", "to": 4}],
      "ingress": "node=BAY & dst=NYC",
      "egress": "node=NYC & tid!=0",
      "variants": {"safe": {"handoffs": [...]}}
    }

The ``node`` field is implicit. Variants replace top-level keys. Traffic
that matches no route or tunnel is dropped.
"""
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .errors import AlgebraError, TopologyError
from .netcore.parser import parse_predicate
from .netcore.schema import FieldSchema, expand_values
from .netcore.syntax import (
    DROP,
    And,
    Assign,
    Dup,
    Filter,
    Not,
    Seq,
    Star,
    Test,
    Weigh,
    choice_of,
    if_then_else,
    or_of,
)

logger = logging.getLogger(__name__)

FLAVORS = ("plain", "rel", "success", "latency", "band")
ASSETS = os.path.join(os.path.dirname(__file__), "assets")


@dataclass(frozen=True)
class Node:
    name: str
    failure_pct: Optional[Fraction] = None
    latency_ms: Optional[int] = None


@dataclass(frozen=True)
class Link:
    source: str
    target: str
    bandwidth_mbps: Optional[int] = None


@dataclass(frozen=True)
class Tunnel:
    tid: int
    path: tuple


@dataclass(frozen=True)
class Route:
    at: str
    dst: str
    tunnels: tuple
    video: Optional[int] = None


@dataclass(frozen=True)
class Handoff:
    at: str
    tid: int
    dst: str
    to: int


@dataclass
class Topology:
    name: str
    nodes: List[Node]
    links: List[Link] = field(default_factory=list)
    tunnels: List[Tunnel] = field(default_factory=list)
    routes: List[Route] = field(default_factory=list)
    handoffs: List[Handoff] = field(default_factory=list)
    fields: List[tuple] = field(default_factory=list)
    ingress: Optional[str] = None
    egress: Optional[str] = None
    variant: Optional[str] = None

    @property
    def node_names(self):
        return [n.name for n in self.nodes]

    def node(self, name):
        return next(n for n in self.nodes if n.name == name)

    def link(self, source, target):
        for link in self.links:
            if (link.source, link.target) == (source, target):
                return link
        return None


def load_topology(path, variant=None):
    """Read and validate a topology file.

    Args:
        path (str): JSON file. A bare file name that does not exist is looked
            up among the bundled topologies, e.g. ``"abilene.json"``.
        variant (str, optional): Name of an entry of ``variants`` whose keys
            override the top-level ones.

    Returns:
        :class:`Topology`

    Raises:
        TopologyError: on any schema violation, with the JSON path at fault.
    """
    bundled = os.path.join(ASSETS, path)
    if not os.path.exists(path) and os.path.basename(path) == path and os.path.isfile(bundled):
        path = bundled
    with open(path, "r", encoding="utf-8") as f:
        try:
            conf = json.load(f)
        except json.JSONDecodeError as err:
            raise TopologyError("", f"{path} is not valid JSON ({err})")
    return parse_topology(conf, variant)


def _require(conf, key, path, kind):
    if key not in conf:
        raise TopologyError(path, f"missing key {key!r}")
    value = conf[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise TopologyError(f"{path}.{key}" if path else key, f"expected {kind.__name__}")
    return value


def _optional_number(conf, key, path, integer=False):
    if conf.get(key) is None:
        return None
    value = conf[key]
    where = f"{path}.{key}"
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise TopologyError(where, "expected a number")
    try:
        value = Fraction(str(value))
    except ValueError:
        raise TopologyError(where, f"expected a number, got {value!r}")
    if value < 0:
        raise TopologyError(where, "must be non-negative")
    if integer:
        if value.denominator != 1:
            raise TopologyError(where, "expected an integer")
        return value.numerator
    return value


def parse_topology(conf, variant=None):
    """Validate a topology dictionary, see :func:`load_topology`."""
    if not isinstance(conf, dict):
        raise TopologyError("", "a topology is a JSON object")
    conf = dict(conf)
    variants = conf.pop("variants", {}) or {}
    if variant is not None:
        if variant not in variants:
            raise TopologyError("variants", f"unknown variant {variant!r}, have {sorted(variants)}")
        conf.update(variants[variant])

    nodes = []
    raw_nodes = _require(conf, "nodes", "", list)
    if not raw_nodes:
        raise TopologyError("nodes", "at least one node is required")
    for i, n in enumerate(raw_nodes):
        where = f"nodes[{i}]"
        if not isinstance(n, dict):
            raise TopologyError(where, "expected an object")
        name = _require(n, "name", where, str)
        failure = _optional_number(n, "failure_pct", where)
        if failure is not None and failure > 100:
            raise TopologyError(f"{where}.failure_pct", "must be at most 100")
        nodes.append(Node(name, failure, _optional_number(n, "latency_ms", where, integer=True)))
    names = [n.name for n in nodes]
    if len(set(names)) != len(names):
        raise TopologyError("nodes", "node names must be unique")

    def known(name, where):
        if name not in names:
            raise TopologyError(where, f"unknown node {name!r}")
        return name

    links = []
    for i, link in enumerate(conf.get("links", [])):
        where = f"links[{i}]"
        links.append(
            Link(
                known(_require(link, "from", where, str), f"{where}.from"),
                known(_require(link, "to", where, str), f"{where}.to"),
                _optional_number(link, "bandwidth_mbps", where, integer=True),
            )
        )

    tunnels = []
    for i, tun in enumerate(conf.get("tunnels", [])):
        where = f"tunnels[{i}]"
        tid = _require(tun, "tid", where, int)
        if tid < 1:
            raise TopologyError(f"{where}.tid", "tunnel ids start at 1, 0 means untunneled")
        path = _require(tun, "path", where, list)
        if len(path) < 2:
            raise TopologyError(f"{where}.path", "a tunnel spans at least two nodes")
        if len(set(path)) != len(path):
            raise TopologyError(f"{where}.path", "a tunnel visits each node once")
        for j, hop in enumerate(path):
            known(hop, f"{where}.path[{j}]")
        tunnels.append(Tunnel(tid, tuple(path)))
    tids = [t.tid for t in tunnels]
    if len(set(tids)) != len(tids):
        raise TopologyError("tunnels", "tunnel ids must be unique")

    def known_tid(tid, where):
        if isinstance(tid, bool) or tid not in tids:
            raise TopologyError(where, f"unknown tunnel {tid!r}")
        return tid

    routes = []
    for i, r in enumerate(conf.get("routes", [])):
        where = f"routes[{i}]"
        at = known(_require(r, "at", where, str), f"{where}.at")
        dst = _require(r, "dst", where, str)
        chosen = tuple(
            known_tid(t, f"{where}.tunnels[{j}]")
            for j, t in enumerate(_require(r, "tunnels", where, list))
        )
        video = r.get("video")
        if video is not None:
            known_tid(video, f"{where}.video")
        routes.append(Route(at, dst, chosen, video))

    handoffs = []
    for i, h in enumerate(conf.get("handoffs", [])):
        where = f"handoffs[{i}]"
        handoffs.append(
            Handoff(
                known(_require(h, "at", where, str), f"{where}.at"),
                known_tid(_require(h, "tid", where, int), f"{where}.tid"),
                _require(h, "dst", where, str),
                known_tid(_require(h, "to", where, int), f"{where}.to"),
            )
        )

    fields = []
    for i, f in enumerate(conf.get("fields", [])):
        where = f"fields[{i}]"
        fname = _require(f, "name", where, str)
        if fname == "node":
            raise TopologyError(f"{where}.name", "the node field is implicit")
        fields.append((fname, expand_values(_require(f, "values", where, list))))
    declared = dict(fields)
    if tunnels and "tid" not in declared:
        fields.append(("tid", [str(i) for i in range(max(tids) + 1)]))
        declared = dict(fields)
    if tunnels:
        missing = [t for t in [0] + tids if str(t) not in declared["tid"]]
        if missing:
            raise TopologyError("fields", f"tid field lacks values {missing}")
    if routes or handoffs:
        if "dst" not in declared:
            raise TopologyError("fields", "routes need a dst field")
        for where, dst in [(f"routes[{i}].dst", r.dst) for i, r in enumerate(routes)] + [
            (f"handoffs[{i}].dst", h.dst) for i, h in enumerate(handoffs)
        ]:
            if dst not in declared["dst"]:
                raise TopologyError(where, f"{dst!r} is not a dst value")
    if any(r.video is not None for r in routes) and "vid" not in declared:
        raise TopologyError("fields", "video routes need a vid field")

    topology = Topology(
        name=conf.get("name", "topology"),
        nodes=nodes,
        links=links,
        tunnels=tunnels,
        routes=routes,
        handoffs=handoffs,
        fields=fields,
        ingress=conf.get("ingress"),
        egress=conf.get("egress"),
        variant=variant,
    )
    logger.debug(
        "loaded topology %s: %d nodes, %d links, %d tunnels",
        topology.name,
        len(nodes),
        len(links),
        len(tunnels),
    )
    return topology


def topology_schema(t):
    """Field schema of a topology: ``node`` then the declared fields."""
    return FieldSchema([("node", t.node_names)] + list(t.fields))


def _node_weight(t, name, flavor, semiring):
    node = t.node(name)
    i = t.node_names.index(name)
    try:
        if flavor == "rel":
            if node.failure_pct is None:
                raise TopologyError(f"nodes[{i}].failure_pct", "required by the rel flavor")
            return semiring.parse(node.failure_pct / 100)
        if flavor == "success":
            if node.failure_pct is None:
                raise TopologyError(f"nodes[{i}].failure_pct", "required by the success flavor")
            return semiring.parse(1 - node.failure_pct / 100)
        if flavor == "latency":
            if node.latency_ms is None:
                raise TopologyError(f"nodes[{i}].latency_ms", "required by the latency flavor")
            return semiring.parse(node.latency_ms)
    except AlgebraError as err:
        raise TopologyError(f"nodes[{i}]", str(err))
    return None


def _hop(t, schema, source, target, flavor, semiring):
    """``node := target``, weighted by the link bandwidth in the band flavor."""
    act = Assign(schema.field_index("node"), schema.value_code("node", target))
    if flavor != "band":
        return act
    link = t.link(source, target)
    if link is None or link.bandwidth_mbps is None:
        raise TopologyError("links", f"no bandwidth for {source}->{target}, required by band")
    try:
        return Weigh(semiring.parse(link.bandwidth_mbps), act)
    except AlgebraError as err:
        raise TopologyError("links", str(err))


def _tunnel_policy(t, schema, name, flavor, semiring):
    tid = schema.field_index("tid")

    def tid_is(n):
        return Test(tid, schema.value_code(tid, n))

    def set_tid(n):
        return Assign(tid, schema.value_code(tid, n))

    # Untunneled traffic picks a tunnel by destination.
    select = DROP
    for route in reversed([r for r in t.routes if r.at == name]):
        dst = schema.field_index("dst")
        pick = choice_of(set_tid(n) for n in route.tunnels)
        if route.video is not None:
            vid = schema.field_index("vid")
            is_video = Test(vid, schema.value_code(vid, "TRUE"))
            pick = if_then_else(is_video, set_tid(route.video), pick)
        select = if_then_else(Test(dst, schema.value_code(dst, route.dst)), pick, select)

    forward = DROP
    for tun in reversed([u for u in t.tunnels if name in u.path[:-1]]):
        nxt = tun.path[tun.path.index(name) + 1]
        hop = _hop(t, schema, name, nxt, flavor, semiring)
        forward = if_then_else(tid_is(tun.tid), hop, forward)
    ending = [u.tid for u in t.tunnels if u.path[-1] == name]
    if ending:
        forward = if_then_else(or_of(tid_is(n) for n in ending), set_tid(0), forward)
    for h in reversed([h for h in t.handoffs if h.at == name]):
        dst = schema.field_index("dst")
        cond = And(tid_is(h.tid), Test(dst, schema.value_code(dst, h.dst)))
        forward = if_then_else(cond, set_tid(h.to), forward)
    return if_then_else(tid_is(0), select, forward)


def topology_to_policy(t, flavor, schema, semiring):
    """Network policy ``(p ; dup)*`` of a topology.

    ``p`` dispatches on the current node. With tunnels, each node iterates
    its tunnelling logic until the packet leaves, ``(p_X)* ; node≠X``;
    without tunnels a node floods to all its out-links. Weights follow the
    flavor: one per node visit for ``rel``, ``success`` and ``latency``,
    one per forwarding action for ``band``, none for ``plain``.

    Args:
        t (Topology): Topology.
        flavor (str): One of :data:`FLAVORS`.
        schema (FieldSchema): Usually ``topology_schema(t)``.
        semiring (type): Semiring the weights are read into.

    Returns:
        Policy
    """
    if flavor not in FLAVORS:
        raise ValueError(f"Unknown flavor {flavor!r}, expected one of {FLAVORS}")
    node = schema.field_index("node")
    p = DROP
    for name in reversed(t.node_names):
        here = Test(node, schema.value_code(node, name))
        if t.tunnels:
            local = Seq(Star(_tunnel_policy(t, schema, name, flavor, semiring)), Filter(Not(here)))
        else:
            local = choice_of(
                _hop(t, schema, name, link.target, flavor, semiring)
                for link in t.links
                if link.source == name
            )
        weight = _node_weight(t, name, flavor, semiring)
        if weight is not None:
            local = Weigh(weight, local)
        p = if_then_else(here, local, p)
    return Star(Seq(p, Dup()))


def query_policy(t, net, schema, ingress=None, egress=None):
    """``ingress ; net ; egress`` with the topology's guards as defaults."""
    ingress = ingress if ingress is not None else t.ingress
    egress = egress if egress is not None else t.egress
    policy = net
    if egress:
        policy = Seq(policy, Filter(parse_predicate(egress, schema)))
    if ingress:
        policy = Seq(Filter(parse_predicate(ingress, schema)), policy)
    return policy
