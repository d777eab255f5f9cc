"""Rendering of verdicts as JSON documents and human summaries."""
import json

import pandas as pd

from .verify import UNSAFE


def weight_to_json(weight):
    """Exact text of a weight plus a float for plotting, None for no weight."""
    if weight is None:
        return None
    try:
        approx = weight.to_float()
    except (TypeError, ValueError):
        approx = None
    return {"value": str(weight), "float": approx}


def hops(witness, schema):
    """One record per packet of the witness guarded string, input first."""
    records = []
    for i, packet in enumerate(witness.guarded_string.packets):
        record = {"step": i}
        record.update(schema.packet_dict(packet))
        records.append(record)
    return records


def _collapse(values):
    out = []
    for v in values:
        if not out or out[-1] != v:
            out.append(v)
    return out


def node_path(witness, schema, field="node"):
    """Sequence of ``field`` values visited, consecutive repeats merged."""
    if field not in schema.fields:
        return []
    return _collapse(r[field] for r in hops(witness, schema))


def tunnels(witness, schema):
    """Tunnel ids the witness travels in, in order, untunneled ``0`` left out."""
    if "tid" not in schema.fields:
        return []
    return [int(t) for t in _collapse(r["tid"] for r in hops(witness, schema)) if t != "0"]


def verdict_to_dict(verdict, schema, semiring, query=None):
    """JSON-ready verdict with the decoded witness."""
    doc = {
        "query": query,
        "semiring": semiring.name,
        "bound": str(verdict.bound),
        "verdict": verdict.kind,
    }
    if verdict.total_weight is not None:
        doc["total_weight"] = weight_to_json(verdict.total_weight)
    w = verdict.witness
    if w is not None:
        doc["witness"] = {
            "input_packet": schema.packet_dict(w.input_packet),
            "history": [schema.packet_dict(p) for p in w.history],
            "guarded_string": w.guarded_string.format(schema),
            "weight": weight_to_json(w.weight),
        }
        doc["hops"] = hops(w, schema)
        doc["tunnels"] = tunnels(w, schema)
        doc["path"] = node_path(w, schema)
    return doc


def format_verdict(verdict, schema, semiring, query=None):
    """Human-readable summary of a verdict with the witness hop table."""
    relation = "⊑" if verdict.kind in ("safe", UNSAFE) else "⊒"
    lines = [f"{verdict.kind.upper()}  ({semiring.name}, weights {relation} {verdict.bound})"]
    if query:
        lines.append(f"query: {query}")
    if verdict.total_weight is not None:
        lines.append(f"total weight: {verdict.total_weight}")
    w = verdict.witness
    if w is not None:
        approx = weight_to_json(w.weight)["float"]
        shown = f"{w.weight}" if approx is None else f"{w.weight} (≈ {approx:.6g})"
        lines.append(f"witness weight: {shown}")
        lines.append(f"witness: {w.guarded_string.format(schema)}")
        path = node_path(w, schema)
        if path:
            lines.append("path: " + " -> ".join(path))
        tids = tunnels(w, schema)
        if tids:
            lines.append("tunnels: " + "·".join(str(t) for t in tids))
        table = pd.DataFrame(hops(w, schema)).set_index("step")
        lines.append(table.to_string())
    return "\n".join(lines)


def dumps(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False)
