"""Deterministic report serialization.

JSON output uses sorted keys, and every count-like integer is emitted as a
decimal string: copy counts and bounds routinely pass 2^53 and would be
mangled by consumers that parse numerics as doubles.  CSV is only defined
for the tabular documents (growth reports and oracle comparisons).
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .blowup import BlowupResult, ExponentProfile
from .embeddings import CopyFamily
from .errors import UnsupportedError
from .extremal import ComparisonRecord, ExSearchResult, GrowthReport
from .pipeline import PipelineReport, SparseReport, StructuredReport
from .proof import ProcedureOutcome, TraceStep
from .treegame import EmbedFailure, EmbeddingCertificate
from .graphs import Graph, serialize_graph


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(serialize_graph(g).encode()).hexdigest()


def to_jsonable(doc: Any) -> Any:
    if isinstance(doc, ExponentProfile):
        out = {"status": doc.status, "t_used": doc.t_used}
        if doc.status == "Finite":
            out["r"] = doc.r
            out["witness_U"] = list(doc.witness_U)
        return out
    if isinstance(doc, BlowupResult):
        return {"graph6": serialize_graph(doc.graph), "n": doc.graph.n,
                "edge_count": str(doc.graph.edge_count),
                "phi": list(doc.phi), "copy_index": list(doc.copy_index)}
    if isinstance(doc, ExSearchResult):
        return {"n": doc.n, "max_count": str(doc.max_count),
                "witness": serialize_graph(doc.witness),
                "graphs_examined": doc.graphs_examined, "source": doc.source}
    if isinstance(doc, GrowthReport):
        return {"r_claimed": doc.r_claimed,
                "rows": [{"n": n, "count": str(c)} for n, c in doc.rows],
                "slopes": list(doc.slopes),
                "strictly_increasing": doc.strictly_increasing}
    if isinstance(doc, ComparisonRecord):
        return {"n": doc.n, "oracle": str(doc.oracle_count),
                "construction": str(doc.construction_count)}
    if isinstance(doc, CopyFamily):
        return {"host_hash": graph_hash(doc.host),
                "pattern_hash": graph_hash(doc.pattern),
                "embeddings": [list(e.map) for e in doc.embeddings],
                "label_partition": None if doc.label_partition is None
                else [list(c) for c in doc.label_partition],
                "truncated": doc.truncated}
    if isinstance(doc, TraceStep):
        return {"i": doc.i, "j": doc.j, "branch": doc.branch,
                "family_before": doc.family_before, "family_after": doc.family_after,
                "b_sizes": [{"edge": f"{u}->{w}", "size": s} for u, w, s in doc.b_sizes],
                "chosen_edge": None if doc.chosen_edge is None else list(doc.chosen_edge)}
    if isinstance(doc, ProcedureOutcome):
        out = {"kind": doc.kind, "l": doc.l,
               "remaining_red": [list(e) for e in doc.remaining_red],
               "family_sizes": [len(f) for f in doc.families],
               "trace": [to_jsonable(s) for s in doc.trace]}
        if doc.sparse_bound is not None:
            out["sparse_bound"] = {
                "family_size": str(doc.sparse_bound.family_size),
                "bound": str(doc.sparse_bound.bound),
                "component_count": doc.sparse_bound.component_count,
                "ok": doc.sparse_bound.ok}
        return out
    if isinstance(doc, EmbeddingCertificate):
        return {"tree_map": list(doc.tree_map.map),
                "x_partition": [list(b) for b in doc.x_partition],
                "steps": [{"block": list(s.block), "region": s.region,
                           "family_index": s.family_index,
                           "copy_map": list(s.copy_map),
                           "attachment": None if s.attachment is None
                           else list(s.attachment)} for s in doc.steps]}
    if isinstance(doc, EmbedFailure):
        return {"step_index": doc.step_index, "block": list(doc.block),
                "family_index": doc.family_index, "reason": doc.reason}
    if isinstance(doc, SparseReport):
        return {"component_count": doc.component_count,
                "family_size": str(doc.family_size), "bound": str(doc.bound),
                "bound_ok": doc.bound_ok, "r_status": doc.r_status,
                "r": doc.r, "a_le_r": doc.a_le_r}
    if isinstance(doc, StructuredReport):
        return {"remaining_red": [list(e) for e in doc.remaining_red],
                "scc_parts": [list(p) for p in doc.scc_parts],
                "A": list(doc.A), "W": list(doc.W), "U": list(doc.U),
                "gamma_n": doc.gamma_n, "gamma_contains_T": doc.gamma_contains_T,
                "certificate": None if doc.certificate is None
                else to_jsonable(doc.certificate),
                "failure": None if doc.failure is None else to_jsonable(doc.failure)}
    if isinstance(doc, PipelineReport):
        return {"n": doc.n, "h": doc.h, "t": doc.t, "e_H": doc.e_H,
                "copy_count": str(doc.copy_count), "flags": list(doc.flags),
                "rainbow_size": doc.rainbow_size, "degeneracy": doc.degeneracy,
                "popular_order": None if doc.popular_order is None
                else list(doc.popular_order),
                "popular_size": doc.popular_size,
                "outcome_kind": doc.outcome_kind, "l": doc.l,
                "trace": [to_jsonable(s) for s in doc.trace],
                "thresholds": [{"name": r.name, "size": str(r.size), "ok": r.ok}
                               for r in doc.thresholds],
                "sparse": None if doc.sparse is None else to_jsonable(doc.sparse),
                "structured": None if doc.structured is None
                else to_jsonable(doc.structured)}
    if isinstance(doc, dict):
        return {k: to_jsonable(v) for k, v in doc.items()}
    if isinstance(doc, (list, tuple)):
        return [to_jsonable(v) for v in doc]
    return doc


def _csv_rows(doc: Any):
    if isinstance(doc, GrowthReport):
        header = ("n", "count", "slope")
        rows = [(str(doc.rows[0][0]), str(doc.rows[0][1]), "")]
        rows.extend((str(n), str(c), repr(s))
                    for (n, c), s in zip(doc.rows[1:], doc.slopes))
        return header, rows
    if isinstance(doc, ComparisonRecord):
        return ("n", "oracle", "construction"), [
            (str(doc.n), str(doc.oracle_count), str(doc.construction_count))]
    raise UnsupportedError(f"no CSV form for {type(doc).__name__}")


def report_emit(document: Any, format: str = "json") -> str:
    """Serialize a report document deterministically."""
    if format == "json":
        return json.dumps(to_jsonable(document), sort_keys=True, indent=2) + "\n"
    if format == "csv":
        header, rows = _csv_rows(document)
        lines = [",".join(header)]
        lines.extend(",".join(r) for r in rows)
        return "\n".join(lines) + "\n"
    raise UnsupportedError(f"unknown format {format!r}")


def trace_jsonl(outcome: ProcedureOutcome) -> str:
    """One JSON record per refinement iteration."""
    return "".join(json.dumps(to_jsonable(step), sort_keys=True) + "\n"
                   for step in outcome.trace)
