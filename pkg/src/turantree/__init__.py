"""Exact growth exponents, extremal constructions, and refinement analysis
for maximising pattern-copy counts in graphs with a forbidden tree."""

__version__ = "0.1.0"

from .blowup import (BlowupResult, ExponentProfile, ProfileCheck, blow_up,
                     exponent_r, verify_profile)
from .cache import CacheRecord, cache_lookup_or_compute
from .digraph import ASelection, ColouredDigraph, colour_digraph, select_A
from .embeddings import (CopyFamily, Embedding, automorphism_count,
                         contains_copy, count_copies, count_injective_homs,
                         list_copies)
from .errors import (InternalConsistencyError, ParseError, TuranTreeError,
                     UnsupportedError, ValidationError)
from .extremal import (ComparisonRecord, ExSearchResult, GrowthReport,
                       brute_force_ex, growth_report, lower_bound_construction,
                       nonisomorphic_graphs, oracle_vs_construction)
from .graphs import (ComponentPartition, Graph, VertexOrdering, canonical_form,
                     connected_components, degeneracy_ordering, is_tree,
                     parse_graph, permute_graph, serialize_graph)
from .pipeline import PipelineReport, PipelineStageError, run_pipeline
from .proof import (ProcedureConfig, ProcedureOutcome, RainbowResult,
                    popular_ordering, rainbow_partition, refine_families)
from .reports import report_emit, trace_jsonl
from .treegame import EmbedFailure, EmbeddingCertificate, embed_tree

__all__ = [
    "ASelection", "BlowupResult", "CacheRecord", "ColouredDigraph",
    "ComparisonRecord", "ComponentPartition", "CopyFamily", "Embedding",
    "EmbedFailure", "EmbeddingCertificate", "ExponentProfile",
    "ExSearchResult", "Graph", "GrowthReport", "InternalConsistencyError",
    "ParseError", "PipelineReport", "PipelineStageError", "ProcedureConfig",
    "ProcedureOutcome", "ProfileCheck", "RainbowResult", "TuranTreeError",
    "UnsupportedError", "ValidationError", "VertexOrdering",
    "automorphism_count", "blow_up", "brute_force_ex",
    "cache_lookup_or_compute", "canonical_form", "colour_digraph",
    "connected_components", "contains_copy", "count_copies",
    "count_injective_homs", "degeneracy_ordering", "embed_tree", "exponent_r",
    "growth_report", "is_tree", "list_copies", "lower_bound_construction",
    "nonisomorphic_graphs", "oracle_vs_construction", "parse_graph",
    "permute_graph", "popular_ordering", "rainbow_partition", "refine_families",
    "report_emit", "run_pipeline", "select_A", "serialize_graph",
    "trace_jsonl", "verify_profile",
]
