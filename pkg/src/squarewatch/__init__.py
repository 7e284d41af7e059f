"""Structure and distance-2 degree checks for squares of regular graphs."""

from .analysis import Report, analyze, batch, lemma_suite
from .decomposition import decompose, detect_peanut, detect_snake
from .graph import Graph, dist2_profile, graph_power
from .io import decode_graph6, encode_graph6

__all__ = [
    "Graph",
    "Report",
    "analyze",
    "batch",
    "decode_graph6",
    "decompose",
    "detect_peanut",
    "detect_snake",
    "dist2_profile",
    "encode_graph6",
    "graph_power",
    "lemma_suite",
]
__version__ = "0.1.0"
