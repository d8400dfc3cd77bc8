"""Dynamic vertex cover and approximate matching structures."""

from ._core import (
    CapExceeded,
    Graph,
    PhasedMatcher,
    SqrtNMatcher,
    StreamError,
    VertexCover,
    WorstCaseMatcher,
    generate_stream,
    max_matching,
    min_vertex_cover,
    parse_stream,
    run_experiment,
    tightness_fixture,
)

__all__ = [
    "CapExceeded",
    "Graph",
    "PhasedMatcher",
    "SqrtNMatcher",
    "StreamError",
    "VertexCover",
    "WorstCaseMatcher",
    "generate_stream",
    "max_matching",
    "min_vertex_cover",
    "parse_stream",
    "run_experiment",
    "tightness_fixture",
]
