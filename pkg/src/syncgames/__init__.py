"""Synchronous non-local games: transformations, game-algebra verification,
and exact correlation transport."""

from .game import (
    Game,
    Graph,
    StructureReport,
    parse_game,
    parse_graph,
    serialize_game,
    serialize_graph,
    validate_game,
)
from .zoo import complete_graph, cycle_graph, edgeless_graph, hom_game, iso_game, trivial_sync
from .transforms import (
    ZeroRelationSpec,
    bisynchronize,
    symmetrize,
    three_output_reduce,
    zero_relation_normalize,
    zr_to_game,
)

__all__ = [
    "Game",
    "Graph",
    "StructureReport",
    "validate_game",
    "parse_game",
    "serialize_game",
    "parse_graph",
    "serialize_graph",
    "trivial_sync",
    "hom_game",
    "iso_game",
    "complete_graph",
    "cycle_graph",
    "edgeless_graph",
    "symmetrize",
    "bisynchronize",
    "three_output_reduce",
    "zero_relation_normalize",
    "zr_to_game",
    "ZeroRelationSpec",
]

__version__ = "0.1.0"
