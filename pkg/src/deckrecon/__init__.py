"""Exact deck-operator calculus for edge decks and modified edge decks."""

from .canon import CanonicalCode, canonical_form, canonical_graph, is_isomorphic
from .catalog import Catalog, DeckVector, complement_map, enumerate_catalog, get_catalog, singleton
from .graph import Graph, add_edges, complement, remove_edges, slot, slot_pair
from .graph6 import Graph6Error
from .graph6 import decode as graph6_decode
from .graph6 import encode as graph6_encode
from .operators import OperatorMatrix, apply, build_D, build_d, build_Delta, deck_of_collection
from .reconstruct import (complement_equivalence, lovasz_rank_check, reconstruct_deck,
                          theorem_pipeline, verify_theorem)

__version__ = "0.1.0"
