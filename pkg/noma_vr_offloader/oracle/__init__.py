"""Brute-force certification of env-core on tiny instances."""

from .certify import Certification, certify_instance
from .objective import EpisodeLog, recompute_objective, run_actions, state_objective
from .search import SearchResult, SequenceScore, exhaustive_search, replay_sequence, sequence_objective, slot_table
from .tape import TinyInstance, load_instance, make_tiny_instance, save_instance, tiny_config

__all__ = [
    "Certification",
    "EpisodeLog",
    "SearchResult",
    "SequenceScore",
    "TinyInstance",
    "certify_instance",
    "exhaustive_search",
    "load_instance",
    "make_tiny_instance",
    "recompute_objective",
    "replay_sequence",
    "run_actions",
    "save_instance",
    "sequence_objective",
    "slot_table",
    "state_objective",
    "tiny_config",
]
