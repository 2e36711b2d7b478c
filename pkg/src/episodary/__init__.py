"""Mining closed episodes with simultaneous events from a single event sequence."""

from .episode import (Episode, count_same_node_subepisodes, has_cycle, lex_leq, parse_episode,
                      serialize_episode, transitive_closure)
from .instance import (InstanceSet, augment, augment_equal, build_singletons, filter_proper,
                       filter_weak, instance_closure, instances_of, support)
from .miner import ClosedStore, Miner, MinerConfig, MinerStats, mine, post_filter
from .sequence import (Sequence, SequenceEvent, from_pairs, from_string, gen_planted, parse_sequence,
                       serialize_sequence, subsequence)
from .subepisode import similar, step, subepisode

__version__ = "0.1.0"

__all__ = [
    "Episode", "InstanceSet", "Sequence", "SequenceEvent", "ClosedStore", "Miner", "MinerConfig",
    "MinerStats", "augment", "augment_equal", "build_singletons", "count_same_node_subepisodes",
    "filter_proper", "filter_weak", "from_pairs", "from_string", "gen_planted", "has_cycle",
    "instance_closure", "instances_of", "lex_leq", "mine", "parse_episode", "parse_sequence",
    "post_filter", "serialize_episode", "serialize_sequence", "similar", "step", "subepisode",
    "subsequence", "support", "transitive_closure",
]
