"""Centering-based pronoun resolution over a cache model of attentional state.

The focus stack is kept as a baseline for comparison.
"""

from .cache import CacheItem, CacheState, MainMemory, RetrievalCue, RetrievalEvent, new_cache
from .corpus import CorpusFile, CorpusIOError, dump_corpus, load_corpus, load_fixture, parse_corpus
from .engine import (Anchor, CenteringResult, EngineConfig, exhaustive_anchors, process_discourse,
                     propose_anchor_stream, resolve_utterance, states_by_utterance)
from .model import (TRANSITIONS, Agreement, CenteringState, ContractViolation, Discourse, DiscourseEntity,
                    Evidence, Form, GramFunction, ReferenceMarker, Relation, SegmentBoundary, Transition,
                    Utterance, ValidationError, classify_transition, rank_cf)
from .retrieval import PopReport, PopSurvey, classify_return_pop, competing_antecedents, pop_survey
from .segmenter import detect_boundaries, link_return_target, split_utterance_units
from .stack import ConfigurationType, FocusStack, classify_configuration, replay
from .stats import (DistributionTable, ModelComparison, compare_models, configurations, emit_annotations,
                    transition_distribution)

__version__ = "0.1.0"
