"""Core discourse types, Cf ranking and transition classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence


class ValidationError(ValueError):
    """Raised when annotated input violates a structural constraint."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ContractViolation(AssertionError):
    """Raised when a caller breaks an operation's precondition."""


class Form(str, Enum):
    PRONOUN = "pronoun"
    ZERO_PRONOUN = "zero-pronoun"
    DESCRIPTION = "description"
    PROPER_NAME = "proper-name"
    DEICTIC_NP = "deictic-np"

    @property
    def is_pronominal(self) -> bool:
        return self in (Form.PRONOUN, Form.ZERO_PRONOUN)


class GramFunction(str, Enum):
    SUBJECT = "subject"
    DIRECT_OBJECT = "direct-object"
    INDIRECT_OBJECT = "indirect-object"
    OBLIQUE = "oblique"
    OTHER = "other"


class Tense(str, Enum):
    SIMPLE_PAST = "simple-past"
    PAST_IMPERFECT = "past-imperfect"
    PRESENT = "present"
    FUTURE = "future"
    OTHER = "other"
    UNMARKED = "unmarked"


class Transition(str, Enum):
    CONTINUE = "CONTINUE"
    RETAIN = "RETAIN"
    SMOOTH_SHIFT = "SMOOTH-SHIFT"
    ROUGH_SHIFT = "ROUGH-SHIFT"
    NO_CB = "NO-CB"

    @property
    def rank(self) -> int:
        return _TRANSITION_ORDER.index(self) + 1


_TRANSITION_ORDER = [
    Transition.CONTINUE,
    Transition.RETAIN,
    Transition.SMOOTH_SHIFT,
    Transition.ROUGH_SHIFT,
    Transition.NO_CB,
]
TRANSITIONS = tuple(_TRANSITION_ORDER)


class Relation(str, Enum):
    SISTER = "sister"
    SUBORDINATE = "subordinate"
    RETURN_POP = "return-pop"
    INTERRUPTION = "interruption"
    UNKNOWN = "unknown"


class Evidence(str, Enum):
    CUE_NOW = "cue-now"
    CUE_ANYWAY = "cue-anyway"
    CLARIFICATION = "clarification-question"
    HUMAN = "human-judgement"
    TASK_SUBGOAL = "task-subgoal"
    TENSE_CHANGE = "tense-change"
    IRU = "iru"


@dataclass(frozen=True)
class Agreement:
    gender: str = "unknown"  # m / f / n / unknown
    number: str = "sg"  # sg / pl
    person: int = 3

    def __post_init__(self):
        if self.gender not in ("m", "f", "n", "unknown"):
            raise ValidationError(f"bad gender {self.gender!r}")
        if self.number not in ("sg", "pl"):
            raise ValidationError(f"bad number {self.number!r}")
        if self.person not in (1, 2, 3):
            raise ValidationError(f"bad person {self.person!r}")

    def compatible(self, other: "Agreement") -> bool:
        """Unification test; an unknown gender unifies with anything."""
        if self.number != other.number or self.person != other.person:
            return False
        return "unknown" in (self.gender, other.gender) or self.gender == other.gender


@dataclass(frozen=True)
class MarkerIndex:
    kind: str  # "A" pronominal, "X" indefinite, "surface"
    value: object

    def __str__(self):
        return f"{self.kind}{self.value}" if self.kind in ("A", "X") else str(self.value)


@dataclass(frozen=True)
class ReferenceMarker:
    id: str
    surface: str
    form: Form
    agreement: Agreement = field(default_factory=Agreement)
    gram_function: str = GramFunction.OTHER.value
    selectional_tags: frozenset = frozenset()
    discourse_tags: frozenset = frozenset()
    contraindices: frozenset = frozenset()
    gold_entity: Optional[str] = None
    indefinite: bool = False
    pleonastic: bool = False
    clause: int = 0
    position: int = 0
    conjuncts: tuple = ()
    index: Optional[MarkerIndex] = None

    @property
    def required_tags(self) -> frozenset:
        return self.selectional_tags | self.discourse_tags


@dataclass(frozen=True)
class DiscourseEntity:
    id: str
    canonical: str
    agreement: Agreement = field(default_factory=Agreement)
    selectional_tags: frozenset = frozenset()
    first_mention: int = 0
    prior: bool = False
    aliases: tuple = ()

    def satisfies(self, marker: ReferenceMarker) -> bool:
        """Agreement plus selectional compatibility with ``marker``."""
        return self.agreement.compatible(marker.agreement) and marker.required_tags <= self.selectional_tags


@dataclass(frozen=True)
class PropositionTag:
    id: str
    predicate: str
    args: tuple = ()


@dataclass(frozen=True)
class Utterance:
    index: int
    speaker: str = ""
    markers: tuple = ()
    predicates: tuple = ()
    cue_words: tuple = ()
    tense: Tense = Tense.UNMARKED
    is_prompt: bool = False
    prev_override: Optional[int] = None
    label: str = ""
    text: str = ""
    clarification: bool = False
    subgoal: bool = False
    gold_transition: Optional[Transition] = None

    def __post_init__(self):
        if self.index < 1:
            raise ValidationError("utterance index must be positive", f"utterance {self.index}")
        if self.is_prompt and self.markers:
            raise ValidationError("a prompt carries no markers", f"utterance {self.index}")
        if self.prev_override is not None and not 1 <= self.prev_override < self.index:
            raise ValidationError("prev_override must precede the utterance", f"utterance {self.index}")

    @property
    def name(self) -> str:
        return self.label or str(self.index)

    @property
    def first_cue(self) -> Optional[str]:
        return self.cue_words[0].lower() if self.cue_words else None


@dataclass(frozen=True)
class SegmentBoundary:
    before_utterance: int
    relation: Relation = Relation.UNKNOWN
    evidence: Evidence = Evidence.HUMAN
    return_target: Optional[str] = None
    segment: Optional[str] = None
    link_evidence: Optional[str] = None

    def __post_init__(self):
        if (self.return_target is not None) and self.relation is not Relation.RETURN_POP:
            raise ValidationError("return_target only allowed on return-pop", f"boundary {self.before_utterance}")


@dataclass(frozen=True)
class Discourse:
    id: str
    utterances: tuple = ()
    boundaries: tuple = ()
    entities: Mapping[str, DiscourseEntity] = field(default_factory=dict)
    sister_segments: bool = False
    initial_segment: str = "1"
    notes: str = ""

    def __post_init__(self):
        for i, u in enumerate(self.utterances, start=1):
            if u.index != i:
                raise ValidationError(f"utterance indices must be contiguous from 1, got {u.index}",
                                      f"{self.id}.utterances[{i - 1}]")
        n = len(self.utterances)
        for b in self.boundaries:
            if not 1 <= b.before_utterance <= n:
                raise ValidationError(f"boundary before {b.before_utterance} is outside the discourse", self.id)

    def utterance(self, index: int) -> Utterance:
        return self.utterances[index - 1]

    def by_label(self, label: str) -> Utterance:
        for u in self.utterances:
            if u.name == label:
                return u
        raise KeyError(label)

    def without_boundaries(self) -> "Discourse":
        return Discourse(self.id, self.utterances, (), self.entities, self.sister_segments,
                         self.initial_segment, self.notes)


NIL = None


@dataclass(frozen=True)
class CenteringState:
    utterance: int
    cb: Optional[str]
    cf: tuple
    transition: Transition

    def __post_init__(self):
        if self.cb is not None and self.cb not in self.cf:
            raise ContractViolation(f"Cb {self.cb!r} is not in Cf {self.cf!r}")

    @property
    def cp(self) -> Optional[str]:
        return self.cf[0] if self.cf else None


INITIAL_STATE = CenteringState(0, None, (), Transition.NO_CB)


@dataclass(frozen=True)
class RankingConfig:
    """Grammatical-function order used to rank the Cf list; earlier ranks higher."""

    order: tuple = tuple(g.value for g in GramFunction)

    def rank_of(self, marker: ReferenceMarker) -> int:
        try:
            return self.order.index(str(getattr(marker.gram_function, "value", marker.gram_function)))
        except ValueError:
            raise ValidationError(f"unknown grammatical function {marker.gram_function!r}",
                                  f"marker {marker.id}") from None


DEFAULT_RANKING = RankingConfig()


def marker_sort_key(marker: ReferenceMarker, ranking: RankingConfig = DEFAULT_RANKING):
    return (marker.clause, ranking.rank_of(marker), marker.position)


def rank_cf(markers: Iterable[ReferenceMarker], bindings: Mapping[str, Optional[str]] = None,
            ranking: RankingConfig = DEFAULT_RANKING) -> tuple:
    """Order the entities realized by ``markers``.

    Main-clause markers come before subordinate-clause markers; within a clause
    grammatical function decides and surface position breaks ties. An entity
    realized twice keeps its best position. ``bindings`` maps marker ids to
    entities; when omitted, gold entities are used.
    """
    out = []
    for m in sorted(markers, key=lambda m: marker_sort_key(m, ranking)):
        ent = bindings.get(m.id) if bindings is not None else m.gold_entity
        if ent is not None and ent not in out:
            out.append(ent)
    return tuple(out)


def rank_utterance_cf(u: Utterance, ranking: RankingConfig = DEFAULT_RANKING,
                      bindings: Mapping[str, Optional[str]] = None,
                      previous_cf: Sequence[str] = ()) -> tuple:
    """Cf of a whole utterance; a prompt passes on ``previous_cf`` untouched."""
    if u.is_prompt:
        return tuple(previous_cf)
    return rank_cf(u.markers, bindings, ranking)


def transition_of(prev_cb: Optional[str], cb: Optional[str], cp: Optional[str]) -> Transition:
    if cb is None:
        return Transition.NO_CB
    same = prev_cb is None or cb == prev_cb
    if same:
        return Transition.CONTINUE if cb == cp else Transition.RETAIN
    return Transition.SMOOTH_SHIFT if cb == cp else Transition.ROUGH_SHIFT


def classify_transition(prev: CenteringState, cb: Optional[str], cp: Optional[str],
                        cf: Optional[Sequence[str]] = None) -> Transition:
    """Centering transition from ``prev`` to a state with ``cb`` and preferred center ``cp``.

    An undefined previous Cb counts as matching, so the first Cb after a NO-CB
    utterance yields CONTINUE or RETAIN.
    """
    if cf is not None:
        if cb is not None and cb not in cf:
            raise ContractViolation(f"proposed Cb {cb!r} not realized in Cf {list(cf)!r}")
        if cf and cp != cf[0]:
            raise ContractViolation("cp must head the proposed Cf")
    return transition_of(prev.cb, cb, cp)


def project_cf_complex(main: CenteringState, subordinates: Sequence[CenteringState]) -> tuple:
    out = list(main.cf)
    for sub in subordinates:
        out.extend(e for e in sub.cf if e not in out)
    return tuple(out)
