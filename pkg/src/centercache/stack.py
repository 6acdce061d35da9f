"""Focus-space stack baseline with hierarchical recency and the configuration grid."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping, Optional

from .model import ContractViolation, Discourse, Relation, SegmentBoundary

ROOT = "<root>"


class StackError(ValueError):
    """A boundary cannot be applied to the current stack."""


class NotClassifiable(ValueError):
    """The utterance pair does not fall in any configuration cell."""


@dataclass
class FocusSpace:
    segment: str
    opened_at: int
    entities: set = field(default_factory=set)


class FocusStack:
    def __init__(self, base_segment: Optional[str] = None, opened_at: int = 1):
        self.spaces: list[FocusSpace] = [FocusSpace(ROOT, 0)]
        self.popped_log: list[tuple[FocusSpace, int]] = []
        self.opened: list[str] = [ROOT]
        if base_segment is not None:
            self.push(base_segment, opened_at)

    @property
    def top(self) -> FocusSpace:
        return self.spaces[-1]

    def segment_ids(self) -> list[str]:
        return [s.segment for s in self.spaces]

    def push(self, segment: str, at: int):
        self.spaces.append(FocusSpace(segment, at))
        self.opened.append(segment)

    def pop(self, at: int) -> FocusSpace:
        if len(self.spaces) == 1:
            raise StackError("cannot pop the discourse root space")
        space = self.spaces.pop()
        self.popped_log.append((space, at))
        return space

    def _new_id(self, b: SegmentBoundary) -> str:
        return b.segment or f"S{b.before_utterance}"

    def apply_boundary(self, b: SegmentBoundary) -> "FocusStack":
        """Subordinate pushes, sister pops then pushes, return-pop pops to its target."""
        at = b.before_utterance
        if b.relation is Relation.RETURN_POP:
            target = b.return_target
            if target not in self.segment_ids()[1:]:
                raise StackError(f"return target {target!r} is not on the stack at {at}")
            while self.top.segment != target:
                self.pop(at)
        elif b.relation is Relation.SISTER:
            if len(self.spaces) > 1:
                self.pop(at)
            self.push(self._new_id(b), at)
        else:
            self.push(self._new_id(b), at)
        return self

    def add_entities(self, entities: Iterable[str]):
        self.top.entities.update(entities)

    def accessible_entities(self) -> set:
        out = set()
        for s in self.spaces:
            out |= s.entities
        return out


def accessible_entities(s: FocusStack) -> set:
    return s.accessible_entities()


def gold_entities(u) -> set:
    return {m.gold_entity for m in u.markers if m.gold_entity}


@dataclass(frozen=True)
class StackStep:
    utterance: int
    segment: str
    stack: tuple  # segment ids bottom to top, after this utterance's boundary
    accessible: frozenset  # entities accessible when the utterance is interpreted
    boundary: Optional[SegmentBoundary] = None
    popped: tuple = ()  # segments popped at this utterance


@dataclass
class StackHistory:
    steps: list

    def step(self, index: int) -> StackStep:
        return self.steps[index - 1]

    def segment_of(self, index: int) -> str:
        return self.step(index).segment


def normalize(b: SegmentBoundary, d: Discourse) -> SegmentBoundary:
    """Corpora whose segments are all sisters turn every push into a sister boundary."""
    if d.sister_segments and b.relation in (Relation.SUBORDINATE, Relation.INTERRUPTION, Relation.UNKNOWN):
        return SegmentBoundary(b.before_utterance, Relation.SISTER, b.evidence, None, b.segment)
    return b


def replay(d: Discourse, boundaries: Iterable[SegmentBoundary] = None,
           entities_of: Callable = gold_entities,
           resolve_target: Callable = None) -> StackHistory:
    """Run the stack over ``d`` and snapshot it at every utterance.

    ``resolve_target(boundary, stack)`` supplies a return target for return-pop
    boundaries that lack one.
    """
    bmap: Mapping[int, SegmentBoundary] = {b.before_utterance: b for b in (d.boundaries if boundaries is None else boundaries)}
    stack = FocusStack(d.initial_segment)
    steps = []
    for u in d.utterances:
        b = bmap.get(u.index)
        popped = ()
        if b is not None:
            if b.relation is Relation.RETURN_POP and b.return_target is None:
                if resolve_target is None:
                    raise StackError(f"return-pop before {u.index} has no target")
                b = SegmentBoundary(b.before_utterance, b.relation, b.evidence,
                                    resolve_target(b, stack), b.segment, b.link_evidence)
            b = normalize(b, d)
            n = len(stack.popped_log)
            stack.apply_boundary(b)
            popped = tuple(s.segment for s, _ in stack.popped_log[n:])
        access = frozenset(stack.accessible_entities())
        steps.append(StackStep(u.index, stack.top.segment, tuple(stack.segment_ids()), access, b, popped))
        stack.add_entities(entities_of(u))
    return StackHistory(steps)


def is_hierarchically_recent(i: int, j: int, history: StackHistory) -> bool:
    """True when utterance ``i`` is the last of its space still on the stack at ``j``."""
    n = len(history.steps)
    if not (1 <= i < j <= n):
        raise ContractViolation(f"hierarchical recency needs 1 <= i < j <= {n}, got {i}, {j}")
    seg = history.segment_of(i)
    if seg not in history.step(j).stack:
        return False
    return all(history.segment_of(k) != seg for k in range(i + 1, j))


class ConfigurationType(str, Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    TYPE3 = "Type3"
    TYPE4 = "Type4"
    TYPE5 = "Type5"
    TYPE6 = "Type6"
    TYPE7 = "Type7"
    TYPE8 = "Type8"
    WITHIN_SEGMENT = "within-segment"


BOUNDARY_KINDS = ("sister", "subordinate", "pop-hierarchical", "pop-linear")
_GRID = {
    (kind, form): ConfigurationType(f"Type{2 * col + row + 1}")
    for col, kind in enumerate(BOUNDARY_KINDS)
    for row, form in enumerate(("pronoun", "full-np"))
}


@dataclass(frozen=True)
class Configuration:
    value: ConfigurationType
    boundary_kind: Optional[str]
    cb_form: Optional[str]


def configuration_cell(boundary_kind: str, cb_form: str) -> ConfigurationType:
    return _GRID[(boundary_kind, cb_form)]


def boundary_kind(i: int, j: int, history: StackHistory) -> Optional[str]:
    """Column of the configuration grid for the pair (i, j), None inside a segment."""
    b = history.step(j).boundary
    if b is None:
        return None
    if b.relation is Relation.SISTER:
        return "sister"
    if b.relation is Relation.RETURN_POP:
        if is_hierarchically_recent(i, j, history):
            return "pop-hierarchical"
        if history.segment_of(i) in history.step(j).popped:
            return "pop-linear"
        raise NotClassifiable(f"{i} is neither hierarchically recent for {j} nor in a popped space")
    return "subordinate"


def classify_configuration(i: int, j: int, d: Discourse, history: StackHistory,
                           cb_form: Optional[str] = None,
                           prev_cb: Optional[str] = None,
                           bindings: Optional[Mapping[str, Optional[str]]] = None) -> Configuration:
    """Place the pair (U_i, U_j) in the eight-cell configuration grid.

    Either ``cb_form`` is given, or ``prev_cb`` (the Cb of U_i) and the marker
    bindings of U_j, in which case the form of the first marker realizing the
    Cb decides.
    """
    kind = boundary_kind(i, j, history)
    if cb_form is None:
        if prev_cb is None:
            raise NotClassifiable(f"utterance {i} has no Cb")
        realizing = [m for m in sorted(d.utterance(j).markers, key=lambda m: m.position)
                     if (bindings or {}).get(m.id, m.gold_entity) == prev_cb]
        if not realizing:
            raise NotClassifiable(f"Cb {prev_cb!r} of {i} is not realized in {j}")
        cb_form = "pronoun" if realizing[0].form.is_pronominal else "full-np"
    if kind is None:
        return Configuration(ConfigurationType.WITHIN_SEGMENT, None, cb_form)
    return Configuration(configuration_cell(kind, cb_form), kind, cb_form)
