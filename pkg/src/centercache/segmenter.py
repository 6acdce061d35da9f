"""Utterance-unit splitting and segment-boundary detection."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from . import stack as fstack
from .model import (ContractViolation, Discourse, Evidence, Relation, SegmentBoundary, Tense,
                    Utterance, ValidationError)

log = logging.getLogger(__name__)


class DanglingReturn(ValueError):
    """A return pop has no prior segment to return to."""


@dataclass(frozen=True)
class Clause:
    finite: bool
    relation: str = "main"  # main | coordinate | subordinate
    markers: tuple = ()
    predicates: tuple = ()
    cue_words: tuple = ()
    tense: Tense = Tense.UNMARKED
    separate: bool = False  # subordinate clause kept as its own unit


@dataclass(frozen=True)
class SentenceAnnotation:
    clauses: tuple
    speaker: str = ""
    label: str = ""
    is_prompt: bool = False

    def __post_init__(self):
        if not self.clauses:
            raise ValidationError("sentence has no clauses", self.label)
        if sum(c.relation == "main" for c in self.clauses) != 1:
            raise ValidationError("sentence needs exactly one main clause", self.label)


@dataclass
class SplitResult:
    utterances: list
    warnings: list = field(default_factory=list)


def _fold(unit: dict, clause: Clause, depth: int):
    offset = len(unit["markers"])
    unit["markers"].extend(replace(m, clause=depth, position=offset + i)
                           for i, m in enumerate(clause.markers))
    unit["predicates"].extend(clause.predicates)


def split_utterance_units(sentences: Sequence[SentenceAnnotation], start_index: int = 1) -> SplitResult:
    """One utterance per finite main or coordinate clause, in production order.

    Subordinate and non-finite clauses fold into the unit they depend on, their
    markers ranked after the main clause's. A subordinate clause flagged
    ``separate`` becomes its own unit whose previous utterance is its
    superordinate clause.
    """
    out: list[Utterance] = []
    warnings = []
    index = start_index
    for s_no, sent in enumerate(sentences):
        if not any(c.finite for c in sent.clauses):
            msg = f"sentence {sent.label or s_no} has no finite clause; skipped"
            warnings.append(msg)
            log.warning(msg)
            continue
        units: list[dict] = []
        pending: list[Clause] = []
        depth = 0
        main_k = 0
        for c in sent.clauses:
            if c.finite and c.relation in ("main", "coordinate"):
                main_k = len(units)
                units.append(dict(markers=[], predicates=[], cue_words=c.cue_words, tense=c.tense,
                                  override=None))
                _fold(units[-1], c, 0)
                depth = 0
                for p in pending:
                    depth += 1
                    _fold(units[-1], p, depth)
                pending = []
            elif c.finite and c.separate and units:
                units.append(dict(markers=[], predicates=[], cue_words=c.cue_words, tense=c.tense,
                                  override=index + main_k))
                _fold(units[-1], c, 0)
            elif units:
                depth += 1
                _fold(units[-1], c, depth)
            else:
                pending.append(c)
        for k, unit in enumerate(units):
            label = sent.label
            if len(units) > 1 and label:
                label = f"{label}{chr(ord('a') + k)}"
            out.append(Utterance(
                index=index, speaker=sent.speaker, markers=tuple(unit["markers"]),
                predicates=tuple(unit["predicates"]), cue_words=tuple(unit["cue_words"]),
                tense=unit["tense"], is_prompt=sent.is_prompt and not unit["markers"],
                prev_override=unit["override"], label=label))
            index += 1
    return SplitResult(out, warnings)


def previous_utterance(u: Utterance, d: Discourse) -> Optional[Utterance]:
    """The utterance whose centering state feeds ``u``; None at the start.

    Prompts are skipped since they only pass the centers along, and a
    separately listed subordinate clause hands over to its main clause.
    """
    if u.index == 1:
        return None
    if u.prev_override is not None:
        cand = d.utterance(u.prev_override)
    else:
        cand = d.utterance(u.index - 1)
    while True:
        if cand.is_prompt:
            if cand.index == 1:
                return None
            cand = d.utterance(cand.index - 1)
        elif cand.prev_override is not None and cand.index != u.prev_override:
            cand = d.utterance(cand.prev_override)
        else:
            return cand


def _cue_boundary(u: Utterance, d: Discourse) -> Optional[SegmentBoundary]:
    cue = u.first_cue
    if cue == "anyway":
        return SegmentBoundary(u.index, Relation.RETURN_POP, Evidence.CUE_ANYWAY)
    if cue == "now":
        rel = Relation.SISTER if d.sister_segments else Relation.SUBORDINATE
        return SegmentBoundary(u.index, rel, Evidence.CUE_NOW)
    if u.clarification:
        return SegmentBoundary(u.index, Relation.SUBORDINATE, Evidence.CLARIFICATION)
    if u.subgoal:
        return SegmentBoundary(u.index, Relation.SUBORDINATE, Evidence.TASK_SUBGOAL)
    return None


def _final_utterance(segment: str, before: int, segments: dict, d: Discourse) -> Optional[Utterance]:
    idx = [i for i, s in segments.items()
           if s == segment and i < before and not d.utterance(i).is_prompt]
    return d.utterance(max(idx)) if idx else None


def _link(b: SegmentBoundary, d: Discourse, st: fstack.FocusStack, segments: dict):
    candidates = [s.segment for s in reversed(st.spaces[1:-1])]
    if not candidates:
        raise DanglingReturn(f"return pop before {b.before_utterance} has no prior segment")
    u = d.utterance(b.before_utterance)
    props = {p.id for p in u.predicates}
    for seg in candidates:
        last = _final_utterance(seg, b.before_utterance, segments, d)
        if last is not None and props & {p.id for p in last.predicates}:
            return seg, "iru"
    for k, seg in enumerate(candidates):
        last = _final_utterance(seg, b.before_utterance, segments, d)
        if last is None or last.tense is Tense.UNMARKED or last.tense != u.tense:
            continue
        follower = candidates[k - 1] if k > 0 else st.top.segment
        first = min((i for i, s in segments.items() if s == follower), default=None)
        if first is not None and d.utterance(first).tense not in (u.tense, Tense.UNMARKED):
            return seg, "tense-change"
    return candidates[0], "unknown"


def _replay_until(d: Discourse, boundaries: Sequence[SegmentBoundary], upto: int):
    bmap = {b.before_utterance: b for b in boundaries}
    st = fstack.FocusStack(d.initial_segment)
    segments: dict[int, str] = {}
    for u in d.utterances[:upto - 1]:
        b = bmap.get(u.index)
        if b is not None:
            if b.relation is Relation.RETURN_POP and b.return_target is None:
                target, why = _link(b, d, st, segments)
                b = replace(b, return_target=target, link_evidence=why)
            st.apply_boundary(fstack.normalize(b, d))
        segments[u.index] = st.top.segment
    return st, segments


def link_return_target(b: SegmentBoundary, d: Discourse,
                       boundaries: Optional[Sequence[SegmentBoundary]] = None) -> SegmentBoundary:
    """Fill in where a return pop goes back to.

    Among the segments still below the current one, the most recent whose last
    utterance shares a proposition with the return utterance wins; failing
    that, one whose last utterance has the return's tense, where a tense change
    opened the segment that followed it. Otherwise the enclosing segment is
    used and the evidence is recorded as unknown.
    """
    if b.relation is not Relation.RETURN_POP:
        raise ContractViolation("only return pops have targets")
    prior = [x for x in (d.boundaries if boundaries is None else boundaries)
             if x.before_utterance < b.before_utterance]
    st, segments = _replay_until(d, prior, b.before_utterance)
    target, why = _link(b, d, st, segments)
    return replace(b, return_target=target, link_evidence=why)


def detect_boundaries(d: Discourse) -> list[SegmentBoundary]:
    """Annotated boundaries plus those signalled by cues, questions and subgoals.

    Annotated boundaries take precedence at a position. Cue words count only as
    the first token of an utterance.
    """
    found: dict[int, SegmentBoundary] = {b.before_utterance: b for b in d.boundaries}
    for u in d.utterances:
        if u.index not in found:
            b = _cue_boundary(u, d)
            if b is not None:
                found[u.index] = b
    out = []
    for pos in sorted(found):
        b = found[pos]
        if b.relation is Relation.RETURN_POP and b.return_target is None:
            b = link_return_target(b, d, out)
        out.append(b)
    return out
