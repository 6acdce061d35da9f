"""Transition distributions, cache-versus-stack comparison and annotation output."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import stack as fstack
from .corpus import CorpusIOError
from .engine import CenteringResult, EngineConfig, index_markers, process_discourse, states_by_utterance
from .model import TRANSITIONS, Discourse, Evidence, Relation, Transition
from .segmenter import detect_boundaries

SEGMENT_INITIAL = "segment-initial"
OTHER = "other"


@dataclass
class DistributionTable:
    partition: str
    counts: dict = field(default_factory=lambda: {t: 0 for t in TRANSITIONS})

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def row(self, include_rough: bool = True) -> tuple:
        return tuple(self.counts[t] for t in TRANSITIONS
                     if include_rough or t is not Transition.ROUGH_SHIFT)

    def add(self, t: Transition, n: int = 1):
        self.counts[Transition(t)] += n

    def __add__(self, other: "DistributionTable") -> "DistributionTable":
        out = DistributionTable(self.partition)
        for t in TRANSITIONS:
            out.counts[t] = self.counts[t] + other.counts[t]
        return out

    def as_dict(self) -> dict:
        return {"partition": self.partition, "total": self.total,
                **{t.value: self.counts[t] for t in TRANSITIONS}}


def _cue_now_initial(d: Discourse, boundaries) -> set:
    return {b.before_utterance for b in boundaries if b.evidence is Evidence.CUE_NOW}


def _any_initial(d: Discourse, boundaries) -> set:
    return {b.before_utterance for b in boundaries}


PARTITION_RULES = {"cue-now": _cue_now_initial, "any-boundary": _any_initial}


def gold_transitions(d: Discourse) -> dict:
    return {u.index: u.gold_transition for u in d.utterances if u.gold_transition is not None}


def transition_distribution(d: Discourse, transitions: Union[Mapping[int, Transition], Sequence[CenteringResult]],
                            boundaries=None, rule: str = "cue-now") -> tuple:
    """(segment-initial, other) tables for one discourse.

    ``transitions`` is either engine results or a mapping from utterance index
    to transition. Segment-initial utterances are found with ``rule`` over
    ``boundaries`` (detected ones when omitted).
    """
    if not isinstance(transitions, Mapping):
        transitions = {r.utterance: r.state.transition for r in transitions}
    if boundaries is None:
        boundaries = detect_boundaries(d)
    initial = PARTITION_RULES[rule](d, boundaries)
    seg, other = DistributionTable(SEGMENT_INITIAL), DistributionTable(OTHER)
    for i in sorted(transitions):
        (seg if i in initial else other).add(transitions[i])
    return seg, other


def corpus_distribution(discourses: Iterable[Discourse], gold: bool = False,
                        config: EngineConfig = EngineConfig(), rule: str = "cue-now") -> tuple:
    seg, other = DistributionTable(SEGMENT_INITIAL), DistributionTable(OTHER)
    for d in discourses:
        ts = gold_transitions(d) if gold else process_discourse(d, config)
        s, o = transition_distribution(d, ts, rule=rule)
        seg, other = seg + s, other + o
    return seg, other


# ---------------------------------------------------------------- cache vs stack

@dataclass(frozen=True)
class AnaphorVerdict:
    utterance: int
    label: str
    marker: str
    surface: str
    entity: Optional[str]
    cache_status: str  # cache | retrieval | unresolved
    stack_accessible: bool
    retrieval_events: tuple = ()

    @property
    def diverges(self) -> bool:
        if self.stack_accessible:
            return self.cache_status != "cache"
        return self.cache_status != "unresolved"


@dataclass
class ModelComparison:
    discourse: str
    verdicts: list = field(default_factory=list)

    @property
    def divergences(self) -> list:
        return [v for v in self.verdicts if v.diverges]

    def summary(self) -> dict:
        return {
            "discourse": self.discourse,
            "anaphors": len(self.verdicts),
            "divergences": len(self.divergences),
            "retrievals": sum(v.cache_status == "retrieval" for v in self.verdicts),
            "stack_inaccessible": sum(not v.stack_accessible for v in self.verdicts),
        }

    def as_dict(self) -> dict:
        return {**self.summary(), "verdicts": [
            {"utterance": v.label, "marker": v.marker, "surface": v.surface, "entity": v.entity,
             "cache": v.cache_status, "stack_accessible": v.stack_accessible, "diverges": v.diverges,
             "retrieval_events": len(v.retrieval_events)} for v in self.verdicts]}


def compare_models(d: Discourse, config: EngineConfig = EngineConfig()) -> ModelComparison:
    """Pronouns opening a new segment, judged by the cache model and by the stack.

    A verdict diverges when the stack says the referent is accessible but the
    cache needed a retrieval (or failed), or when the stack says it is not
    accessible yet the cache resolves it.
    """
    results = process_discourse(d, config)
    by = {r.utterance: r for r in results}
    boundaries = detect_boundaries(d)
    # focus spaces hold whatever each utterance realized, pronoun referents included
    realized = {r.utterance: {e for e in r.bindings.values() if e is not None} for r in results}
    history = fstack.replay(d, boundaries, entities_of=lambda u: realized.get(u.index, set()))
    out = ModelComparison(d.id)
    for b in boundaries:
        u = d.utterance(b.before_utterance)
        r = by.get(u.index)
        if r is None:
            continue
        access = history.step(u.index).accessible
        for m in sorted((m for m in u.markers if m.form.is_pronominal), key=lambda m: m.position):
            ent = r.bindings.get(m.id) or m.gold_entity
            status = r.marker_status.get(m.id, "unresolved")
            status = "cache" if status in ("cf", "cache") else status
            if ent is not None:
                reachable = ent in access
            else:
                # cache found nothing: ask whether the stack would have
                reachable = any(e in d.entities and d.entities[e].satisfies(m) for e in access)
            out.verdicts.append(AnaphorVerdict(u.index, u.name, m.id, m.surface, ent, status, reachable,
                                               tuple(r.retrieval_events)))
    return out


# ---------------------------------------------------------------- configurations

def configurations(d: Discourse, results: Sequence[CenteringResult], boundaries=None) -> list:
    """(i, j, Configuration) for the pairs spanning each boundary.

    Each boundary utterance is paired with its linear predecessor and, for a
    return pop, with the last utterance of the segment it returns to.
    """
    boundaries = detect_boundaries(d) if boundaries is None else boundaries
    history = fstack.replay(d, boundaries)
    states = states_by_utterance(results, d)
    by = {r.utterance: r for r in results}
    out = []
    for b in boundaries:
        j = b.before_utterance
        if j == 1 or j not in by:
            continue
        pairs = [j - 1]
        step = history.step(j)
        if b.relation is Relation.RETURN_POP:
            target = step.segment
            earlier = [k for k in range(1, j - 1) if history.segment_of(k) == target]
            if earlier and earlier[-1] not in pairs:
                pairs.append(earlier[-1])
        for i in pairs:
            try:
                cfg = fstack.classify_configuration(i, j, d, history, prev_cb=states[i].cb,
                                                    bindings=by[j].bindings)
            except fstack.NotClassifiable:
                continue
            out.append((i, j, cfg))
    return out


# ---------------------------------------------------------------- annotations

def annotation_records(d: Discourse, results: Sequence[CenteringResult], trace: bool = False) -> list:
    states = states_by_utterance(results, d)
    by = {r.utterance: r for r in results}
    markers = index_markers(d)
    configs: dict = {}
    for i, j, c in configurations(d, results):
        configs.setdefault(j, []).append({"pair": [d.utterance(i).name, d.utterance(j).name],
                                          "type": c.value.value, "boundary": c.boundary_kind,
                                          "cb_form": c.cb_form})
    out = []
    for u in d.utterances:
        st = states[u.index]
        rec = {"discourse": d.id, "utterance": u.name, "index": u.index, "prompt": u.is_prompt,
               "cb": st.cb, "cf": list(st.cf), "cp": st.cp, "transition": st.transition.value}
        r = by.get(u.index)
        if r is not None:
            rec["bindings"] = {str(m.index): r.bindings.get(m.id) for m in markers[u.index]}
            rec["ambiguous"] = r.ambiguous
            rec["rule1_relaxed"] = r.rule1_relaxed
            rec["anchors_generated"] = r.anchors_generated
            rec["retrieval_events"] = [
                {"tier": e.tier, "entities": list(e.entities), "retrieved": list(e.retrieved),
                 "displaced": list(e.displaced), "adequate": e.adequate} for e in r.retrieval_events]
            if trace:
                rec["trace"] = [{"cb": t.anchor.cb, "cf": list(t.anchor.cf),
                                 "transition": t.anchor.transition.value,
                                 "bindings": {k: v for k, v in t.anchor.bindings},
                                 "contraindex": t.contraindex, "constraint3": t.constraint3,
                                 "rule1": t.rule1} for t in r.trace]
        if u.index in configs:
            rec["configurations"] = configs[u.index]
        out.append(rec)
    return out


def emit_annotations(records: Sequence[dict], fmt: str = "jsonl",
                     path: Optional[Union[str, Path]] = None) -> str:
    """Serialize annotation records deterministically; also write ``path`` if given."""
    if fmt == "jsonl":
        text = "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in records)
    elif fmt == "json":
        text = json.dumps(list(records), sort_keys=True, indent=1, ensure_ascii=False) + "\n"
    elif fmt == "tsv":
        cols = ["discourse", "utterance", "cb", "cf", "transition"]
        lines = ["\t".join(cols)]
        for r in records:
            lines.append("\t".join("" if r[c] is None else (",".join(r[c]) if isinstance(r[c], list) else str(r[c]))
                                   for c in cols))
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise CorpusIOError(f"cannot write {path}: {e.strerror}") from e
    return text

