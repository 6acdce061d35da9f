"""Return pops as cued retrieval: competing antecedents, IRUs and cue adequacy."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .engine import EngineConfig, prominent_entities, process_discourse
from .model import (ContractViolation, Discourse, DiscourseEntity, ReferenceMarker, Relation,
                    SegmentBoundary, Utterance)

MODES = ("agreement_only", "plus_selectional", "plus_discourse_selectional")


def competing_antecedents(m: ReferenceMarker, registry: Iterable[DiscourseEntity],
                          mode: str = "agreement_only") -> frozenset:
    """Entities the pronoun could pick out under the given cue definition.

    ``agreement_only`` compares gender and number, ``plus_selectional`` also
    needs the tags the verb imposes, and ``plus_discourse_selectional`` adds
    the tags the dialogue itself has established.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not m.form.is_pronominal:
        raise ContractViolation(f"marker {m.id} is not a pronoun")
    out = set()
    for e in (registry.values() if isinstance(registry, Mapping) else registry):
        if not e.agreement.compatible(m.agreement):
            continue
        if mode != "agreement_only" and not m.selectional_tags <= e.selectional_tags:
            continue
        if mode == "plus_discourse_selectional" and not m.discourse_tags <= e.selectional_tags:
            continue
        out.add(e.id)
    return frozenset(out)


def detect_iru(u: Utterance, history: Sequence[Utterance]) -> Optional[Utterance]:
    """Most recent earlier utterance re-realized by ``u``, matched on proposition id."""
    mine = {(p.id, p.predicate, p.args) for p in u.predicates}
    if not mine:
        return None
    for h in sorted(history, key=lambda h: h.index, reverse=True):
        if h.index >= u.index:
            continue
        if mine & {(p.id, p.predicate, p.args) for p in h.predicates}:
            return h
    return None


@dataclass(frozen=True)
class PopReport:
    boundary: SegmentBoundary
    pronoun: Optional[ReferenceMarker]
    competing: Mapping[str, frozenset]
    iru: Optional[Utterance]
    adequate_cue: bool
    prominence_note: Optional[str] = None
    adequate_with_prominence: bool = False

    def __post_init__(self):
        c = self.competing
        if self.pronoun is not None and not (
                c["plus_discourse_selectional"] <= c["plus_selectional"] <= c["agreement_only"]):
            raise ContractViolation("competing sets must narrow monotonically")

    def has_competitor(self, mode: str = "agreement_only") -> bool:
        return len(self.competing.get(mode, ())) > 1


def _registry_before(d: Discourse, j: int) -> list:
    seen = {e.id for e in d.entities.values() if e.prior}
    for u in d.utterances[:j - 1]:
        for m in u.markers:
            if m.gold_entity:
                seen.add(m.gold_entity)
        for p in u.predicates:
            seen.update(p.args)
    return [d.entities[e] for e in sorted(seen) if e in d.entities]


def classify_return_pop(b: SegmentBoundary, d: Discourse, results: Sequence = ()) -> PopReport:
    """Competition at all three cue levels, IRU match and adequacy for one pop."""
    if b.relation is not Relation.RETURN_POP:
        raise ContractViolation("not a return pop")
    u = d.utterance(b.before_utterance)
    pron = sorted((m for m in u.markers if m.form.is_pronominal), key=lambda m: m.position)
    iru = detect_iru(u, d.utterances[:u.index - 1])
    if not pron and iru is None:
        raise ContractViolation(f"pop before {u.name} has neither a pronoun nor an IRU")
    m = pron[0] if pron else None
    registry = _registry_before(d, u.index)
    if m is None:
        competing = {mode: frozenset() for mode in MODES}
    else:
        competing = {mode: competing_antecedents(m, registry, mode) for mode in MODES}
    strongest = competing["plus_discourse_selectional"]
    adequate = len(strongest) <= 1 or iru is not None
    note = None
    gated = adequate
    if len(strongest) > 1:
        prominent = prominent_entities(results)
        keep = strongest & prominent
        never = sorted(strongest - prominent)
        if never:
            note = "never prominent: " + ", ".join(never)
        gated = adequate or len(keep) <= 1
    return PopReport(b, m, competing, iru, adequate, note, gated)


@dataclass
class PopSurvey:
    """Tallies over a set of return pops."""

    reports: list = field(default_factory=list)

    def _count(self, pred) -> int:
        return sum(1 for r in self.reports if pred(r))

    @property
    def total(self) -> int:
        return len(self.reports)

    @property
    def competing(self) -> tuple:
        n = self._count(lambda r: r.has_competitor())
        return n, self.total - n

    @property
    def iru(self) -> tuple:
        n = self._count(lambda r: r.iru is not None)
        return n, self.total - n

    @property
    def narrowing(self) -> tuple:
        return tuple(self._count(lambda r, m=m: r.has_competitor(m)) for m in MODES)

    @property
    def resolved_by_selectional(self) -> int:
        return self._count(lambda r: r.has_competitor() and not r.has_competitor("plus_selectional"))

    @property
    def resolved_by_discourse(self) -> int:
        return self._count(lambda r: r.has_competitor("plus_selectional")
                           and not r.has_competitor("plus_discourse_selectional"))

    @property
    def residual_without_iru(self) -> int:
        return self._count(lambda r: r.has_competitor("plus_discourse_selectional") and r.iru is None)

    @property
    def adequate(self) -> int:
        return self._count(lambda r: r.adequate_cue)

    @property
    def adequate_with_prominence(self) -> int:
        return self._count(lambda r: r.adequate_with_prominence)

    def as_dict(self) -> dict:
        return {
            "pops": self.total,
            "competing": list(self.competing),
            "iru": list(self.iru),
            "narrowing": dict(zip(MODES, self.narrowing)),
            "resolved_by_selectional": self.resolved_by_selectional,
            "resolved_by_discourse": self.resolved_by_discourse,
            "residual_without_iru": self.residual_without_iru,
            "adequate": self.adequate,
            "adequate_with_prominence": self.adequate_with_prominence,
        }


def pop_survey(discourses: Iterable[Discourse], config: EngineConfig = EngineConfig()) -> PopSurvey:
    """Classify every annotated return pop in ``discourses``."""
    out = PopSurvey()
    for d in discourses:
        pops = [b for b in d.boundaries if b.relation is Relation.RETURN_POP]
        if not pops:
            continue
        results = process_discourse(d, config)
        out.reports.extend(classify_return_pop(b, d, results) for b in pops)
    return out
