"""Centering with cache-backed pronoun expansion and lazy, transition-ordered anchors."""

from __future__ import annotations

import itertools
import logging
import math
import re
from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping, Optional, Sequence

from . import cache as ac
from .model import (DEFAULT_RANKING, INITIAL_STATE, TRANSITIONS, CenteringState, ContractViolation,
                    Discourse, DiscourseEntity, Agreement, MarkerIndex, RankingConfig, ReferenceMarker,
                    Transition, Utterance, ValidationError, classify_transition, rank_cf, transition_of)
from .segmenter import previous_utterance

log = logging.getLogger(__name__)

INTERLEAVED = "interleaved"
EXHAUSTIVE = "exhaustive"
STRICT = "strict"
PREFERENCE = "preference"

_DETERMINERS = {"the", "a", "an", "that", "this", "these", "those", "my", "his", "her", "its",
                "their", "our", "your"}


@dataclass(frozen=True)
class EngineConfig:
    cache_size: int = ac.DEFAULT_CAPACITY
    recency_window: int = ac.DEFAULT_WINDOW
    mode: str = INTERLEAVED
    rule1: str = STRICT
    trace: bool = False
    store_displaced: bool = True
    ranking: RankingConfig = DEFAULT_RANKING
    tiers: tuple = ac.DEFAULT_TIERS

    def __post_init__(self):
        if self.mode not in (INTERLEAVED, EXHAUSTIVE):
            raise ValidationError(f"unknown mode {self.mode!r}")
        if self.rule1 not in (STRICT, PREFERENCE):
            raise ValidationError(f"unknown rule1 setting {self.rule1!r}")
        if self.cache_size < 1 or self.recency_window < 1:
            raise ValidationError("cache size and recency window must be positive")


@dataclass(frozen=True)
class Anchor:
    cb: Optional[str]
    cf: tuple
    bindings: tuple  # sorted (marker id, entity id or None) pairs for pronouns
    transition: Transition

    @property
    def binding_map(self) -> dict:
        return dict(self.bindings)

    def same_choice(self, other: "Anchor") -> bool:
        return (self.cb, self.cf, self.bindings, self.transition) == \
            (other.cb, other.cf, other.bindings, other.transition)


@dataclass(frozen=True)
class TraceRecord:
    anchor: Anchor
    constraint3: bool
    rule1: bool
    contraindex: bool = True


@dataclass
class CenteringResult:
    utterance: int
    state: CenteringState
    bindings: dict
    anchors_generated: int
    anchors_filtered: list
    ambiguous: bool
    retrieval_events: list
    mode: str
    rule1_relaxed: bool = False
    accepted: Optional[Anchor] = None
    marker_status: dict = field(default_factory=dict)  # pronoun id -> cf | cache | retrieval | unresolved
    trace: list = field(default_factory=list)


# ---------------------------------------------------------------- markers

def _strip(surface: str) -> str:
    words = re.findall(r"[\w'-]+", surface.lower())
    while words and words[0] in _DETERMINERS:
        words = words[1:]
    return " ".join(words)


def _symmetric(markers: Sequence[ReferenceMarker]) -> list:
    ids = {m.id for m in markers}
    contra = {m.id: set(m.contraindices) & ids for m in markers}
    for m in markers:
        for c in list(contra[m.id]):
            contra[c].add(m.id)
    return [replace(m, contraindices=frozenset(contra[m.id])) for m in markers]


def index_markers(d: Discourse) -> dict:
    """Markers of every utterance with pleonastics removed and indices assigned.

    Pronominal markers draw from the A series and indefinites from the X
    series, numbered across the whole discourse; the rest are indexed by
    their surface string.
    """
    a = x = 0
    out = {}
    for u in d.utterances:
        ms = []
        for m in u.markers:
            if m.pleonastic:
                continue
            if m.form.is_pronominal:
                if m.agreement is None:
                    raise ValidationError("pronoun without agreement features", f"marker {m.id}")
                a += 1
                idx = MarkerIndex("A", a)
            elif m.indefinite:
                x += 1
                idx = MarkerIndex("X", x)
            else:
                idx = MarkerIndex("surface", m.surface)
            ms.append(replace(m, index=idx))
        out[u.index] = _symmetric(ms)
    return out


def create_reference_markers(u: Utterance, d: Discourse) -> list:
    return index_markers(d)[u.index]


def composite_entity(conjuncts: Sequence[str], registry: Mapping[str, DiscourseEntity]) -> DiscourseEntity:
    parts = [registry[c] for c in conjuncts if c in registry]
    tags = frozenset.intersection(*(p.selectional_tags for p in parts)) if parts else frozenset()
    return DiscourseEntity("+".join(conjuncts), " and ".join(p.canonical for p in parts) or "+".join(conjuncts),
                           Agreement("unknown", "pl", 3), tags)


def resolve_fixed(m: ReferenceMarker, registry: dict, at: int) -> str:
    """Entity for a description or name; registers new entities as needed."""
    if m.conjuncts:
        ent = composite_entity(m.conjuncts, registry)
        registry.setdefault(ent.id, ent)
        return ent.id
    if m.gold_entity is not None:
        if m.gold_entity not in registry:
            registry[m.gold_entity] = DiscourseEntity(m.gold_entity, m.surface, m.agreement,
                                                      m.required_tags, at)
        return m.gold_entity
    key = _strip(m.surface)
    if not m.indefinite:
        for e in registry.values():
            if key and (key == _strip(e.canonical) or key in {_strip(a) for a in e.aliases}):
                return e.id
    eid = str(m.index) if m.index is not None else m.id
    registry.setdefault(eid, DiscourseEntity(eid, m.surface, m.agreement, m.required_tags, at))
    return eid


# ---------------------------------------------------------------- expansion

def expand_pronoun(m: ReferenceMarker, prev_cf: Sequence[str], partial: Optional[Mapping] = None,
                   registry: Optional[Mapping[str, DiscourseEntity]] = None) -> tuple:
    """Entities of ``prev_cf`` that ``m`` may specify, in Cf order.

    Candidates must agree with the pronoun, carry the tags it requires and not
    collide with a contraindexed marker already bound in ``partial``. An empty
    result means the caller should fall back on the cache.
    """
    if not m.form.is_pronominal:
        raise ContractViolation(f"marker {m.id} is not pronominal")
    partial = partial or {}
    banned = {partial.get(c) for c in m.contraindices} - {None}
    out = []
    for e in prev_cf:
        ent = registry.get(e) if registry is not None else None
        if registry is not None and (ent is None or not ent.satisfies(m)):
            continue
        if e not in banned:
            out.append(e)
    return tuple(out)


def retrieval_cue(m: ReferenceMarker, u: Utterance) -> ac.RetrievalCue:
    return ac.RetrievalCue(
        agreement=m.agreement,
        selectional_tags=frozenset(m.required_tags),
        predicates=frozenset(p.predicate for p in u.predicates),
        proposition_ids=frozenset(p.id for p in u.predicates),
    )


def expand_via_cache(m: ReferenceMarker, cache: ac.CacheState, memory: ac.MainMemory, u: Utterance,
                     registry: Mapping[str, DiscourseEntity], partial: Optional[Mapping] = None,
                     tiers: tuple = ac.DEFAULT_TIERS):
    """Cache contents first, then cued retrieval from main memory.

    Returns (candidates, event, source) where source is ``cache``,
    ``retrieval`` or ``unresolved``.
    """
    resident = [e for e in cache.snapshot() if cache.items[e].kind == "entity"]
    found = expand_pronoun(m, resident, partial, registry)
    if found:
        return found, None, "cache"
    ev = cache.retrieve(memory, retrieval_cue(m, u), u.index, tiers)
    found = expand_pronoun(m, [e for e in ev.entities if e in registry], partial, registry)
    return found, ev, "retrieval" if found else "unresolved"


# ---------------------------------------------------------------- anchors

def _bind_key(bindings: tuple) -> tuple:
    return tuple((k, v or "") for k, v in bindings)


def tie_key(a: Anchor, prev_cf: Sequence[str], candidates: Optional[Mapping] = None) -> tuple:
    """Within a transition group: Cf rank of the Cb, then bindings compared
    lexicographically by each pronoun's position in its candidate list."""
    pos = prev_cf.index(a.cb) if a.cb in prev_cf else math.inf
    cur = a.cf.index(a.cb) if a.cb in a.cf else math.inf
    ranks = ()
    if candidates is not None:
        ranks = tuple(candidates[k].index(e) if e in candidates.get(k, ()) else math.inf
                      for k, e in a.bindings)
    return (pos, cur, ranks, _bind_key(a.bindings))


def filter_constraint3(a: Anchor, prev_cf: Sequence[str]) -> bool:
    realized = [e for e in prev_cf if e in a.cf]
    return a.cb == (realized[0] if realized else None)


def filter_rule1(a: Anchor, pronouns: Sequence[ReferenceMarker] = ()) -> bool:
    bound = {e for k, e in a.bindings if e is not None}
    if pronouns:
        ids = {m.id for m in pronouns}
        bound = {e for k, e in a.bindings if e is not None and k in ids}
    return not bound or a.cb in bound


def _contra_ok(bindings: Mapping, markers: Sequence[ReferenceMarker]) -> bool:
    for m in markers:
        e = bindings.get(m.id)
        if e is None:
            continue
        if any(bindings.get(c) == e for c in m.contraindices):
            return False
    return True


def _anchor(cb, cf, pron_bind, prev: CenteringState) -> Anchor:
    return Anchor(cb, cf, pron_bind, transition_of(prev.cb, cb, cf[0] if cf else None))


def _group_cbs(t: Transition, cf: tuple, prev_cb) -> list:
    cp = cf[0] if cf else None
    if t is Transition.NO_CB:
        return [None]
    if cp is None:
        return []
    if t is Transition.CONTINUE:
        return [cp] if prev_cb in (None, cp) else []
    if t is Transition.SMOOTH_SHIFT:
        return [cp] if prev_cb not in (None, cp) else []
    rest = cf[1:]
    if t is Transition.RETAIN:
        return [e for e in rest if prev_cb in (None, e)]
    return [e for e in rest if prev_cb is not None and e != prev_cb]


@dataclass
class Expansions:
    markers: list  # non-pleonastic markers of the utterance
    fixed: dict  # marker id -> entity for non-pronouns
    candidates: dict  # pronoun id -> ordered candidate entities
    source: dict  # pronoun id -> cf | cache | retrieval | unresolved
    events: list

    @property
    def pronouns(self) -> list:
        return [m for m in self.markers if m.form.is_pronominal]


def _bindings(exp: Expansions, registry, early_contra: bool) -> Iterator[tuple]:
    pron = exp.pronouns

    def rec(k, partial):
        if k == len(pron):
            yield dict(partial), any(forced)
            return
        m = pron[k]
        cands = exp.candidates[m.id]
        if early_contra:
            cands = expand_pronoun(m, cands, partial, registry)
        if not cands:
            forced.append(bool(exp.candidates[m.id]))
            partial[m.id] = None
            yield from rec(k + 1, partial)
            del partial[m.id]
            forced.pop()
            return
        for e in cands:
            partial[m.id] = e
            yield from rec(k + 1, partial)
            del partial[m.id]

    forced: list = []
    yield from rec(0, dict(exp.fixed))


def _cf_for(exp: Expansions, full: dict, ranking: RankingConfig) -> tuple:
    return rank_cf(exp.markers, full, ranking)


def _pron_pairs(exp: Expansions, full: dict) -> tuple:
    return tuple(sorted((m.id, full.get(m.id)) for m in exp.pronouns))


def propose_anchor_stream(u: Utterance, prev: CenteringState, expansions: Expansions,
                          registry: Mapping[str, DiscourseEntity],
                          ranking: RankingConfig = DEFAULT_RANKING) -> Iterator[tuple]:
    """Yield (transition, anchors) groups in preference order, built on demand.

    Contraindexing prunes bindings as they are built, so only combinations
    that can still pass are ever turned into anchors.
    """
    built = list(_bindings(expansions, registry, early_contra=True))
    # a pronoun left unbound by contraindexing only counts when nothing binds fully
    if any(not gap for _, gap in built):
        built = [(full, gap) for full, gap in built if not gap]
    lists = [(_cf_for(expansions, full, ranking), _pron_pairs(expansions, full)) for full, _ in built]
    for t in TRANSITIONS:
        group = []
        for cf, pairs in lists:
            for cb in _group_cbs(t, cf, prev.cb):
                group.append(Anchor(cb, cf, pairs, t))
        yield t, group


def exhaustive_anchors(u: Utterance, prev: CenteringState, expansions: Expansions,
                       registry: Mapping[str, DiscourseEntity],
                       ranking: RankingConfig = DEFAULT_RANKING) -> list:
    """Every Cb x Cf combination, Cb drawn from the previous Cf plus NIL.

    Returns (anchor, contraindex-ok) pairs.
    """
    out = []
    for full, _ in _bindings(expansions, registry, early_contra=False):
        ok = _contra_ok(full, expansions.markers)
        cf = _cf_for(expansions, full, ranking)
        pairs = _pron_pairs(expansions, full)
        for cb in list(prev.cf) + [None]:
            out.append((_anchor(cb, cf, pairs, prev), ok))
    if expansions.pronouns and not any(ok for _, ok in out):
        out.extend(_partial_anchors(prev, expansions, ranking))
    return out


def _blocked(m: ReferenceMarker, e: str, full: Mapping, earlier: set) -> bool:
    return any(full.get(c) == e for c in m.contraindices if c in earlier)


def _partial_anchors(prev: CenteringState, exp: Expansions, ranking: RankingConfig) -> list:
    """Bindings that leave a pronoun unbound, kept only when each of its
    candidates is taken by an earlier contraindexed marker."""
    pron = exp.pronouns
    out = []
    for combo in itertools.product(*[tuple(exp.candidates[m.id]) + (None,) for m in pron]):
        full = dict(exp.fixed)
        full.update((m.id, e) for m, e in zip(pron, combo))
        if not _contra_ok(full, exp.markers):
            continue
        earlier = set(exp.fixed)
        legal = True
        for m, e in zip(pron, combo):
            if e is None and not all(_blocked(m, c, full, earlier) for c in exp.candidates[m.id]):
                legal = False
                break
            earlier.add(m.id)
        if not legal:
            continue
        cf = _cf_for(exp, full, ranking)
        pairs = _pron_pairs(exp, full)
        for cb in list(prev.cf) + [None]:
            out.append((_anchor(cb, cf, pairs, prev), True))
    return out


@dataclass
class _Choice:
    anchor: Anchor
    ambiguous: bool
    relaxed: bool
    generated: int
    filtered: list
    trace: list


def _choose_interleaved(u, prev, exp, registry, cfg: EngineConfig) -> _Choice:
    pron = exp.pronouns
    generated, filtered, trace = 0, [], []
    fallback: list = []
    for t, group in propose_anchor_stream(u, prev, exp, registry, cfg.ranking):
        generated += len(group)
        both, only3 = [], []
        for a in group:
            c3 = filter_constraint3(a, prev.cf)
            r1 = filter_rule1(a, pron)
            if cfg.trace:
                trace.append(TraceRecord(a, c3, r1))
            if not c3:
                filtered.append((a, "constraint3"))
            elif not r1:
                filtered.append((a, "rule1"))
                only3.append(a)
            else:
                both.append(a)
        key = lambda a: tie_key(a, prev.cf, exp.candidates)  # noqa: E731
        if cfg.rule1 == PREFERENCE and (both or only3):
            pick = sorted(both, key=key) + sorted(only3, key=key)
            pool = both if both else only3
            return _Choice(pick[0], len(pool) > 1, not both, generated, filtered, trace)
        if both:
            both.sort(key=key)
            return _Choice(both[0], len(both) > 1, False, generated, filtered, trace)
        if only3 and not fallback:
            fallback = sorted(only3, key=key)
    if not fallback:
        raise ContractViolation(f"no anchor survives constraint 3 at utterance {u.index}")
    log.info("rule 1 relaxed at utterance %s", u.name)
    return _Choice(fallback[0], len(fallback) > 1, True, generated, filtered, trace)


def _choose_exhaustive(u, prev, exp, registry, cfg: EngineConfig) -> _Choice:
    pron = exp.pronouns
    anchors = exhaustive_anchors(u, prev, exp, registry, cfg.ranking)
    filtered, trace, both, only3 = [], [], [], []
    for a, ok in anchors:
        c3 = filter_constraint3(a, prev.cf)
        r1 = filter_rule1(a, pron)
        if cfg.trace:
            trace.append(TraceRecord(a, c3, r1, ok))
        if not ok:
            filtered.append((a, "contraindex"))
        elif not c3:
            filtered.append((a, "constraint3"))
        elif not r1:
            filtered.append((a, "rule1"))
            only3.append(a)
        else:
            both.append(a)
    if cfg.rule1 == PREFERENCE:
        ranked = [(a.transition.rank, 0, tie_key(a, prev.cf, exp.candidates), a) for a in both] + \
                 [(a.transition.rank, 1, tie_key(a, prev.cf, exp.candidates), a) for a in only3]
        relaxed_default = False
    else:
        pool = both or only3
        ranked = [(a.transition.rank, 0, tie_key(a, prev.cf, exp.candidates), a) for a in pool]
        relaxed_default = not both
    if not ranked:
        raise ContractViolation(f"no anchor survives constraint 3 at utterance {u.index}")
    ranked.sort(key=lambda r: r[:3])
    best = ranked[0]
    peers = [r for r in ranked if r[:2] == best[:2]]
    relaxed = relaxed_default or best[1] == 1
    return _Choice(best[3], len(peers) > 1, relaxed, len(anchors), filtered, trace)


# ---------------------------------------------------------------- context

class Context:
    """Mutable per-discourse state: registry, cache, main memory and states."""

    def __init__(self, d: Discourse, config: EngineConfig = EngineConfig()):
        self.d = d
        self.config = config
        self.registry: dict[str, DiscourseEntity] = dict(d.entities)
        self.cache = ac.CacheState(config.cache_size, store_displaced=config.store_displaced)
        self.memory = ac.MainMemory(
            ac.CacheItem(e.id, "entity", 0, e.agreement, frozenset(e.selectional_tags))
            for e in d.entities.values() if e.prior)
        self.markers = index_markers(d)
        self.states: dict[int, CenteringState] = {}

    def prev_state(self, u: Utterance) -> CenteringState:
        p = previous_utterance(u, self.d)
        return INITIAL_STATE if p is None else self.states[p.index]

    def _item(self, eid: str) -> ac.CacheItem:
        e = self.registry[eid]
        return ac.CacheItem(eid, "entity", 0, e.agreement, frozenset(e.selectional_tags))

    def touch(self, items: Sequence[ac.CacheItem]) -> list:
        displaced = []
        for it in items:
            if it.id in self.cache:
                self.cache.access(it.id)
            else:
                if it.id in self.memory:
                    it = self.memory.items[it.id]
                displaced += self.cache.insert(self.memory, [it])
        return displaced


def expand_utterance(u: Utterance, ctx: Context, prev: CenteringState) -> Expansions:
    markers = ctx.markers[u.index]
    fixed = {m.id: resolve_fixed(m, ctx.registry, u.index) for m in markers if not m.form.is_pronominal}
    exp = Expansions(list(markers), fixed, {}, {}, [])
    for m in exp.pronouns:
        local = expand_pronoun(m, prev.cf, fixed, ctx.registry)
        if local:
            exp.candidates[m.id] = tuple(e for e in prev.cf if ctx.registry[e].satisfies(m))
            exp.source[m.id] = "cf"
            continue
        found, ev, src = expand_via_cache(m, ctx.cache, ctx.memory, u, ctx.registry, fixed,
                                          ctx.config.tiers)
        if ev is not None:
            exp.events.append(ev)
        # keep contraindexed entities so the exhaustive enumerator sees them too
        pool = ev.entities if ev is not None else [e for e in ctx.cache.snapshot()
                                                   if ctx.cache.items[e].kind == "entity"]
        exp.candidates[m.id] = tuple(e for e in pool if e in ctx.registry
                                     and ctx.registry[e].satisfies(m)) if found else ()
        exp.source[m.id] = src
    return exp


def resolve_utterance(u: Utterance, ctx: Context) -> CenteringResult:
    """Run the centering steps for ``u`` and update the attentional state."""
    if u.is_prompt:
        raise ContractViolation("prompts carry their previous state forward and are not resolved")
    cfg = ctx.config
    prev = ctx.prev_state(u)
    exp = expand_utterance(u, ctx, prev)
    chooser = _choose_interleaved if cfg.mode == INTERLEAVED else _choose_exhaustive
    ch = chooser(u, prev, exp, ctx.registry, cfg)
    a = ch.anchor
    classify_transition(prev, a.cb, a.cf[0] if a.cf else None, a.cf)
    state = CenteringState(u.index, a.cb, a.cf, a.transition)
    ctx.states[u.index] = state
    props = [ac.CacheItem(p.id, "proposition", 0, None, frozenset(), p.predicate, tuple(p.args))
             for p in u.predicates]
    ctx.touch(props + [ctx._item(e) for e in reversed(a.cf)])
    bindings = dict(exp.fixed)
    bindings.update(a.binding_map)
    status = {m.id: (exp.source[m.id] if a.binding_map.get(m.id) is not None else "unresolved")
              for m in exp.pronouns}
    return CenteringResult(u.index, state, bindings, ch.generated, ch.filtered, ch.ambiguous,
                           list(exp.events), cfg.mode, ch.relaxed, a, status, ch.trace)


def process_discourse(d: Discourse, config: EngineConfig = EngineConfig()) -> list:
    """One result per non-prompt utterance, in discourse order."""
    ctx = Context(d, config)
    out = []
    for u in d.utterances:
        if u.is_prompt:
            continue
        try:
            out.append(resolve_utterance(u, ctx))
        except ValidationError as e:
            raise ValidationError(str(e), f"{d.id} utterance {u.name}") from e
    return out


def states_by_utterance(results: Sequence[CenteringResult], d: Discourse) -> dict:
    """Centering state at every utterance; prompts inherit their predecessor's."""
    by = {r.utterance: r.state for r in results}
    out = {}
    for u in d.utterances:
        if u.index in by:
            out[u.index] = by[u.index]
        else:
            p = previous_utterance(u, d)
            out[u.index] = INITIAL_STATE if p is None else by.get(p.index, INITIAL_STATE)
    return out


def prominent_entities(results: Sequence[CenteringResult]) -> set:
    """Entities that were ever the Cb."""
    return {r.state.cb for r in results if r.state.cb is not None}


def bindings_valid(r: CenteringResult, d: Discourse, registry: Mapping[str, DiscourseEntity]) -> bool:
    """Post-hoc check of agreement, tags and contraindices for accepted pronoun bindings."""
    markers = index_markers(d)[r.utterance]
    if not _contra_ok(r.bindings, markers):
        return False
    for m in markers:
        e = r.bindings.get(m.id)
        if m.form.is_pronominal and e is not None and not registry[e].satisfies(m):
            return False
    return True
