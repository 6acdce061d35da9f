"""Bounded cache plus unbounded main memory, the cache model of attentional state."""

from __future__ import annotations

import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .model import Agreement, ContractViolation, ValidationError

log = logging.getLogger(__name__)

DEFAULT_CAPACITY = 7
DEFAULT_WINDOW = 3
DEFAULT_TIERS = ("iru", "agreement+selectional", "agreement")


class CacheMiss(KeyError):
    """The requested item is not resident in the cache."""


@dataclass
class CacheItem:
    id: str
    kind: str = "entity"  # entity | proposition
    last_access: int = 0
    agreement: Optional[Agreement] = None
    tags: frozenset = frozenset()
    predicate: Optional[str] = None
    args: tuple = ()


@dataclass(frozen=True)
class RetrievalCue:
    agreement: Optional[Agreement] = None
    selectional_tags: frozenset = frozenset()
    predicates: frozenset = frozenset()
    proposition_ids: frozenset = frozenset()

    def __post_init__(self):
        if not (self.agreement or self.selectional_tags or self.predicates or self.proposition_ids):
            raise ValidationError("retrieval cue is empty")


@dataclass(frozen=True)
class RetrievalEvent:
    at_utterance: int
    cue: RetrievalCue
    retrieved: tuple = ()
    displaced: tuple = ()
    adequate: bool = False
    tier: Optional[str] = None
    entities: tuple = ()


class MainMemory:
    """Long-term store; everything displaced from the cache ends up here."""

    def __init__(self, items: Iterable[CacheItem] = ()):
        self.items: dict[str, CacheItem] = {}
        for it in items:
            self.store(it)

    def __contains__(self, item_id):
        return item_id in self.items

    def __len__(self):
        return len(self.items)

    def store(self, item: CacheItem):
        self.items[item.id] = item

    def take(self, item_id: str) -> CacheItem:
        return self.items.pop(item_id)

    def entities(self):
        return [it for it in self.items.values() if it.kind == "entity"]

    def find_entities(self, agreement: Optional[Agreement], tags: frozenset = frozenset()):
        return sorted(
            (it.id for it in self.entities()
             if (agreement is None or (it.agreement is not None and it.agreement.compatible(agreement)))
             and tags <= it.tags),
        )

    def find_propositions(self, ids: frozenset = frozenset(), predicates: frozenset = frozenset()):
        props = [it for it in self.items.values() if it.kind == "proposition"]
        if ids:
            return sorted(p.id for p in props if p.id in ids)
        return sorted(p.id for p in props if p.predicate in predicates)


class CacheState:
    """Recency-ordered working set with preferential retention.

    ``items`` is kept least- to most-recently accessed; every insert and access
    ticks the clock so recency order always follows ``last_access``.
    """

    def __init__(self, capacity: int = DEFAULT_CAPACITY, store_displaced: bool = True):
        if capacity < 1:
            raise ValidationError(f"cache capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.items: OrderedDict[str, CacheItem] = OrderedDict()
        self.retained: set[str] = set()
        self.clock = 0
        self.store_displaced = store_displaced
        self.warnings: list[str] = []

    def __contains__(self, item_id):
        return item_id in self.items

    def __len__(self):
        return len(self.items)

    def _tick(self) -> int:
        self.clock += 1
        return self.clock

    def insert(self, memory: MainMemory, new_items: Iterable[CacheItem]) -> list[str]:
        """Add items, displacing least recently accessed unretained ones to ``memory``.

        Items currently in main memory are moved back. Returns displaced ids.
        """
        new_items = list(new_items)
        ids = [it.id for it in new_items]
        dup = {i for i in ids if ids.count(i) > 1} | {i for i in ids if i in self.items}
        if dup:
            raise ValidationError(f"duplicate cache item ids {sorted(dup)}")
        fresh = set()
        for it in new_items:
            if it.id in memory:
                memory.take(it.id)
            it.last_access = self._tick()
            self.items[it.id] = it
            fresh.add(it.id)
        displaced = []
        while len(self.items) > self.capacity:
            victim = next(i for i in self.items if i not in self.retained)
            if victim in fresh:
                msg = f"cache full of retained items; {victim} stored straight to main memory"
                self.warnings.append(msg)
                log.warning(msg)
            item = self.items.pop(victim)
            if self.store_displaced:
                memory.store(item)
            displaced.append(victim)
        return displaced

    def access(self, item_id: str) -> "CacheState":
        if item_id not in self.items:
            raise CacheMiss(item_id)
        item = self.items.pop(item_id)
        item.last_access = self._tick()
        self.items[item_id] = item
        return self

    def retain(self, item_id: str, on: bool = True) -> "CacheState":
        if item_id not in self.items:
            raise CacheMiss(item_id)
        if on:
            self.retained.add(item_id)
        else:
            self.retained.discard(item_id)
        return self

    def snapshot(self) -> list[str]:
        return list(reversed(self.items))

    def entities(self):
        return [it for it in self.items.values() if it.kind == "entity"]

    def retrieve(self, memory: MainMemory, cue: RetrievalCue, at_utterance: int = 0,
                 tiers: tuple = DEFAULT_TIERS) -> RetrievalEvent:
        """Cued retrieval from main memory into the cache.

        Tiers run from most to least specific; the first tier that yields an
        entity decides. The event is adequate when that tier matched exactly
        one entity.
        """
        props: list[str] = []
        found: list[str] = []
        tier_used = None
        for tier in tiers:
            if tier == "iru":
                if not (cue.proposition_ids or cue.predicates):
                    continue
                hits = memory.find_propositions(cue.proposition_ids, cue.predicates)
                props.extend(p for p in hits if p not in props)
                args = {a for p in hits for a in memory.items[p].args}
                found = [e for e in memory.find_entities(cue.agreement) if e in args]
            elif tier == "agreement+selectional":
                if not cue.selectional_tags:
                    continue
                found = memory.find_entities(cue.agreement, cue.selectional_tags)
            elif tier == "agreement":
                if cue.agreement is None:
                    continue
                found = memory.find_entities(cue.agreement)
            else:
                raise ValidationError(f"unknown retrieval tier {tier!r}")
            if found:
                tier_used = tier
                break
        retrieved = (props + found)[-self.capacity:]
        displaced = self.insert(memory, [memory.items[i] for i in retrieved]) if retrieved else []
        retrieved = [i for i in retrieved if i in self.items]
        displaced = [i for i in displaced if i not in retrieved]
        return RetrievalEvent(at_utterance, cue, tuple(retrieved), tuple(displaced),
                              adequate=len(found) == 1, tier=tier_used, entities=tuple(found))


def new_cache(capacity: int = DEFAULT_CAPACITY, **kw) -> CacheState:
    return CacheState(capacity, **kw)


def is_linearly_recent(i: int, j: int, window: int = DEFAULT_WINDOW) -> bool:
    if i >= j:
        raise ContractViolation(f"linear recency needs i < j, got {i}, {j}")
    return j - i <= window
