import pytest
from hypothesis import given, settings, strategies as st

from centercache.cache import (CacheItem, CacheMiss, CacheState, MainMemory, RetrievalCue, is_linearly_recent,
                               new_cache)
from centercache.model import Agreement, ContractViolation, ValidationError

F, M = Agreement("f"), Agreement("m")


def ent(i, agr=F, tags=()):
    return CacheItem(i, agreement=agr, tags=frozenset(tags))


def test_insert_displaces_least_recent():
    c, mem = new_cache(2), MainMemory()
    assert c.insert(mem, [ent("a"), ent("b")]) == []
    c.access("a")
    assert c.insert(mem, [ent("c")]) == ["b"]
    assert c.snapshot() == ["c", "a"]
    assert "b" in mem


def test_retained_item_survives():
    c, mem = new_cache(2), MainMemory()
    c.insert(mem, [ent("a"), ent("b")])
    c.retain("a")
    c.insert(mem, [ent("c")])
    assert "a" in c and "b" in mem


def test_all_retained_sends_new_item_to_memory():
    c, mem = new_cache(1), MainMemory()
    c.insert(mem, [ent("a")])
    c.retain("a")
    assert c.insert(mem, [ent("b")]) == ["b"]
    assert c.warnings and "b" in mem


def test_insert_takes_item_back_from_memory():
    c, mem = new_cache(1), MainMemory()
    c.insert(mem, [ent("a")])
    c.insert(mem, [ent("b")])
    c.insert(mem, [mem.items["a"]])
    assert "a" in c and "a" not in mem and "b" in mem


def test_errors():
    with pytest.raises(ValidationError):
        CacheState(0)
    c, mem = new_cache(3), MainMemory()
    with pytest.raises(CacheMiss):
        c.access("zz")
    with pytest.raises(CacheMiss):
        c.retain("zz")
    c.insert(mem, [ent("a")])
    with pytest.raises(ValidationError):
        c.insert(mem, [ent("a")])
    with pytest.raises(ValidationError):
        RetrievalCue()


def test_store_disabled_loses_items():
    c, mem = CacheState(1, store_displaced=False), MainMemory()
    c.insert(mem, [ent("a")])
    c.insert(mem, [ent("b")])
    assert "a" not in mem and "a" not in c


def test_retrieval_tiers():
    mem = MainMemory([ent("ann", F, ["human"]), ent("bea", F), ent("carl", M),
                      CacheItem("p1", kind="proposition", predicate="own", args=("bea",))])
    c = new_cache(3)
    ev = c.retrieve(mem, RetrievalCue(F, proposition_ids=frozenset({"p1"})))
    assert ev.tier == "iru" and ev.entities == ("bea",) and ev.adequate
    assert set(ev.retrieved) == {"p1", "bea"}
    ev = c.retrieve(mem, RetrievalCue(F, frozenset({"human"})))
    assert ev.tier == "agreement+selectional" and ev.entities == ("ann",)
    ev = c.retrieve(MainMemory([ent("x", M), ent("y", M)]), RetrievalCue(M))
    assert ev.tier == "agreement" and not ev.adequate and len(ev.entities) == 2


def test_retrieval_miss():
    ev = new_cache().retrieve(MainMemory([ent("x", M)]), RetrievalCue(F))
    assert ev.tier is None and ev.retrieved == ()


def test_linear_recency():
    assert is_linearly_recent(4, 7, 3) and not is_linearly_recent(3, 7, 3)
    with pytest.raises(ContractViolation):
        is_linearly_recent(5, 5)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.lists(st.tuples(st.sampled_from("iar"), st.integers(0, 9)), max_size=40))
def test_capacity_and_conservation(cap, ops):
    c, mem = CacheState(cap), MainMemory()
    seen = set()
    for op, k in ops:
        key = f"e{k}"
        if op == "i" and key not in c:
            c.insert(mem, [mem.items[key] if key in mem else ent(key)])
            seen.add(key)
        elif op == "a" and key in c:
            c.access(key)
        elif op == "r" and key in c:
            c.retain(key, k % 2 == 0)
        assert len(c) <= cap
        assert set(c.items) | set(mem.items) == seen
        assert not set(c.items) & set(mem.items)
        stamps = [it.last_access for it in c.items.values()]
        assert stamps == sorted(stamps)
