"""
A bounded working set backed by main memory
===========================================

The cache keeps the most recently used items and spills the rest to main
memory. Retained items are never displaced. A cued retrieval brings items
back.
"""

from centercache import cache as ac
from centercache.model import Agreement

cache, memory = ac.new_cache(3), ac.MainMemory()
people = [ac.CacheItem(n, agreement=Agreement(g), tags=frozenset({"human"}))
          for n, g in [("ann", "f"), ("bob", "m"), ("cat", "f"), ("dan", "m")]]

cache.insert(memory, people[:3])
cache.retain("ann")
print("displaced:", cache.insert(memory, people[3:]))
print("cache (most recent first):", cache.snapshot(), " memory:", sorted(memory.items))

# "he" with only agreement to go on
ev = cache.retrieve(memory, ac.RetrievalCue(Agreement("m")), at_utterance=5)
print("retrieved", ev.retrieved, "via", ev.tier, "adequate:", ev.adequate)

###############################################################################
# Two dialogues differ only in how much talk separates a pronoun from its
# antecedent. With room for seven items the short one keeps the daughter in
# the cache; in the long one she has to be fetched back.

from centercache import load_fixture, process_discourse

for name in ("dialogue_b", "dialogue_c"):
    d = load_fixture(name).discourses[0]
    r = {d.utterance(x.utterance).name: x for x in process_discourse(d)}["8a"]
    status = {m.surface: r.marker_status[m.id] for m in d.by_label("8a").markers if m.id in r.marker_status}
    print(f"{name}: {status}, retrieval events: {len(r.retrieval_events)}")
