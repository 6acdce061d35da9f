"""Random small discourses for property tests and engine cross-checks."""

from __future__ import annotations

import random
from typing import Optional

from .corpus import SCHEMA_VERSION, load_corpus
from .model import Discourse

_NAMES = ["Ann", "Bob", "Cara", "Dan", "Eve", "Fred"]
_AGR = [("f", "sg"), ("m", "sg"), ("n", "sg"), ("unknown", "pl")]
_PRONOUN = {("f", "sg"): "she", ("m", "sg"): "he", ("n", "sg"): "it", ("unknown", "pl"): "they"}
_FUNCTIONS = ["subject", "direct-object", "indirect-object", "oblique"]
_TAGS = ["human", "vehicle", "food"]


def random_discourse_dict(rng: random.Random, did: str = "syn", max_utterances: int = 8,
                          max_entities: int = 4, pronoun_rate: float = 0.5) -> dict:
    """A schema-valid discourse dict with agreement-correct pronouns.

    Gold entities are recorded on pronouns as well, but the engine ignores
    them for pronouns, so they only serve as a reference answer.
    """
    n_ent = rng.randint(1, max_entities)
    entities = []
    for k in range(n_ent):
        g, num = rng.choice(_AGR)
        ent = {"id": f"e{k}", "canonical": _NAMES[k], "agreement": {"gender": g, "number": num, "person": 3}}
        if rng.random() < 0.5:
            ent["tags"] = [rng.choice(_TAGS)]
        entities.append(ent)
    utts = []
    for i in range(rng.randint(1, max_utterances)):
        k_markers = rng.randint(1, min(3, n_ent))
        chosen = rng.sample(entities, k_markers)
        funcs = rng.sample(_FUNCTIONS, k_markers)
        markers = []
        for p, (e, f) in enumerate(zip(chosen, funcs)):
            mid = f"{did}:{i}:{p}"
            agr = e["agreement"]
            if i > 0 and rng.random() < pronoun_rate:
                m = {"id": mid, "surface": _PRONOUN[(agr["gender"], agr["number"])], "form": "pronoun",
                     "agreement": dict(agr), "gram_function": f, "position": p, "gold_entity": e["id"]}
                if e.get("tags") and rng.random() < 0.3:
                    m["selectional_tags"] = list(e["tags"])
            else:
                m = {"id": mid, "surface": e["canonical"], "form": "proper-name", "gram_function": f,
                     "position": p, "gold_entity": e["id"]}
            markers.append(m)
        # distinct entities in one clause may be marked disjoint
        if len(markers) > 1 and rng.random() < 0.5:
            markers[0]["contraindices"] = [markers[1]["id"]]
        utts.append({"label": str(i + 1), "markers": markers})
    return {"id": did, "entities": entities, "utterances": utts}


def random_discourse(seed: Optional[int] = None, **kw) -> Discourse:
    rng = random.Random(seed)
    raw = random_discourse_dict(rng, did=f"syn-{seed}", **kw)
    return load_corpus({"version": SCHEMA_VERSION, "discourses": [raw]}, f"<synthetic {seed}>").discourses[0]


def random_corpus(n: int, seed: int = 0, **kw) -> list:
    return [random_discourse(seed * 100_003 + k, **kw) for k in range(n)]
