"""Small constructors for hand-built discourses."""

from centercache.model import (Agreement, Discourse, DiscourseEntity, Form, PropositionTag, ReferenceMarker,
                               SegmentBoundary, Tense, Utterance)

AGR = {"f": Agreement("f"), "m": Agreement("m"), "n": Agreement("n"), "pl": Agreement("unknown", "pl")}


def name(uid, pos, ent, fn="subject"):
    return ReferenceMarker(f"{uid}:{pos}", ent.title(), Form.PROPER_NAME, gram_function=fn,
                           gold_entity=ent, position=pos)


def pron(uid, pos, agr, fn="subject", contra=(), tags=()):
    return ReferenceMarker(f"{uid}:{pos}", "it", Form.PRONOUN, AGR[agr], gram_function=fn, position=pos,
                           contraindices=frozenset(f"{uid}:{c}" for c in contra),
                           selectional_tags=frozenset(tags))


def utt(i, *markers, cues=(), tense=Tense.UNMARKED, props=(), prompt=False, label=""):
    return Utterance(i, markers=tuple(markers), cue_words=tuple(cues), tense=tense,
                     predicates=tuple(PropositionTag(p, p.split("-")[0], a) for p, a in props),
                     is_prompt=prompt, label=label)


def entities(**agr):
    return {k: DiscourseEntity(k, k.title(), AGR[v]) for k, v in agr.items()}


def disc(utts, bounds=(), ents=None, **kw):
    return Discourse("t", tuple(utts), tuple(bounds), ents or {}, **kw)


__all__ = ["name", "pron", "utt", "entities", "disc", "SegmentBoundary", "Tense"]
