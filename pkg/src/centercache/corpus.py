"""Corpus files: JSON or JSON-lines, schema plus cross-reference validation, round-trip dump."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Union

import jsonschema

from .model import (Agreement, Discourse, DiscourseEntity, Evidence, Form, PropositionTag,
                    ReferenceMarker, Relation, SegmentBoundary, Tense, Transition, Utterance,
                    ValidationError)

SCHEMA_VERSION = "1.0.0"
SUPPORTED_MAJOR = 1


class CorpusIOError(OSError):
    """The corpus file could not be read or written."""


_AGREEMENT = {
    "type": "object",
    "properties": {
        "gender": {"enum": ["m", "f", "n", "unknown"]},
        "number": {"enum": ["sg", "pl"]},
        "person": {"enum": [1, 2, 3]},
    },
    "additionalProperties": False,
}
_STRS = {"type": "array", "items": {"type": "string"}}
_REF = {"type": ["integer", "string"]}

MARKER_SCHEMA = {
    "type": "object",
    "required": ["id", "surface", "form"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "surface": {"type": "string"},
        "form": {"enum": [f.value for f in Form]},
        "agreement": _AGREEMENT,
        "gram_function": {"type": "string"},
        "selectional_tags": _STRS,
        "discourse_tags": _STRS,
        "contraindices": _STRS,
        "gold_entity": {"type": ["string", "null"]},
        "indefinite": {"type": "boolean"},
        "pleonastic": {"type": "boolean"},
        "clause": {"type": "integer", "minimum": 0},
        "position": {"type": "integer", "minimum": 0},
        "conjuncts": _STRS,
    },
    "additionalProperties": False,
}

UTTERANCE_SCHEMA = {
    "type": "object",
    "properties": {
        "label": {"type": "string"},
        "speaker": {"type": "string"},
        "text": {"type": "string"},
        "markers": {"type": "array", "items": MARKER_SCHEMA},
        "predicates": {"type": "array", "items": {
            "type": "object", "required": ["id", "predicate"],
            "properties": {"id": {"type": "string"}, "predicate": {"type": "string"}, "args": _STRS},
            "additionalProperties": False}},
        "cue_words": _STRS,
        "tense": {"enum": [t.value for t in Tense]},
        "is_prompt": {"type": "boolean"},
        "prev_override": _REF,
        "clarification": {"type": "boolean"},
        "subgoal": {"type": "boolean"},
        "gold_transition": {"enum": [t.value for t in Transition]},
    },
    "additionalProperties": False,
}

DISCOURSE_SCHEMA = {
    "type": "object",
    "required": ["id"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "notes": {"type": "string"},
        "initial_segment": {"type": "string"},
        "sister_segments": {"type": "boolean"},
        "entities": {"type": "array", "items": {
            "type": "object", "required": ["id"],
            "properties": {
                "id": {"type": "string", "minLength": 1},
                "canonical": {"type": "string"},
                "agreement": _AGREEMENT,
                "tags": _STRS,
                "prior": {"type": "boolean"},
                "aliases": _STRS,
                "first_mention": {"type": "integer", "minimum": 0},
            },
            "additionalProperties": False}},
        "utterances": {"type": "array", "items": UTTERANCE_SCHEMA},
        "boundaries": {"type": "array", "items": {
            "type": "object", "required": ["before"],
            "properties": {
                "before": _REF,
                "relation": {"enum": [r.value for r in Relation]},
                "evidence": {"enum": [e.value for e in Evidence]},
                "return_target": {"type": "string"},
                "segment": {"type": "string"},
                "link_evidence": {"enum": ["iru", "tense-change", "unknown"]},
            },
            "additionalProperties": False}},
    },
    "additionalProperties": False,
}

CORPUS_SCHEMA = {
    "type": "object",
    "required": ["version", "discourses"],
    "properties": {
        "version": {"type": "string", "pattern": r"^\d+\.\d+\.\d+$"},
        "discourses": {"type": "array", "items": DISCOURSE_SCHEMA},
    },
    "additionalProperties": False,
}


@dataclass(frozen=True)
class CorpusFile:
    version: str = SCHEMA_VERSION
    discourses: tuple = ()

    def discourse(self, did: str) -> Discourse:
        for d in self.discourses:
            if d.id == did:
                return d
        raise KeyError(did)


def _path(err: jsonschema.ValidationError, prefix: str = "") -> str:
    out = prefix
    for p in err.absolute_path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def _agreement(raw: Optional[dict]) -> Optional[Agreement]:
    return None if raw is None else Agreement(raw.get("gender", "unknown"), raw.get("number", "sg"),
                                              raw.get("person", 3))


def _lookup(ref, labels: dict, n: int, where: str) -> int:
    if isinstance(ref, int):
        if not 1 <= ref <= n:
            raise ValidationError(f"utterance index {ref} out of range", where)
        return ref
    if ref not in labels:
        raise ValidationError(f"unknown utterance label {ref!r}", where)
    return labels[ref]


def build_discourse(raw: dict, where: str = "", allow_pleonastic: bool = False) -> Discourse:
    """Object graph for one validated discourse dict, with cross-reference checks."""
    did = raw["id"]
    where = where or did
    entities = {}
    for k, e in enumerate(raw.get("entities", [])):
        loc = f"{where}.entities[{k}]"
        if e["id"] in entities:
            raise ValidationError(f"duplicate entity id {e['id']!r}", loc)
        entities[e["id"]] = DiscourseEntity(
            e["id"], e.get("canonical", e["id"]), _agreement(e.get("agreement")) or Agreement(),
            frozenset(e.get("tags", ())), e.get("first_mention", 0), e.get("prior", False),
            tuple(e.get("aliases", ())))
    uts = raw.get("utterances", [])
    labels = {}
    for i, u in enumerate(uts, start=1):
        lab = u.get("label")
        if lab:
            if lab in labels:
                raise ValidationError(f"duplicate utterance label {lab!r}", f"{where}.utterances[{i - 1}]")
            labels[lab] = i
    marker_ids: set = set()
    utterances = []
    for i, u in enumerate(uts, start=1):
        uloc = f"{where}.utterances[{i - 1}]"
        ids_here = [m["id"] for m in u.get("markers", [])]
        markers = []
        for k, m in enumerate(u.get("markers", [])):
            loc = f"{uloc}.markers[{k}]"
            if m["id"] in marker_ids:
                raise ValidationError(f"duplicate marker id {m['id']!r}", loc)
            marker_ids.add(m["id"])
            if m.get("pleonastic") and not allow_pleonastic:
                raise ValidationError("pleonastic markers are excluded at annotation time", loc)
            form = Form(m["form"])
            if form.is_pronominal and "agreement" not in m:
                raise ValidationError("pronoun without agreement features", loc)
            for c in m.get("contraindices", ()):
                if c not in ids_here:
                    raise ValidationError(f"contraindex {c!r} names no marker in this utterance", loc)
                if c == m["id"]:
                    raise ValidationError("a marker cannot contraindex itself", loc)
            for ref in ([m["gold_entity"]] if m.get("gold_entity") else []) + list(m.get("conjuncts", ())):
                if ref not in entities:
                    raise ValidationError(f"unknown entity {ref!r}", loc)
            markers.append(ReferenceMarker(
                id=m["id"], surface=m["surface"], form=form,
                agreement=_agreement(m.get("agreement")) or Agreement(),
                gram_function=m.get("gram_function", "other"),
                selectional_tags=frozenset(m.get("selectional_tags", ())),
                discourse_tags=frozenset(m.get("discourse_tags", ())),
                contraindices=frozenset(m.get("contraindices", ())),
                gold_entity=m.get("gold_entity"), indefinite=m.get("indefinite", False),
                pleonastic=m.get("pleonastic", False), clause=m.get("clause", 0),
                position=m.get("position", k), conjuncts=tuple(m.get("conjuncts", ()))))
        preds = []
        for k, p in enumerate(u.get("predicates", [])):
            for a in p.get("args", ()):
                if a not in entities:
                    raise ValidationError(f"proposition argument {a!r} is not a registered entity",
                                          f"{uloc}.predicates[{k}]")
            preds.append(PropositionTag(p["id"], p["predicate"], tuple(p.get("args", ()))))
        override = u.get("prev_override")
        if override is not None:
            override = _lookup(override, labels, len(uts), f"{uloc}.prev_override")
        try:
            utterances.append(Utterance(
                index=i, speaker=u.get("speaker", ""), markers=tuple(markers), predicates=tuple(preds),
                cue_words=tuple(u.get("cue_words", ())), tense=Tense(u.get("tense", "unmarked")),
                is_prompt=u.get("is_prompt", False), prev_override=override, label=u.get("label", ""),
                text=u.get("text", ""), clarification=u.get("clarification", False),
                subgoal=u.get("subgoal", False),
                gold_transition=Transition(u["gold_transition"]) if "gold_transition" in u else None))
        except ValidationError as e:
            raise ValidationError(str(e), uloc) from None
    boundaries = []
    seen = set()
    segments = {raw.get("initial_segment", "1")}
    for k, b in enumerate(raw.get("boundaries", [])):
        loc = f"{where}.boundaries[{k}]"
        pos = _lookup(b["before"], labels, len(uts), loc)
        if pos in seen:
            raise ValidationError(f"two boundaries before utterance {pos}", loc)
        seen.add(pos)
        if b.get("segment"):
            segments.add(b["segment"])
        rel = Relation(b.get("relation", "unknown"))
        if b.get("return_target") and rel is not Relation.RETURN_POP:
            raise ValidationError("return_target only allowed on a return-pop", loc)
        boundaries.append(SegmentBoundary(pos, rel, Evidence(b.get("evidence", "human-judgement")),
                                          b.get("return_target"), b.get("segment"), b.get("link_evidence")))
    for k, b in enumerate(boundaries):
        if b.return_target is not None and b.return_target not in segments:
            raise ValidationError(f"return target {b.return_target!r} names no segment",
                                  f"{where}.boundaries[{k}]")
    boundaries.sort(key=lambda b: b.before_utterance)
    return Discourse(did, tuple(utterances), tuple(boundaries), entities,
                     raw.get("sister_segments", False), raw.get("initial_segment", "1"), raw.get("notes", ""))


def _check_version(v: str, where: str):
    if int(v.split(".")[0]) != SUPPORTED_MAJOR:
        raise ValidationError(f"unsupported corpus version {v}", where)


def load_corpus(obj: dict, source: str = "<memory>", allow_pleonastic: bool = False) -> CorpusFile:
    v = jsonschema.Draft202012Validator(CORPUS_SCHEMA)
    errs = sorted(v.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errs:
        e = errs[0]
        raise ValidationError(e.message, f"{source}:{_path(e)}")
    _check_version(obj["version"], source)
    ds = []
    ids = set()
    for k, raw in enumerate(obj["discourses"]):
        if raw["id"] in ids:
            raise ValidationError(f"duplicate discourse id {raw['id']!r}", f"{source}:discourses[{k}]")
        ids.add(raw["id"])
        ds.append(build_discourse(raw, f"{source}:discourses[{k}]", allow_pleonastic))
    return CorpusFile(obj["version"], tuple(ds))


def _read_jsonl(text: str, source: str) -> dict:
    version, discourses = SCHEMA_VERSION, []
    for n, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise ValidationError(f"bad JSON: {e.msg}", f"{source}:{n}") from None
        if isinstance(rec, dict) and "version" in rec and "id" not in rec:
            version = rec["version"]
        else:
            discourses.append(rec)
    return {"version": version, "discourses": discourses}


def parse_corpus(path: Union[str, Path], allow_pleonastic: bool = False) -> CorpusFile:
    """Read and validate a corpus file (``.json`` or ``.jsonl``)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise CorpusIOError(f"cannot read {path}: {e.strerror}") from e
    if path.suffix == ".jsonl":
        obj = _read_jsonl(text, str(path))
    else:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValidationError(f"bad JSON: {e.msg}", f"{path}:{e.lineno}:{e.colno}") from None
    return load_corpus(obj, str(path), allow_pleonastic)


def _agr(a: Agreement) -> dict:
    return {"gender": a.gender, "number": a.number, "person": a.person}


def discourse_to_dict(d: Discourse) -> dict:
    out: dict = {"id": d.id}
    if d.notes:
        out["notes"] = d.notes
    if d.initial_segment != "1":
        out["initial_segment"] = d.initial_segment
    if d.sister_segments:
        out["sister_segments"] = True
    out["entities"] = [
        {k: v for k, v in [("id", e.id), ("canonical", e.canonical), ("agreement", _agr(e.agreement)),
                           ("tags", sorted(e.selectional_tags)), ("prior", e.prior),
                           ("aliases", list(e.aliases)), ("first_mention", e.first_mention)]
         if v or k in ("id", "canonical", "agreement")}
        for e in d.entities.values()]
    uts = []
    for u in d.utterances:
        ru: dict = {}
        for k, v in [("label", u.label), ("speaker", u.speaker), ("text", u.text)]:
            if v:
                ru[k] = v
        ms = []
        for m in u.markers:
            rm = {"id": m.id, "surface": m.surface, "form": m.form.value, "agreement": _agr(m.agreement),
                  "gram_function": str(getattr(m.gram_function, "value", m.gram_function))}
            for k, v in [("selectional_tags", sorted(m.selectional_tags)),
                         ("discourse_tags", sorted(m.discourse_tags)),
                         ("contraindices", sorted(m.contraindices)), ("gold_entity", m.gold_entity),
                         ("indefinite", m.indefinite), ("pleonastic", m.pleonastic),
                         ("clause", m.clause), ("conjuncts", list(m.conjuncts))]:
                if v:
                    rm[k] = v
            rm["position"] = m.position
            ms.append(rm)
        if ms:
            ru["markers"] = ms
        if u.predicates:
            ru["predicates"] = [{"id": p.id, "predicate": p.predicate, "args": list(p.args)}
                                for p in u.predicates]
        if u.cue_words:
            ru["cue_words"] = list(u.cue_words)
        if u.tense is not Tense.UNMARKED:
            ru["tense"] = u.tense.value
        for k, v in [("is_prompt", u.is_prompt), ("prev_override", u.prev_override),
                     ("clarification", u.clarification), ("subgoal", u.subgoal)]:
            if v:
                ru[k] = v
        if u.gold_transition is not None:
            ru["gold_transition"] = u.gold_transition.value
        uts.append(ru)
    out["utterances"] = uts
    bs = []
    for b in d.boundaries:
        rb = {"before": b.before_utterance, "relation": b.relation.value, "evidence": b.evidence.value}
        for k, v in [("return_target", b.return_target), ("segment", b.segment),
                     ("link_evidence", b.link_evidence)]:
            if v:
                rb[k] = v
        bs.append(rb)
    out["boundaries"] = bs
    return out


def dump_corpus(corpus: Union[CorpusFile, Iterable[Discourse]], path: Optional[Union[str, Path]] = None) -> str:
    """Serialize to the JSON corpus format; writes ``path`` when given."""
    if not isinstance(corpus, CorpusFile):
        corpus = CorpusFile(SCHEMA_VERSION, tuple(corpus))
    text = json.dumps({"version": corpus.version,
                       "discourses": [discourse_to_dict(d) for d in corpus.discourses]},
                      indent=1, ensure_ascii=False) + "\n"
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise CorpusIOError(f"cannot write {path}: {e.strerror}") from e
    return text


FIXTURES = ("dialogue_b", "dialogue_c", "dialogue_d", "dialogue_e", "dialogue_f",
            "pear_fig11", "fig12", "fig13", "fig15", "fig16", "fig17", "fig9", "pops21", "fig8")


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("centercache") / "data" / f"{name}.json"))


def load_fixture(name: str) -> CorpusFile:
    return parse_corpus(fixture_path(name))
