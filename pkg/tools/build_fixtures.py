"""Regenerate the JSON fixtures under src/centercache/data.

    python3 tools/build_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "centercache" / "data"
VERSION = "1.0.0"

AGR = {
    "m": {"gender": "m", "number": "sg", "person": 3},
    "f": {"gender": "f", "number": "sg", "person": 3},
    "n": {"gender": "n", "number": "sg", "person": 3},
    "pl": {"gender": "unknown", "number": "pl", "person": 3},
    "u": {"gender": "unknown", "number": "sg", "person": 3},
}
FORMS = {"pro": "pronoun", "zero": "zero-pronoun", "desc": "description", "name": "proper-name",
         "deic": "deictic-np"}
GF = {"S": "subject", "O": "direct-object", "I": "indirect-object", "B": "oblique", "X": "other"}


def ent(id, canonical=None, agr="n", tags=(), prior=False, aliases=()):
    e = {"id": id, "canonical": canonical or id, "agreement": AGR[agr]}
    if tags:
        e["tags"] = sorted(tags)
    if prior:
        e["prior"] = True
    if aliases:
        e["aliases"] = list(aliases)
    return e


def mk(surface, form, gf, gold=None, agr=None, sel=(), disc=(), contra=(), indef=False, clause=0):
    return dict(surface=surface, form=FORMS[form], gf=GF[gf], gold=gold, agr=agr, sel=sel, disc=disc,
                contra=contra, indef=indef, clause=clause)


def utt(label, text="", markers=(), speaker="", props=(), cue=(), tense=None, prompt=False,
        override=None, clarification=False, subgoal=False, gold=None):
    return dict(label=label, text=text, markers=markers, speaker=speaker, props=props, cue=cue,
                tense=tense, prompt=prompt, override=override, clarification=clarification,
                subgoal=subgoal, gold=gold)


def discourse(id, entities, utterances, boundaries=(), notes="", initial="1", sister=False):
    uts = []
    for u in utterances:
        ru = {"label": u["label"]}
        if u["speaker"]:
            ru["speaker"] = u["speaker"]
        if u["text"]:
            ru["text"] = u["text"]
        ids = [f"{id}:{u['label']}:{k}" for k in range(len(u["markers"]))]
        ms = []
        for k, m in enumerate(u["markers"]):
            rm = {"id": ids[k], "surface": m["surface"], "form": m["form"], "gram_function": m["gf"],
                  "position": k}
            if m["agr"]:
                rm["agreement"] = AGR[m["agr"]]
            elif m["form"] in ("pronoun", "zero-pronoun"):
                raise ValueError(f"pronoun without agreement in {id} {u['label']}")
            if m["gold"]:
                rm["gold_entity"] = m["gold"]
            if m["sel"]:
                rm["selectional_tags"] = sorted(m["sel"])
            if m["disc"]:
                rm["discourse_tags"] = sorted(m["disc"])
            if m["contra"]:
                rm["contraindices"] = [ids[c] for c in m["contra"]]
            if m["indef"]:
                rm["indefinite"] = True
            if m["clause"]:
                rm["clause"] = m["clause"]
            ms.append(rm)
        if ms:
            ru["markers"] = ms
        if u["props"]:
            ru["predicates"] = [{"id": p, "predicate": pred, "args": list(args)} for p, pred, args in u["props"]]
        if u["cue"]:
            ru["cue_words"] = list(u["cue"])
        if u["tense"]:
            ru["tense"] = u["tense"]
        if u["prompt"]:
            ru["is_prompt"] = True
        if u["override"]:
            ru["prev_override"] = u["override"]
        if u["clarification"]:
            ru["clarification"] = True
        if u["subgoal"]:
            ru["subgoal"] = True
        if u["gold"]:
            ru["gold_transition"] = u["gold"]
        uts.append(ru)
    out = {"id": id}
    if notes:
        out["notes"] = notes
    if initial != "1":
        out["initial_segment"] = initial
    if sister:
        out["sister_segments"] = True
    out["entities"] = entities
    out["utterances"] = uts
    out["boundaries"] = [dict(b) for b in boundaries]
    return out


def bnd(before, relation, evidence, segment=None, target=None):
    b = {"before": before, "relation": relation, "evidence": evidence}
    if segment:
        b["segment"] = segment
    if target:
        b["return_target"] = target
    return b


def write(name, *discourses):
    OUT.mkdir(parents=True, exist_ok=True)
    text = json.dumps({"version": VERSION, "discourses": list(discourses)}, indent=1, ensure_ascii=False)
    (OUT / f"{name}.json").write_text(text + "\n", encoding="utf-8")


# ---------------------------------------------------------------- Dialogue D

def dialogue_d():
    return discourse("dialogue-d", [
        ent("susan", "Susan", "f", {"human"}), ent("alfa", "Alfa Romeo", "n"),
        ent("lyn", "Lyn", "f", {"human"}), ent("weekends", "weekends", "pl"),
    ], [
        utt("a", "Susan drives an Alfa Romeo.", [
            mk("Susan", "name", "S", "susan"), mk("an Alfa Romeo", "desc", "O", "alfa", indef=True)]),
        utt("b", "She drives too fast.", [mk("She", "pro", "S", agr="f")]),
        utt("c", "Lyn races her on weekends.", [
            mk("Lyn", "name", "S", "lyn"), mk("her", "pro", "O", agr="f", contra=[0]),
            mk("weekends", "desc", "B", "weekends")]),
        utt("d", "She often beats her.", [
            mk("She", "pro", "S", agr="f"), mk("her", "pro", "O", agr="f", contra=[0])]),
    ], notes="Constructed monologue. Gold transitions NO-CB, CONTINUE, RETAIN, SMOOTH-SHIFT.")


# ---------------------------------------------------------------- Dialogues B and C

def _hank(id, extra):
    ents = [ent("daughter", "my daughter", "f", {"human"}), ent("name", "your name", "n"),
            ent("caller", "Hank", "m", {"human"}, aliases=("Hank",)),
            ent("husband", "her husband", "m", {"human"}), ent("child", "a child", "n", {"human"})]
    head = [
        utt("4", "C: Ok Harry, I have a problem that uh my - with today's economy my daughter is working,",
            [mk("my daughter", "desc", "S", "daughter")], "C", [("p4", "working", ["daughter"])],
            tense="present"),
        utt("5", "H: I missed your name.", [mk("your name", "desc", "O", "name")], "H",
            [("p5", "missed", ["name"])], tense="simple-past"),
        utt("6", "C: Hank.", [mk("Hank", "desc", "S", "name")], "C", [("p6", "is-name", ["name"])]),
    ]
    tail = [
        utt("7", "H: Go ahead Hank", [mk("Hank", "name", "O", "caller")], "H",
            [("p7", "go-ahead", ["caller"])], tense="present"),
        utt("8a", "C: as well as her uh husband.", [
            mk("her", "pro", "X", agr="f"), mk("her uh husband", "desc", "S", "husband")], "C",
            [("p8a", "working", ["husband"])], tense="present"),
        utt("8b", "They have a child.", [
            mk("They", "pro", "S", agr="pl"), mk("a child", "desc", "O", "child", indef=True)], "C",
            [("p8b", "have", ["child"])], tense="present"),
        utt("8c", "and they bring the child to us every day for babysitting.", [
            mk("they", "pro", "S", agr="pl"), mk("the child", "desc", "O", "child")], "C",
            [("p8c", "bring", ["child"])], tense="present"),
    ]
    return discourse(id, ents, head + extra + tail, [
        bnd("5", "interruption", "human-judgement", "2"),
        bnd("8a", "return-pop", "human-judgement", target="1"),
    ], notes="One entity and one proposition per utterance. 'They' in 8b/8c has a split antecedent "
             "(daughter and husband) that the annotation scheme does not model, so it stays unresolved.")


def dialogue_b():
    return _hank("dialogue-b", [])


def dialogue_c():
    extra = [
        utt("6b", "H: I'm sorry, I can't hear you.", [], "H", [("p6b", "cannot-hear", ["caller"])]),
        utt("6c", "C: Hank.", [mk("Hank", "desc", "S", "name")], "C", [("p6c", "is-name", ["name"])]),
        utt("6d", "H: Is that H A N K?", [mk("H A N K", "desc", "S", "name")], "H",
            [("p6d", "spelled", ["name"])]),
        utt("6e", "C: Yes.", [], "C", prompt=True),
    ]
    return _hank("dialogue-c", extra)


# ---------------------------------------------------------------- Pear story, Fig 11 (Dialogue A)

def pear_fig11():
    return discourse("pear-fig11", [
        ent("boy", "the little boy", "m", {"human", "animate"}, aliases=("this little boy", "little boy")),
        ent("pears", "the pears", "pl"), ent("pear", "a pear", "n"), ent("way", "his way", "n"),
        ent("basket", "a whole basket", "n"), ent("bicycle", "the bicycle", "n"),
    ], [
        utt("28", "And you think Wow, this little boy's probably going to come and see the pears,", [
            mk("this little boy", "deic", "S", "boy"), mk("the pears", "desc", "O", "pears")],
            tense="present"),
        utt("29a", "and he's going to take a pear or two,", [
            mk("he", "pro", "S", agr="m"), mk("a pear or two", "desc", "O", "pear", indef=True)],
            tense="present"),
        utt("29b", "and then go on his way.", [
            mk("his", "pro", "X", agr="m"), mk("his way", "desc", "B", "way")], tense="present"),
        utt("30", "um but the little boy comes,", [mk("the little boy", "desc", "S", "boy")],
            tense="present", gold="CONTINUE"),
        utt("31", "and uh he doesn't want just a pear,", [
            mk("he", "pro", "S", agr="m"), mk("just a pear", "desc", "O", "pear")], tense="present"),
        utt("32", "he wants a whole basket.", [
            mk("he", "pro", "S", agr="m"), mk("a whole basket", "desc", "O", "basket", indef=True)],
            tense="present"),
        utt("33", "So he puts the bicycle down,", [
            mk("he", "pro", "S", agr="m"), mk("the bicycle", "desc", "O", "bicycle")],
            cue=("so",), tense="present", gold="CONTINUE"),
        utt("34", "and he ... you wonder how he's going to take it with this.", [
            mk("he", "pro", "S", agr="m")], tense="present"),
    ], [
        bnd("30", "sister", "human-judgement", "7"),
        bnd("33", "sister", "human-judgement", "8"),
    ], notes="Narrative excerpt; segments 6, 7 and 8 are sisters. Utterances 29-34 are Dialogue A.",
        initial="6", sister=True)


# ---------------------------------------------------------------- Fig 12

def fig12():
    return discourse("fig12", [
        ent("article", "that little article", "n", {"publication"}, aliases=("a copy", "one copy")),
        ent("note", "a note", "n"),
    ], [
        utt("32a", "H: If you'd like a copy of that little article just send me a note.", [
            mk("a note", "desc", "O", "note", indef=True),
            mk("a copy of that little article", "desc", "O", "article", clause=1)], "H", tense="present"),
        utt("32b", "I only have one copy.", [mk("one copy", "desc", "O", "article")], "H",
            tense="present"),
        utt("32c", "I'd be glad to send it to you.", [mk("it", "pro", "O", agr="n")], "H", tense="other"),
        utt("33", "C: Where did it appear?", [mk("it", "pro", "S", agr="n")], "C",
            tense="simple-past", clarification=True, gold="CONTINUE"),
        utt("34", "H: it- I - to tell you the truth", [], "H", prompt=True),
        utt("35", "C: It wasn't in the newsp--", [mk("It", "pro", "S", agr="n")], "C",
            tense="simple-past"),
        utt("36", "H: I don't remember where, what publication it was.", [
            mk("it", "pro", "S", agr="n", sel={"publication"})], "H", tense="present"),
    ], [bnd("33", "subordinate", "clarification-question", "N+1")],
        notes="Copy and article are treated as coreferential. Utterance 34 is a false start with no "
              "referring expression.", initial="N")


# ---------------------------------------------------------------- Fig 13

def fig13():
    return discourse("fig13", [
        ent("cap", "the blue cap", "n", {"artifact"}, aliases=("that blue cap", "blue cap")),
        ent("prongs", "the two prongs", "pl"), ent("piece", "the little piece of pink plastic", "n"),
        ent("ring", "the rubber ring", "n"),
    ], [
        utt("1", "Expert: Now take the blue cap with the two prongs sticking out", [
            mk("the blue cap", "desc", "O", "cap"), mk("the two prongs", "desc", "B", "prongs")],
            "Expert", cue=("now",), tense="present"),
        utt("2", "Expert: and fit the little piece of pink plastic on it. Ok?", [
            mk("the little piece of pink plastic", "desc", "O", "piece"),
            mk("it", "pro", "B", agr="n")], "Expert", tense="present"),
        utt("3", "Apprentice: Ok.", [], "Apprentice", prompt=True),
        utt("4", "Expert: Insert the rubber ring into that blue cap.", [
            mk("the rubber ring", "desc", "O", "ring"), mk("that blue cap", "deic", "B", "cap")],
            "Expert", tense="present", subgoal=True, gold="RETAIN"),
    ], [bnd("4", "subordinate", "task-subgoal", "N+1")], initial="N",
        notes="Task dialogue. The opening 'Now' is discourse initial and is not a boundary of interest.")


# ---------------------------------------------------------------- Fig 14 / Dialogue F

def dialogue_f(id="dialogue-f"):
    return discourse(id, [
        ent("boy", "the boy", "m", {"human", "animate"}, prior=True),
        ent("bicycle", "his bicycle", "n"), ent("rock", "a rock", "n"),
        ent("girl", "the girl", "f", {"human", "animate"}),
        ent("movie", "this movie", "n"),
        ent("sounds", "sounds", "pl"), ent("birds", "the birds and stuff", "pl"),
        ent("humans", "the humans beings", "pl", {"human"}), ent("kids", "three other little kids", "pl"),
    ], [
        utt("1", "a-nd his bicycle hits a rock.", [
            mk("his", "pro", "X", agr="m"), mk("his bicycle", "desc", "S", "bicycle"),
            mk("a rock", "desc", "O", "rock", indef=True)], props=[("p1", "hits", ["bicycle", "rock"])],
            tense="present"),
        utt("2", "Because he's looking at the girl.", [
            mk("he", "pro", "S", agr="m"), mk("the girl", "desc", "B", "girl")],
            props=[("p2", "looking-at", ["boy", "girl"])], tense="present"),
        utt("3", "ZERO-PRONOUN falls over,", [mk("0", "zero", "S", agr="m", sel={"animate"})],
            props=[("p3", "falls-over", ["boy"])], tense="present"),
        utt("4", "uh there's no conversation in this movie.", [mk("this movie", "deic", "B", "movie")],
            props=[("p4", "no-conversation", ["movie"])], tense="present"),
        utt("5", "There's sounds,", [mk("sounds", "desc", "S", "sounds")],
            props=[("p5", "has-sounds", ["movie"])], tense="present"),
        utt("6", "you know,", [], prompt=True),
        utt("7", "like the birds and stuff,", [mk("the birds and stuff", "desc", "S", "birds")],
            props=[("p7", "like", ["birds"])]),
        utt("8", "but there.. the humans beings in it don't say anything.", [
            mk("the humans beings", "desc", "S", "humans"), mk("it", "pro", "B", agr="n")],
            props=[("p8", "silent", ["humans"])], tense="present"),
        utt("9", "He falls over,", [mk("He", "pro", "S", agr="m", sel={"animate"})],
            props=[("p3", "falls-over", ["boy"])], tense="present"),
        utt("10", "and then these three other little kids about his same age come walking by.", [
            mk("these three other little kids", "deic", "S", "kids"), mk("his", "pro", "X", agr="m")],
            props=[("p10", "walk-by", ["kids"])], tense="present"),
    ], [
        bnd("4", "interruption", "human-judgement", "15"),
        bnd("9", "return-pop", "human-judgement", "16", target="14"),
    ], initial="14", notes="Utterance 9 repeats the proposition of utterance 3 (an IRU). The boy is "
                           "known from earlier in the narrative. Segment 16 continues segment 14. 'no conversation' "
                           "is a negated existential and introduces no entity.")


# ---------------------------------------------------------------- Fig 15

def fig15():
    return discourse("fig15", [
        ent("children", "them", "pl", {"human"}, prior=True),
        ent("son", "my oldest son", "m", {"human", "animate"}), ent("sports", "sports", "pl"),
        ent("girl", "my little girl", "f", {"human", "animate"}), ent("baseball", "baseball", "n"),
        ent("team", "his team", "n"),
    ], [
        utt("1", "A: What are some of the things that you do with them?", [mk("them", "pro", "B", agr="pl")],
            "A", tense="present"),
        utt("2", "B: Well, my oldest son is eleven,", [mk("my oldest son", "desc", "S", "son")], "B",
            cue=("well",), tense="present"),
        utt("3", "and he is really into sports.", [
            mk("he", "pro", "S", agr="m"), mk("sports", "desc", "B", "sports")], "B", tense="present"),
        utt("4", "And my little girl just started sports.", [
            mk("my little girl", "desc", "S", "girl"), mk("sports", "desc", "O", "sports")], "B",
            tense="simple-past"),
        utt("5", "Anyway, my oldest son, he plays baseball right now,", [
            mk("my oldest son", "desc", "X", "son"), mk("he", "pro", "S", agr="m"),
            mk("baseball", "desc", "O", "baseball")], "B", cue=("anyway", "now"), tense="present"),
        utt("6", "and he's a pitcher on his team,", [
            mk("he", "pro", "S", agr="m"), mk("his", "pro", "X", agr="m"),
            mk("his team", "desc", "B", "team")], "B", tense="present"),
        utt("7", "and he's doing really well.", [mk("he", "pro", "S", agr="m")], "B", tense="present"),
    ], [
        bnd("4", "subordinate", "human-judgement", "2"),
        bnd("5", "return-pop", "cue-anyway", "3", target="1"),
    ], notes="Segment 3 resumes segment 1; 'now' in utterance 5 is not utterance initial.")


# ---------------------------------------------------------------- Fig 16

def fig16():
    return discourse("fig16", [
        ent("policies", "Latin American policies", "pl"), ent("woman", "a woman", "f", {"human"}),
        ent("family", "a relatively wealthy family", "n"), ent("contras", "the Contras", "pl", {"human"}),
        ent("leader", "the Contra leader", "m", {"human", "animate"}, aliases=("what's his face",)),
        ent("jail", "Florida jail", "n"), ent("marcos", "Marcos", "m", {"human", "animate"}),
        ent("philippines", "Philippines", "n"), ent("face", "his face", "n"), ent("lname", "his name", "n"),
        ent("property", "everybody's property", "n"), ent("salvador", "El Salvador", "n"),
    ], [
        utt("1", "A: Well, what do you know about Latin American policies?", [
            mk("Latin American policies", "desc", "B", "policies")], "A", cue=("well",), tense="present"),
        utt("2", "B: Well, I think they're kind of ambivalent, really.", [mk("they", "pro", "S", agr="pl")],
            "B", cue=("well",), tense="present"),
        utt("25a", "A: Yep, that's about the lump sum of it.", [], "A", tense="present"),
        utt("25b", "Well, um, I was speaking with a, a woman from, I believe she was from the Honduras "
                   "or Guatemala,", [mk("a woman", "desc", "B", "woman", indef=True)], "A",
            cue=("well",), tense="past-imperfect"),
        utt("25c", "No, she was from El Salvador --", [
            mk("she", "pro", "S", agr="f"), mk("El Salvador", "name", "B", "salvador")], "A",
            tense="simple-past"),
        utt("26", "B: Yeah.", [], "B", prompt=True),
        utt("27a", "A: -- and, uh, she was from a relatively wealthy family,", [
            mk("she", "pro", "S", agr="f"), mk("a relatively wealthy family", "desc", "B", "family")], "A",
            tense="simple-past"),
        utt("27b", "and when, uh, the Contras came into power, of course with, uh,", [
            mk("the Contras", "desc", "S", "contras")], "A",
            props=[("p_power", "came-into-power", ["leader"])], tense="simple-past"),
        utt("27c", "oh, gosh darn, what's his face, he's in, in Florida jail now, Marcos --", [
            mk("what's his face", "name", "S", "leader"), mk("Florida jail", "name", "B", "jail")], "A",
            tense="present"),
        utt("28", "B: Yeah, yeah.", [], "B", prompt=True),
        utt("29", "A: -- uh, no, he's, Marcos is Philippines,", [
            mk("Marcos", "name", "S", "marcos"), mk("Philippines", "name", "X", "philippines")], "A",
            tense="present"),
        utt("30", "B: Yeah, um, well, I'm blank on it.", [], "B", tense="present"),
        utt("31", "A: Well, you know who I'm talking about.", [
            mk("who I'm talking about", "desc", "O", "leader")], "A", cue=("well",), tense="present"),
        utt("32", "B: I can see his face forget his name.", [
            mk("his", "pro", "X", agr="m"), mk("his face", "desc", "O", "face"),
            mk("his name", "desc", "O", "lname"), mk("his", "pro", "X", agr="m")], "B", tense="present"),
        utt("33a", "A: Yeah, I, I know it, uh,", [], "A", prompt=True),
        utt("33b", "Anyway, when he came into power, he basically just took everybody's property.", [
            mk("he", "pro", "S", agr="m", sel={"animate"}),
            mk("everybody's property", "desc", "O", "property")], "A", cue=("anyway",),
            props=[("p_power", "came-into-power", ["leader"])], tense="simple-past"),
        utt("34", "B: Yeah, kind of nationalized it --", [mk("it", "pro", "O", agr="n")], "B",
            tense="simple-past"),
    ], [
        bnd("25b", "subordinate", "human-judgement", "2"),
        bnd("27c", "interruption", "human-judgement", "3"),
        bnd("33b", "return-pop", "cue-anyway", "4", target="2"),
    ], notes="23 utterances between 2 and 25a are elided. In 27c the placeholder 'what's his face' "
             "names the Contra leader and the following 'he' is dropped as a repetition. Utterance 30 "
             "has no referring expression ('it' is pleonastic). 33a 'I know it' is a backchannel about "
             "the name and is treated as a prompt. 33b paraphrases 27b, so both carry p_power.")


# ---------------------------------------------------------------- Fig 17

def fig17():
    return discourse("fig17", [
        ent("house", "my house", "n"), ent("painting", "the painting", "n", {"activity"}),
        ent("kitchen", "the kitchen", "n", {"room"}),
        ent("period", "a period of depression", "n"),
        ent("color", "a sassafras", "n", {"has-appearance"}, aliases=("that color",)),
        ent("white", "white", "n", {"has-appearance"}),
    ], [
        utt("1", "A: Well, I was just looking around my house and thinking about the painting that I've done.",
            [mk("my house", "desc", "B", "house"), mk("the painting", "desc", "B", "painting")], "A",
            cue=("well",), tense="past-imperfect"),
        utt("2", "B: Uh-huh.", [], "B", prompt=True),
        utt("3a", "A: And the last time that, um, we tackled it, I did the kitchen.", [
            mk("the kitchen", "desc", "O", "kitchen"), mk("it", "pro", "O", agr="n", sel={"activity"}, clause=1)], "A",
            tense="simple-past"),
        utt("3b", "And I had gone through a period of depression at one time and painted everything a dark, "
                  "it was called a sassafras, it was kind of an orangish brown.", [
            mk("a sassafras", "desc", "O", "color", indef=True),
            mk("a period of depression", "desc", "B", "period", indef=True)], "A",
            tense="past-imperfect"),
        utt("4", "B: Okay.", [], "B", prompt=True),
        utt("5", "A: It was not real pretty.", [mk("It", "pro", "S", agr="n", sel={"has-appearance"})], "A",
            tense="simple-past"),
        utt("6", "B: Yeah.", [], "B", prompt=True),
        utt("7", "A: Anyway, so the kitchen was one of the rooms that got hit with that color.", [
            mk("the kitchen", "desc", "S", "kitchen"), mk("that color", "deic", "B", "color")], "A",
            cue=("anyway", "so"), tense="simple-past", gold="RETAIN"),
        utt("8", "B: Uh-huh, I see.", [], "B", prompt=True),
        utt("9", "A: So I tried to cover it with white....", [
            mk("it", "pro", "O", agr="n", sel={"has-appearance"}), mk("white", "desc", "B", "white")], "A",
            cue=("so",), tense="simple-past"),
    ], [
        bnd("3b", "subordinate", "tense-change", "2"),
        bnd("7", "return-pop", "cue-anyway", "3"),
    ], notes="The return target of the pop at 7 is left for the tense-change linker. The color is "
             "introduced by 'a sassafras'; 'it was kind of an orangish brown' is predicative.")


# ---------------------------------------------------------------- Dialogue E

def dialogue_e(id="dialogue-e"):
    return discourse(id, [
        ent("pear-boy", "the boy on the bike", "m", {"human", "animate", "rideable-agent"}, prior=True),
        ent("boys", "three boys", "pl", {"human", "animate"}),
        ent("bike", "his bike", "n"), ent("pears", "the pears", "pl"),
        ent("toy-boy", "one of them", "m", {"human", "animate", "toy-player"}),
        ent("toy", "a toy", "n"), ent("ball", "a ball", "n"), ent("string", "a string", "n"),
    ], [
        utt("21.1", "Three boys came out,", [mk("Three boys", "desc", "S", "boys")], tense="simple-past"),
        utt("21.2", "helped him pick himself up,", [
            mk("0", "zero", "S", agr="pl"), mk("him", "pro", "O", agr="m", contra=[0])],
            tense="simple-past"),
        utt("21.3", "pick up his bike,", [
            mk("0", "zero", "S", agr="pl"), mk("his", "pro", "X", agr="m", contra=[0]),
            mk("his bike", "desc", "O", "bike")]),
        utt("21.4", "pick up the pears,", [mk("0", "zero", "S", agr="pl"), mk("the pears", "desc", "O", "pears")]),
        utt("21.5", "one of them had a toy,", [
            mk("one of them", "desc", "S", "toy-boy"), mk("a toy", "desc", "O", "toy", indef=True)],
            tense="simple-past"),
        utt("21.6", "which was like a clapper.", [mk("which", "pro", "S", agr="n")],
            tense="simple-past", override="21.5"),
        utt("22.1", "And I don't know what you call it except a paddle with a ball suspended on a string.", [
            mk("it", "pro", "O", agr="n"), mk("a ball", "desc", "B", "ball", indef=True, clause=1),
            mk("a string", "desc", "B", "string", indef=True, clause=1)], tense="present"),
        utt("23.1", "So you could hear him playing with that.", [
            mk("him", "pro", "O", agr="m", disc={"toy-player"}), mk("that", "deic", "B", "toy")],
            cue=("so",), tense="other"),
        utt("24.1", "And then he rode off.", [
            mk("he", "pro", "S", agr="m", sel={"animate"}, disc={"rideable-agent"})], tense="simple-past"),
    ], [
        bnd("21.5", "subordinate", "human-judgement", "2"),
        bnd("24.1", "return-pop", "human-judgement", "3", target="1"),
    ], notes="The boy who fell off the bike is known from earlier in the narrative. 'himself' is a "
             "reflexive bound inside the clause and is not annotated. 'a clapper' and 'a paddle' are "
             "predicative.")


# ---------------------------------------------------------------- Fig 9 abstract structures

def fig9():
    a = discourse("fig9-embedded", [], [utt(x, x) for x in ("A1", "A2", "B1", "B2", "B3", "A3", "A4")], [
        bnd("B1", "interruption", "human-judgement", "B"),
        bnd("A3", "return-pop", "human-judgement", "A2", target="A"),
    ], initial="A", notes="A1 A2 [B1 B2 B3] A3 A4; segment B is embedded in A.")
    c = discourse("fig9-sisters", [], [utt(x, x) for x in ("C1", "D1", "D2", "D3", "E1")], [
        bnd("D1", "subordinate", "human-judgement", "D"),
        bnd("E1", "sister", "human-judgement", "E"),
    ], initial="C", notes="C1 [D1 D2 D3] [E1]; D and E are sisters under C.")
    return a, c


# ---------------------------------------------------------------- the 21 return pops

SEL = {"human"}


def _pop(id, competitor=None, iru=False, comp_tags=SEL, verb_sel=frozenset(), verb_disc=frozenset(),
         target_tags=SEL, note=""):
    """Schematic pop: a man is introduced, an unrelated segment intervenes, then a pronoun resumes him."""
    ents = [ent("t", "Martin", "m", target_tags), ent("office", "the office", "n"),
            ent("weather", "the weather", "n"), ent("day", "all day", "n")]
    u2 = [mk("He", "pro", "S", agr="m")]
    if competitor:
        ents.append(ent("c", competitor, "m", comp_tags))
        u2.append(mk(competitor, "name", "B", "c"))
    uts = [
        utt("1", "Martin arrived at the office.", [
            mk("Martin", "name", "S", "t"), mk("the office", "desc", "B", "office")],
            props=[("p1", "arrive", ["t"])], tense="simple-past"),
        utt("2", "He talked to " + (competitor or "nobody") + ".", u2,
            props=[("p2", "talk", ["t"])], tense="simple-past"),
        utt("3", "The weather was awful.", [mk("The weather", "desc", "S", "weather")],
            props=[("p3", "awful", ["weather"])], tense="simple-past"),
        utt("4", "It rained all day.", [mk("It", "pro", "S", agr="n"), mk("all day", "desc", "B", "day")],
            props=[("p4", "rained", ["day"])], tense="simple-past"),
        utt("5", ("Anyway, he talked to them" if iru else "Anyway, he left") + ".", [
            mk("he", "pro", "S", agr="m", sel=verb_sel, disc=verb_disc)], cue=("anyway",),
            props=[("p2", "talk", ["t"])] if iru else [("p5", "leave", ["t"])], tense="simple-past"),
    ]
    return discourse(id, ents, uts, [
        bnd("3", "interruption", "human-judgement", "2"),
        bnd("5", "return-pop", "cue-anyway", "3", target="1"),
    ], notes=note or "Schematic return pop standing in for a literature token.")


def pops21():
    out = [dialogue_f("pop-f"), dialogue_e("pop-e")]
    # no competitor; two more carry an IRU
    out += [_pop(f"pop-plain-{k}", iru=k < 2) for k in range(9)]
    # competitor ruled out by the verb's selectional restriction
    out += [_pop(f"pop-sel-{k}", competitor="Thunder", comp_tags={"animate"}, verb_sel={"human"},
                 iru=k == 0, note="The competitor is a horse; the verb selects a human agent.")
            for k in range(5)]
    # competitor ruled out only by a property established in the dialogue
    out += [_pop("pop-disc-0", competitor="Ray", verb_sel={"human"}, verb_disc={"has-car"},
                 target_tags={"human", "has-car"},
                 note="Only the target has a car; the return verb is 'drove off'.")]
    # residual competitors
    out += [_pop(f"pop-resid-{k}", competitor="Ray", verb_sel={"human"}, iru=k < 2,
                 note="The competitor is only ever mentioned in an oblique and is never the Cb.")
            for k in range(4)]
    return out


# ---------------------------------------------------------------- Fig 8 distribution

FIG8_NOW = {"CONTINUE": 2, "RETAIN": 20, "SMOOTH-SHIFT": 38, "ROUGH-SHIFT": 0, "NO-CB": 38}
FIG8_OTHER = {"CONTINUE": 43, "RETAIN": 9, "SMOOTH-SHIFT": 27, "ROUGH-SHIFT": 0, "NO-CB": 21}


def fig8():
    now = [t for t, n in FIG8_NOW.items() for _ in range(n)]
    other = [t for t, n in FIG8_OTHER.items() for _ in range(n)]
    uts = []
    k = 0
    # interleave so that every 'now' sentence follows at least one other sentence
    while now or other:
        if other:
            uts.append(utt(f"o{len(other)}", "Other sentence.", cue=(), gold=other.pop()))
        if now:
            uts.append(utt(f"n{len(now)}", "Now, a new step.", cue=("now",), gold=now.pop()))
        k += 1
    return discourse("fig8", [], uts, notes="Synthetic: the segment initial row is 98 tokens, the other "
                                            "row is a 100 token conversion of published percentages.")


def main():
    write("dialogue_d", dialogue_d())
    write("dialogue_b", dialogue_b())
    write("dialogue_c", dialogue_c())
    write("dialogue_e", dialogue_e())
    write("dialogue_f", dialogue_f())
    write("pear_fig11", pear_fig11())
    write("fig12", fig12())
    write("fig13", fig13())
    write("fig15", fig15())
    write("fig16", fig16())
    write("fig17", fig17())
    write("fig9", *fig9())
    write("pops21", *pops21())
    write("fig8", fig8())


if __name__ == "__main__":
    main()
