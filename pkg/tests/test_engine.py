import pytest

from centercache.engine import (EXHAUSTIVE, PREFERENCE, Anchor, Context, EngineConfig, composite_entity,
                                expand_pronoun, filter_constraint3, filter_rule1, index_markers,
                                process_discourse, prominent_entities, resolve_fixed, resolve_utterance,
                                states_by_utterance, tie_key)
from centercache.model import (ContractViolation, DiscourseEntity, Form, ReferenceMarker, Transition,
                               ValidationError)

from conftest import discourse
from helpers import AGR, disc, entities, name, pron, utt


def labels(d, results):
    return {d.utterance(r.utterance).name: r for r in results}


def test_dialogue_d_states_and_bindings(dialogue_d):
    rs = labels(dialogue_d, process_discourse(dialogue_d))
    assert [rs[k].state.transition for k in "abcd"] == [
        Transition.NO_CB, Transition.CONTINUE, Transition.RETAIN, Transition.SMOOTH_SHIFT]
    ud = dialogue_d.by_label("d")
    got = {m.surface.lower(): rs["d"].bindings[m.id] for m in ud.markers if m.form.is_pronominal}
    assert got == {"she": "lyn", "her": "susan"}


def test_exhaustive_trace_marks_every_anchor(dialogue_d):
    r = labels(dialogue_d, process_discourse(dialogue_d, EngineConfig(mode=EXHAUSTIVE, trace=True)))["d"]
    assert len(r.trace) == r.anchors_generated == 16
    assert sum(t.constraint3 and t.rule1 and t.contraindex for t in r.trace) >= 1
    reasons = {why for _, why in r.anchors_filtered}
    assert "constraint3" in reasons


def test_config_validation():
    with pytest.raises(ValidationError):
        EngineConfig(mode="greedy")
    with pytest.raises(ValidationError):
        EngineConfig(rule1="sometimes")
    with pytest.raises(ValidationError):
        EngineConfig(cache_size=0)


def test_index_series_and_pleonastic_skip():
    it = ReferenceMarker("u2:1", "it", Form.PRONOUN, AGR["n"], pleonastic=True, position=1)
    indef = ReferenceMarker("u1:1", "a car", Form.DESCRIPTION, AGR["n"], indefinite=True, position=1)
    d = disc([utt(1, name("u1", 0, "ann"), indef), utt(2, pron("u2", 0, "f"), it),
              utt(3, pron("u3", 0, "f"), pron("u3", 1, "n", "direct-object", contra=[0]))])
    ms = index_markers(d)
    assert [str(m.index) for m in ms[1]] == ["Ann", "X1"]
    assert [str(m.index) for m in ms[2]] == ["A1"]
    assert [str(m.index) for m in ms[3]] == ["A2", "A3"]
    assert ms[3][0].contraindices == {"u3:1"}  # symmetrized


def test_composite_and_fresh_entities():
    reg = entities(ann="f", bob="m")
    reg["ann"] = DiscourseEntity("ann", "Ann", AGR["f"], frozenset({"human"}))
    reg["bob"] = DiscourseEntity("bob", "Bob", AGR["m"], frozenset({"human", "tall"}))
    both = composite_entity(["ann", "bob"], reg)
    assert both.id == "ann+bob" and both.agreement.number == "pl" and both.selectional_tags == {"human"}
    m = ReferenceMarker("x", "the Bob", Form.DESCRIPTION, AGR["m"])
    assert resolve_fixed(m, reg, 3) == "bob"
    car = ReferenceMarker("y", "a car", Form.DESCRIPTION, AGR["n"], indefinite=True)
    assert resolve_fixed(car, reg, 3) == "y" and "y" in reg


def test_expand_pronoun_respects_features():
    reg = entities(ann="f", bob="m", cat="f")
    m = pron("u", 0, "f", contra=[1])
    assert expand_pronoun(m, ["bob", "ann", "cat"], {}, reg) == ("ann", "cat")
    assert expand_pronoun(m, ["bob", "ann", "cat"], {"u:1": "ann"}, reg) == ("cat",)
    with pytest.raises(ContractViolation):
        expand_pronoun(name("u", 0, "ann"), ["ann"], {}, reg)


def test_filters():
    a = Anchor("b", ("a", "b"), (("p", "b"),), Transition.RETAIN)
    assert not filter_constraint3(a, ["a", "b"])
    assert filter_constraint3(a, ["b", "a"])
    assert filter_rule1(a)
    assert not filter_rule1(Anchor("a", ("a", "b"), (("p", "b"),), Transition.CONTINUE))
    assert filter_rule1(Anchor("a", ("a",), (("p", None),), Transition.CONTINUE))


def test_tie_key_prefers_higher_cf_rank():
    x = Anchor("a", ("a", "b"), (), Transition.CONTINUE)
    y = Anchor("b", ("b", "a"), (), Transition.CONTINUE)
    assert tie_key(x, ["a", "b"]) < tie_key(y, ["a", "b"])


def rule1_conflict():
    # the only pronoun can just be bob, who is not the Cb Constraint 3 demands
    us = [utt(1, name("u1", 0, "ann"), name("u1", 1, "bob", "direct-object")),
          utt(2, name("u2", 0, "ann", "oblique"), pron("u2", 1, "m"))]
    return disc(us, ents=entities(ann="f", bob="m"))


def test_rule1_strict_relaxes_when_nothing_passes():
    r = process_discourse(rule1_conflict())[1]
    assert r.rule1_relaxed and r.state.cb == "ann"


def test_rule1_preference_mode_agrees_here():
    strict = process_discourse(rule1_conflict())[1]
    pref = process_discourse(rule1_conflict(), EngineConfig(rule1=PREFERENCE))[1]
    assert pref.accepted.same_choice(strict.accepted) and pref.rule1_relaxed


def test_unresolvable_pronoun_is_unbound():
    d = disc([utt(1, name("u1", 0, "ann")), utt(2, pron("u2", 0, "m"))], ents=entities(ann="f"))
    r = process_discourse(d)[1]
    assert r.bindings["u2:0"] is None and r.marker_status["u2:0"] == "unresolved"
    assert r.retrieval_events and r.retrieval_events[0].tier is None


def test_cache_resolution_beyond_previous_cf():
    us = [utt(1, name("u1", 0, "bob")), utt(2, name("u2", 0, "ann")), utt(3, pron("u3", 0, "m"))]
    r = process_discourse(disc(us, ents=entities(ann="f", bob="m")))[2]
    assert r.bindings["u3:0"] == "bob" and r.marker_status["u3:0"] == "cache"


def test_retrieval_after_displacement():
    us = [utt(1, name("u1", 0, "bob"))] + [utt(k, name(f"u{k}", 0, f"e{k}")) for k in range(2, 5)]
    us.append(utt(5, pron("u5", 0, "m")))
    ents = entities(bob="m", e2="f", e3="f", e4="f")
    r = process_discourse(disc(us, ents=ents), EngineConfig(cache_size=2))[4]
    assert r.marker_status["u5:0"] == "retrieval" and r.bindings["u5:0"] == "bob"
    assert r.retrieval_events[0].adequate


def test_prompts_inherit_state():
    d = disc([utt(1, name("u1", 0, "ann")), utt(2, prompt=True), utt(3, pron("u3", 0, "f"))],
             ents=entities(ann="f"))
    rs = process_discourse(d)
    assert [r.utterance for r in rs] == [1, 3]
    st = states_by_utterance(rs, d)
    assert st[2] == st[1] and rs[1].state.transition is Transition.CONTINUE
    with pytest.raises(ContractViolation):
        resolve_utterance(d.utterance(2), Context(d))


def test_prominence_is_ever_cb():
    rs = process_discourse(discourse("dialogue_d"))
    assert prominent_entities(rs) == {"susan", "lyn"}


def test_errors_carry_location():
    bad = ReferenceMarker("u1:0", "x", Form.PROPER_NAME, gram_function="vocative", gold_entity="a")
    d = disc([utt(1, bad)])
    with pytest.raises(ValidationError, match="utterance 1"):
        process_discourse(d)
