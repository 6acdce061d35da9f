import pytest

from centercache.model import (INITIAL_STATE, Agreement, CenteringState, ContractViolation, Discourse,
                               Form, ReferenceMarker, RankingConfig, SegmentBoundary, Transition, Relation,
                               Utterance, ValidationError, classify_transition, project_cf_complex, rank_cf,
                               transition_of)


def mk(i, f="subject", e=None, form=Form.PROPER_NAME, clause=0, pos=0):
    return ReferenceMarker(f"m{i}", "x", form, gram_function=f, gold_entity=e, clause=clause, position=pos)


def test_agreement_unknown_gender_unifies():
    assert Agreement("unknown").compatible(Agreement("f"))
    assert not Agreement("m").compatible(Agreement("f"))
    assert not Agreement("f", "sg").compatible(Agreement("f", "pl"))


def test_agreement_rejects_bad_values():
    with pytest.raises(ValidationError):
        Agreement("x")
    with pytest.raises(ValidationError):
        Agreement(person=4)


@pytest.mark.parametrize("prev_cb, cb, cp, want", [
    ("a", "a", "a", Transition.CONTINUE),
    ("a", "a", "b", Transition.RETAIN),
    ("a", "b", "b", Transition.SMOOTH_SHIFT),
    ("a", "b", "c", Transition.ROUGH_SHIFT),
    (None, "b", "b", Transition.CONTINUE),
    (None, "b", "c", Transition.RETAIN),
    ("a", None, "c", Transition.NO_CB),
])
def test_transition_table(prev_cb, cb, cp, want):
    assert transition_of(prev_cb, cb, cp) is want


def test_transition_rank_order():
    ranks = [t.rank for t in (Transition.CONTINUE, Transition.RETAIN, Transition.SMOOTH_SHIFT,
                              Transition.ROUGH_SHIFT, Transition.NO_CB)]
    assert ranks == sorted(ranks)


def test_classify_transition_checks_cf():
    prev = CenteringState(1, "a", ("a",), Transition.CONTINUE)
    assert classify_transition(prev, "a", "a", ("a", "b")) is Transition.CONTINUE
    with pytest.raises(ContractViolation):
        classify_transition(prev, "z", "a", ("a",))
    with pytest.raises(ContractViolation):
        classify_transition(prev, "a", "b", ("a", "b"))


def test_rank_cf_function_then_position_then_clause():
    ms = [mk(0, "direct-object", "obj", pos=0), mk(1, "subject", "subj", pos=1),
          mk(2, "subject", "sub-clause", clause=1, pos=2), mk(3, "oblique", "subj", pos=3)]
    assert rank_cf(ms) == ("subj", "obj", "sub-clause")


def test_rank_cf_uses_bindings_and_skips_unbound():
    ms = [mk(0, "subject", form=Form.PRONOUN), mk(1, "direct-object", "b")]
    assert rank_cf(ms, {"m0": None, "m1": "b"}) == ("b",)
    assert rank_cf(ms, {"m0": "a", "m1": "b"}) == ("a", "b")


def test_custom_ranking_and_unknown_function():
    ms = [mk(0, "subject", "s"), mk(1, "direct-object", "o", pos=1)]
    order = RankingConfig(("direct-object", "subject", "indirect-object", "oblique", "other"))
    assert rank_cf(ms, ranking=order) == ("o", "s")
    with pytest.raises(ValidationError):
        rank_cf([mk(2, "vocative", "v")])


def test_state_requires_cb_in_cf():
    with pytest.raises(ContractViolation):
        CenteringState(1, "a", ("b",), Transition.RETAIN)
    assert INITIAL_STATE.cp is None


def test_discourse_contiguity_and_boundaries():
    u1, u2 = Utterance(1), Utterance(2)
    with pytest.raises(ValidationError):
        Discourse("d", (u1, Utterance(3)))
    with pytest.raises(ValidationError):
        Discourse("d", (u1, u2), (SegmentBoundary(5),))
    d = Discourse("d", (u1, u2), (SegmentBoundary(2, Relation.SISTER),))
    assert d.without_boundaries().boundaries == ()


def test_utterance_contracts():
    with pytest.raises(ValidationError):
        Utterance(2, is_prompt=True, markers=(mk(0),))
    with pytest.raises(ValidationError):
        Utterance(2, prev_override=2)
    with pytest.raises(ValidationError):
        SegmentBoundary(2, Relation.SISTER, return_target="1")
    assert Utterance(3, cue_words=("Now", "so")).first_cue == "now"


def test_project_cf_complex_appends_new_entities():
    main = CenteringState(1, None, ("a", "b"), Transition.NO_CB)
    sub = CenteringState(1, None, ("b", "c"), Transition.NO_CB)
    assert project_cf_complex(main, [sub]) == ("a", "b", "c")
