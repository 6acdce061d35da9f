import pytest

from centercache.model import ContractViolation, DiscourseEntity, Relation, SegmentBoundary as B
from centercache.retrieval import MODES, PopReport, classify_return_pop, competing_antecedents, detect_iru, pop_survey

from conftest import discourse, fixture_corpus
from helpers import AGR, disc, name, pron, utt


def reg():
    return [DiscourseEntity("ann", "Ann", AGR["f"], frozenset({"human", "driver"})),
            DiscourseEntity("bea", "Bea", AGR["f"], frozenset({"human"})),
            DiscourseEntity("car", "car", AGR["n"])]


def test_competing_narrow_by_mode():
    m = pron("u", 0, "f", tags=["human"])
    m = m.__class__(**{**m.__dict__, "discourse_tags": frozenset({"driver"})})
    got = [competing_antecedents(m, reg(), mode) for mode in MODES]
    assert got == [{"ann", "bea"}, {"ann", "bea"}, {"ann"}]


def test_competing_errors():
    with pytest.raises(ValueError):
        competing_antecedents(pron("u", 0, "f"), reg(), "vibes")
    with pytest.raises(ContractViolation):
        competing_antecedents(name("u", 0, "ann"), reg())


def test_detect_iru_matches_proposition_id():
    u1 = utt(1, props=[("p1", ("ann",))])
    u2 = utt(2, props=[("p2", ("ann",))])
    u3 = utt(3, props=[("p1", ("ann",))])
    assert detect_iru(u3, [u1, u2]) is u1
    assert detect_iru(u2, [u1]) is None
    assert detect_iru(utt(4), [u1]) is None


def test_pop_requires_pronoun_or_iru():
    d = disc([utt(1, name("u1", 0, "ann")), utt(2, name("u2", 0, "bob")), utt(3, name("u3", 0, "ann"))],
             [B(2, Relation.SUBORDINATE, segment="2"), B(3, Relation.RETURN_POP, return_target="1")],
             {e.id: e for e in reg()})
    with pytest.raises(ContractViolation):
        classify_return_pop(d.boundaries[1], d)
    with pytest.raises(ContractViolation):
        classify_return_pop(d.boundaries[0], d)


def test_report_checks_monotone_narrowing():
    m = pron("u", 0, "f")
    with pytest.raises(ContractViolation):
        PopReport(B(2, Relation.RETURN_POP, return_target="1"), m,
                  {"agreement_only": frozenset({"a"}), "plus_selectional": frozenset({"a", "b"}),
                   "plus_discourse_selectional": frozenset()}, None, True)


def test_competing_pops_with_iru_are_adequate():
    reports = pop_survey(fixture_corpus("pops21").discourses).reports
    with_iru = [r for r in reports if r.has_competitor("plus_discourse_selectional") and r.iru is not None]
    assert with_iru and all(r.adequate_cue for r in with_iru)
    bare = [r for r in reports if r.has_competitor("plus_discourse_selectional") and r.iru is None]
    assert bare and not any(r.adequate_cue for r in bare)


def test_survey_tallies():
    s = pop_survey(fixture_corpus("pops21").discourses)
    assert s.narrowing == (11, 6, 4)
    assert s.resolved_by_selectional + s.resolved_by_discourse + s.residual_without_iru <= s.competing[0]
    assert s.adequate <= s.adequate_with_prominence <= s.total
    assert set(s.as_dict()) >= {"pops", "competing", "iru", "narrowing"}
