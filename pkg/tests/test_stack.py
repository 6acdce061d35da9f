import pytest

from centercache.model import Relation, SegmentBoundary as B
from centercache.stack import (ROOT, ConfigurationType, FocusStack, NotClassifiable, StackError,
                               classify_configuration, configuration_cell, is_hierarchically_recent, replay)

from conftest import discourse
from helpers import disc, name, utt


def five():
    # 1-2 in segment 1, 3 pushes S3, 4 pops back to 1, 5 is a sister of 1
    us = [utt(1, name("u1", 0, "a")), utt(2, name("u2", 0, "a")), utt(3, name("u3", 0, "b")),
          utt(4, name("u4", 0, "a")), utt(5, name("u5", 0, "c"))]
    bs = [B(3, Relation.SUBORDINATE), B(4, Relation.RETURN_POP, return_target="1"), B(5, Relation.SISTER)]
    return disc(us, bs)


def test_push_pop_and_errors():
    st = FocusStack("1")
    st.apply_boundary(B(2, Relation.SUBORDINATE, segment="x"))
    assert st.segment_ids() == [ROOT, "1", "x"]
    st.apply_boundary(B(3, Relation.SISTER, segment="y"))
    assert st.segment_ids() == [ROOT, "1", "y"]
    with pytest.raises(StackError):
        st.apply_boundary(B(4, Relation.RETURN_POP, return_target="x"))
    st.apply_boundary(B(4, Relation.RETURN_POP, return_target="1"))
    assert st.top.segment == "1" and [s.segment for s, _ in st.popped_log] == ["x", "y"]
    st.pop(5)
    with pytest.raises(StackError):
        st.pop(6)


def test_replay_accessibility():
    h = replay(five())
    assert h.step(3).accessible == {"a"}
    assert h.step(4).accessible == {"a"}  # b left with S3
    assert h.step(4).popped == ("S3",)
    assert h.step(5).stack == (ROOT, "S5")


def test_hierarchical_recency():
    h = replay(five())
    assert is_hierarchically_recent(2, 4, h)
    assert not is_hierarchically_recent(1, 4, h)
    assert not is_hierarchically_recent(3, 4, h)


def test_grid_cells():
    assert configuration_cell("sister", "pronoun") is ConfigurationType.TYPE1
    assert configuration_cell("subordinate", "full-np") is ConfigurationType.TYPE4
    assert configuration_cell("pop-linear", "full-np") is ConfigurationType.TYPE8


def test_classify_configuration():
    d = five()
    h = replay(d)
    assert classify_configuration(2, 4, d, h, cb_form="pronoun").value is ConfigurationType.TYPE5
    assert classify_configuration(3, 4, d, h, cb_form="full-np").value is ConfigurationType.TYPE8
    assert classify_configuration(1, 2, d, h, cb_form="pronoun").value is ConfigurationType.WITHIN_SEGMENT
    with pytest.raises(NotClassifiable):
        classify_configuration(3, 4, d, h, prev_cb="b")  # b not realized in 4
    with pytest.raises(NotClassifiable):
        classify_configuration(3, 4, d, h)


def test_sister_corpus_normalizes_pushes():
    d = disc([utt(1, name("u1", 0, "a")), utt(2, name("u2", 0, "b"))], [B(2, Relation.SUBORDINATE)],
             sister_segments=True)
    assert replay(d).step(2).accessible == frozenset()


def test_fig9_shapes():
    emb = discourse("fig9", "fig9-embedded")
    h = replay(emb)
    depths = [len(s.stack) for s in h.steps]
    assert max(depths) > min(depths)
    sis = replay(discourse("fig9", "fig9-sisters"))
    assert sis.step(4).stack == (ROOT, "C", "D")
    assert sis.step(5).stack == (ROOT, "C", "E") and sis.step(5).popped == ("D",)
