"""
Utterance units and segment boundaries
======================================

Split annotated sentences into centering units, then find segment
boundaries from annotations and cue words.
"""

from centercache.model import Form, ReferenceMarker
from centercache.segmenter import Clause, SentenceAnnotation, split_utterance_units


def np_(i, ent, fn="subject"):
    return ReferenceMarker(f"m{i}", ent, Form.PROPER_NAME, gram_function=fn, gold_entity=ent)


s = SentenceAnnotation((
    Clause(True, "main", (np_(0, "ann"), np_(1, "car", "direct-object"))),
    Clause(False, "subordinate", (np_(2, "bob"),)),
    Clause(True, "coordinate", (np_(3, "bob"),)),
), label="12")
for u in split_utterance_units([s]).utterances:
    print(u.label, [(m.gold_entity, m.clause) for m in u.markers])

###############################################################################
# A return pop with no annotated target is linked to an open segment by a
# repeated proposition or by a change of tense.

from centercache import detect_boundaries, load_fixture

for name in ("fig16", "fig17"):
    d = load_fixture(name).discourses[0]
    for b in detect_boundaries(d):
        print(f"{name}: before {d.utterance(b.before_utterance).name:<4} {b.relation.value:<12}"
              f" evidence={b.evidence.value:<16} target={b.return_target} ({b.link_evidence})")
