"""
Transitions at segment openings
===============================

Tally transitions for utterances that open a segment with "now" against
all others. The ``fig8`` fixture carries gold transitions only, without
reference markers, so the table is rebuilt from those annotations.
"""

from centercache import load_fixture
from centercache.model import TRANSITIONS
from centercache.stats import corpus_distribution

d = load_fixture("fig8").discourses[0]
seg, other = corpus_distribution([d], gold=True)

print(f"{'':<16}" + "".join(f"{t.value:>14}" for t in TRANSITIONS) + f"{'total':>8}")
for row in (seg, other):
    print(f"{row.partition:<16}" + "".join(f"{n:>14}" for n in row.row()) + f"{row.total:>8}")

