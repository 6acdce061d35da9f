"""
Where the focus stack and the cache disagree
============================================

After a return pop the stack only offers entities from spaces still on the
stack. The cache offers whatever was used recently. ``compare_models``
puts the two side by side for every pronoun that opens a segment.
"""

from centercache import compare_models, configurations, load_fixture, process_discourse

for name in ("fig16", "dialogue_b", "dialogue_c", "dialogue_f"):
    d = load_fixture(name).discourses[0]
    for v in compare_models(d).verdicts:
        verdict = "DIVERGE" if v.diverges else "agree"
        print(f"{name:<11} {v.label:>4} {v.surface!r:<6} -> {v.entity!s:<9} "
              f"stack reachable={v.stack_accessible!s:<5} cache={v.cache_status:<10} {verdict}")

###############################################################################
# Each pair of utterances spanning a boundary falls in one cell of a grid:
# boundary kind against whether the old Cb comes back as a pronoun.

for name in ("pear_fig11", "fig12", "fig13", "fig15", "fig16"):
    d = load_fixture(name).discourses[0]
    for i, j, c in configurations(d, process_discourse(d)):
        print(f"{name:<11} ({d.utterance(i).name}, {d.utterance(j).name})  {c.value.value:<15}"
              f" {c.boundary_kind} / {c.cb_form}")
