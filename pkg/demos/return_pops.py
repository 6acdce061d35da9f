"""
Return pops as cued retrieval
=============================

A pronoun that resumes an earlier segment competes with every compatible
entity in main memory. Selectional restrictions, then restrictions the
dialogue itself set up, thin the field; a repeated proposition settles
the rest.
"""

from centercache import load_fixture, pop_survey

survey = pop_survey(load_fixture("pops21").discourses)
for k, v in survey.as_dict().items():
    print(f"{k:<26} {v}")

print()
for r in survey.reports:
    if r.pronoun is None:
        continue
    sizes = "/".join(str(len(r.competing[m])) for m in ("agreement_only", "plus_selectional",
                                                          "plus_discourse_selectional"))
    print(f"{r.pronoun.id:<22} competitors {sizes:<7} IRU={'yes' if r.iru else 'no ':<3}"
          f" adequate={r.adequate_cue}")
