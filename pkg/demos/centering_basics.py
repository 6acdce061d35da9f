"""
Centering on a four-utterance monologue
=======================================

Resolve the pronouns of ``dialogue_d`` and compare how much work the
interleaved engine does against the exhaustive enumerator.
"""

from centercache import EngineConfig, load_fixture, process_discourse

d = load_fixture("dialogue_d").discourses[0]

for u, r in zip(d.utterances, process_discourse(d)):
    print(f"{u.name}  {u.text:<40} Cb={r.state.cb!s:<6} Cf={list(r.state.cf)}  {r.state.transition.value}")

# the last utterance has two pronouns, each with two candidates
fast = process_discourse(d)[-1]
slow = process_discourse(d, EngineConfig(mode="exhaustive"))[-1]
print("\nanchors built:", fast.anchors_generated, "interleaved vs", slow.anchors_generated, "exhaustive")
print("same answer:", fast.accepted.same_choice(slow.accepted))

# trace mode keeps every anchor with its filter verdicts
traced = process_discourse(d, EngineConfig(trace=True))[-1]
for t in traced.trace:
    a = t.anchor
    print(f"  Cb={a.cb!s:<6} {a.transition.value:<13} constraint3={t.constraint3} rule1={t.rule1}")
