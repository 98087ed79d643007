"""Replaying the counting argument that no 3-colouring of K_{17,17} avoids
a red K_{2,2}, a blue K_{2,2} and a green K_{3,3}.

Every inequality is rebuilt from the z-table and re-evaluated, so changing
a single table entry changes (or breaks) the verdict.

    $ python demos/proof_replay.py
"""

from biramsey.replay import replay_b223, replay_upper18
from biramsey.zarankiewicz import ZRecord, shipped_table

# The coarse capacity argument closes at b=18 but not at b=17.
for b in (18, 17):
    step = replay_upper18(b=b)[0]
    print(f"b={b}: {step.inequality()}  [{step.status}]")

# The fine pipeline at b=17.
verdict = replay_b223(convention="nonstrict")
print("\nverdict:", verdict.conclusion)
for key in ("green_interval", "red_blue_exact", "delta", "degree_survivors", "cap", "n_interval"):
    print(f"  {key}: {verdict.facts[key]}")
print("flagged:", [s.inequality() for s in verdict.flagged_steps()])

# Read strictly, the maximum-degree step does not close at 10 and the
# argument leaves several degree multisets open.
strict = replay_b223(convention="strict")
print("\nstrict convention:", strict.conclusion, "-", strict.reason)

# A weaker table entry for the green class reopens the chain.
table = shipped_table()
table.put(ZRecord(17, 17, 3, 0, 160, "paper"))
loose = replay_b223(table, "nonstrict")
print("with z(17,17,3) <= 160:", loose.conclusion, "-", loose.reason)

print("\nfirst lines of the full report:")
print("\n".join(verdict.report(max_cases=3).splitlines()[:25]))
