#!/usr/bin/env python3
"""The bluff profile, exact best responses, and equilibrium factors.

On the bluff-tightness benchmark (an additive agent vs an OXS agent), the
bluff profile leaves agent 2 with value 1 while her best deviation earns
almost 2 -- the 1/2 equilibrium factor is essentially tight.
"""

from rrfair import (
    best_response,
    bluff_order,
    bluff_profile,
    bluff_tightness_instance,
    pad_to_multiple,
    pne_factor,
    round_robin,
)

inst = bluff_tightness_instance()  # eps1, eps2, eps3 = 1/100, 2/100, 3/100
padded, extra = pad_to_multiple(inst)
print(f"instance: {inst.n} agents, {inst.m} goods (+{extra} dummy)")

# The bluff order is the sequence greedy-by-marginal picking would produce;
# the bluff profile has everyone report exactly that order.
order = bluff_order(padded)
print("bluff order:", list(order.ranking.order))

profile = bluff_profile(padded)
allocation, _ = round_robin(padded, profile)
for agent, bundle in enumerate(allocation.bundles):
    print(f"  agent {agent} gets {sorted(g for g in bundle if g < inst.m)} "
          f"worth {inst.valuations[agent].value(g for g in bundle if g < inst.m)}")

# Exact best response of agent 2 against the bluff report of agent 1:
response = best_response(padded, 1, profile.others(1))
print("\nagent 2 best response:")
print("  value:", response.value)
print("  bundle:", sorted(g for g in response.bundle if g < inst.m))
print("  ranking to report:", list(response.ranking.order))
print("  states explored:", response.explored_states)

report = pne_factor(padded, profile)
print("\nequilibrium factor of the bluff profile:", report.pne_factor)
for row in report.per_agent:
    print(f"  agent {row.agent}: current {row.current_value}, "
          f"best {row.best_response_value}, ratio {row.ratio}")
