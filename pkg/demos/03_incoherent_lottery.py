"""Pricing uncertainty at every branch breaks reduction invariance.

Options A and B have identical outcome distributions, so any rule that
depends only on outcomes values them equally.  Shaving 10% off every
uncertain chance node makes the two-stage option pay for its uncertainty
twice.
"""

from donoharm import builtin, coherence_check, nm_value, penalized_value, reduce_compound

pair = builtin("nm_incoherence").payload
a, b, penalty = pair.left, pair.right, pair.penalty

print(f"classical values:  A = {nm_value(a)},  B = {nm_value(b)}")
print(f"flattened B: {reduce_compound(b)}")
print(f"penalized values:  A = {penalized_value(a, penalty)},  B = {penalized_value(b, penalty)}")

check = coherence_check(a, b, penalty)
print(f"\nsame outcome distribution: {check.same_distribution}")
print(f"axiom violation flagged:   {check.violation}")
