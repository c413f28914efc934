"""
From products to parities
=========================

Each observable becomes a projector (I - O)/2.  A commuting line of three
projectors sums to a matrix whose eigenvalues are all even (or all odd), so
the number of "yes" answers on that line must be even (or odd).
"""
from ksverify import exhaustive_search, mermin_peres_scenario, parity_argument

scenario = mermin_peres_scenario()
for c in scenario.constraints:
    lhs = " + ".join(f"v({m})" for m in c.members)
    rhs = " or ".join(str(k) for k in sorted(c.allowed_sums))
    print(f"{c.name:9s} {lhs} = {rhs}     spectrum {c.spectrum}")

# every value appears in exactly two lines, so the left-hand sides add to an
# even number, while exactly one right-hand side is odd
proof = parity_argument(scenario)
print("occurrences:", proof.occurrence_counts)
print("odd constraints:", proof.odd_constraints, "-> conclusive:", proof.conclusive)

# the same conclusion by brute force over all 2^9 answer sheets
cert = exhaustive_search(scenario)
print(f"{cert.verdict}: {cert.satisfying_count} of {cert.assignments_checked} assignments work")
