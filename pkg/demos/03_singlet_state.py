"""
Six projectors suffice for a singlet
====================================

If the pair is known to be in the singlet state, the sums of some projector
pairs are fixed to exactly 1, and the first two columns of the square are
already contradictory.
"""
from ksverify import exhaustive_search, parity_argument, singlet_scenario, singlet_state
from ksverify.exact import apply
from ksverify.pauli import PauliString, sigma

psi = singlet_state()
for axis in "xyz":
    print(f"(s1{axis} + s2{axis}) psi =", apply(sigma(1, axis) + sigma(2, axis), psi))
print("(s1x s2z + s1z s2x) psi =", apply(PauliString("XZ").matrix() + PauliString("ZX").matrix(), psi))

scenario = singlet_scenario()
for c in scenario.constraints:
    print(f"{c.origin:18s} {' + '.join(c.members)} in {sorted(c.allowed_sums)}")

print("parity argument conclusive:", parity_argument(scenario).conclusive)
cert = exhaustive_search(scenario)
print(f"{cert.verdict}: {cert.satisfying_count} of {cert.assignments_checked}")
