"""
Sign assignments and minimality
===============================

The multiplicative form: no choice of +1/-1 for the nine cells reproduces
all six line products.  Then drop each constraint in turn to see that every
one of them is needed.
"""
from ksverify import criticality_scan, mermin_peres_scenario, mermin_square, multiplicative_search, singlet_scenario

cert = multiplicative_search(mermin_square())
print(f"all six lines: {cert.satisfying_count} of {cert.assignments_checked} sign assignments")

cert = multiplicative_search(mermin_square(), lines=[0])
print(f"row 1 only:    {cert.satisfying_count} of {cert.assignments_checked}")

for scenario in (mermin_peres_scenario(), singlet_scenario()):
    print(scenario.name)
    for index, cert in criticality_scan(scenario):
        name = scenario.constraints[index].name
        print(f"  without {name:22s} {cert.verdict} ({cert.satisfying_count} solutions)")
