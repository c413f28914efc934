"""
Your own scenarios
==================

Scenario files declare Pauli observables and the commuting contexts to
constrain.  Here: Mermin's three-qubit star, ten projectors in dimension 8.
The same file can be checked from the shell with

    ksverify verify --file demos/scenarios/mermin_star.json
"""
from pathlib import Path

from ksverify.report import Options, build_report, render_text
from ksverify.scenario_io import build_scenario, load_scenario_file

here = Path(__file__).parent
for name in ("mermin_star.json", "trivial.json"):
    sf = load_scenario_file(here / "scenarios" / name)
    built = build_scenario(sf)
    print(render_text(build_report(sf, built, Options(criticality=True))))
