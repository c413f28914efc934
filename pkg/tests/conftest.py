from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from ksverify.exact import GaussianRational, Matrix

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussian_rationals = st.builds(GaussianRational, small_fractions, small_fractions)
pauli_words = st.text(alphabet="IXYZ", min_size=1, max_size=3)


def matrices(dim: int):
    return st.lists(
        st.lists(gaussian_rationals, min_size=dim, max_size=dim), min_size=dim, max_size=dim
    ).map(Matrix)


def to_numpy(m: Matrix) -> np.ndarray:
    return np.array([[float(e.re) + 1j * float(e.im) for e in row] for row in m.rows])


def frac(n, d=1):
    return Fraction(n, d)


import pytest

_criteria: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    passed = call.excinfo is None
    prev = _criteria.get(number, (title, True))[1]
    _criteria[number] = (title, prev and passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
