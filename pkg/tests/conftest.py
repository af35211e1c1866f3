from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from takagi_lab.arith import BinaryExpansion

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

bits = st.integers(0, 1)
words = st.lists(bits, max_size=14).map(tuple)
periods = st.lists(bits, min_size=1, max_size=6).map(tuple)


@st.composite
def expansions(draw, max_prefix: int = 14):
    prefix = tuple(draw(st.lists(bits, max_size=max_prefix)))
    period = draw(st.one_of(st.just((0,)), st.just((1,)), periods))
    return BinaryExpansion(prefix, period)


@st.composite
def omega_members(draw, max_prefix: int = 12):
    """Walk with D >= 0, then a tail whose walk never dips below 0."""
    d, digits = 0, []
    for b in draw(st.lists(bits, max_size=max_prefix)):
        if d == 0:
            b = 0
        digits.append(b)
        d += 1 - 2 * b
    tail = draw(st.sampled_from([(0,), (0, 1), (0, 0, 1), (0, 0, 1, 1), (0, 0, 0, 1, 1, 1)]))
    return BinaryExpansion(tuple(digits), tail)


@st.composite
def dyadics(draw, max_depth: int = 24):
    n = draw(st.integers(1, max_depth))
    return draw(st.integers(0, (1 << n) - 1)), n


# acceptance summary lines, filled in by test_acceptance
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
