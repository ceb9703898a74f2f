from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mlab.structures import succ_algebra, succ_coalgebra

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def algebras(draw, max_size=3, min_size=1):
    k = draw(st.integers(min_size, max_size))
    names = [str(i) for i in range(k)]
    zero = draw(st.sampled_from(names))
    succ = {a: draw(st.sampled_from(names)) for a in names}
    return succ_algebra(names, zero, succ)


@st.composite
def coalgebras(draw, max_size=3, min_size=0):
    k = draw(st.integers(min_size, max_size))
    names = [str(i) for i in range(k)]
    step = {c: draw(st.sampled_from(names + [None])) for c in names}
    return succ_coalgebra(names, step)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
