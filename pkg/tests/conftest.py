import pytest
from hypothesis import strategies as st

from doubleneg.syntax import BOTTOM, And, Atom, Imp, Neg, Or

ACCEPTANCE_LINES = []


def formulas(names=("A", "B", "C"), max_depth=5, bottom=True):
    """Hypothesis strategy: formulas of depth at most ``max_depth``."""
    leaves = st.sampled_from([Atom(n) for n in names] + ([BOTTOM] if bottom else []))

    def extend(children):
        return st.one_of(
            st.builds(Neg, children),
            st.builds(And, children, children),
            st.builds(Or, children, children),
            st.builds(Imp, children, children),
        )

    # each recursion level adds one to the depth
    strategy = leaves
    for _ in range(max_depth - 1):
        strategy = st.one_of(leaves, extend(strategy))
    return strategy


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
