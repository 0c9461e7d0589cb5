import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ellgenus.qcore import QSeries  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def series(draw, max_len=10, denom=2, unit=False, integral=False):
    n = draw(st.integers(1, max_len))
    coeff = st.integers(-30, 30) if integral else small_fractions
    terms = dict(enumerate(draw(st.lists(coeff, min_size=n, max_size=n))))
    if unit:
        terms[0] = draw(st.sampled_from([1, -1] if integral else [1, -1, 2, Fraction(-3, 2), 5]))
    return QSeries(terms, n, denom)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
