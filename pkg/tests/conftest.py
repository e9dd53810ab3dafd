import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from toeplitz_qf.core import ToeplitzElement  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def term_dicts(max_exp: int = 5, max_terms: int = 4):
    return st.dictionaries(
        st.tuples(st.integers(0, max_exp), st.integers(0, max_exp)), coeffs, max_size=max_terms
    )


def elements(max_exp: int = 5, max_terms: int = 4):
    return term_dicts(max_exp, max_terms).map(ToeplitzElement)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
