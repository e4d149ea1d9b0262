import re
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from crntoric.dsl import load_bundled_system
from crntoric.numeric import sample_steady_states
from crntoric.toric import steady_state_basis
from crntoric.translation import apply_scheme

NETWORKS = (1, 2, 3)
SEED = 7
TRIALS = 20

# Lines collected by the acceptance suite, echoed in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


class System:
    def __init__(self, which):
        self.which = which
        self.net, self.scheme = load_bundled_system(which)
        self.g = apply_scheme(self.net, self.scheme)
        self.basis = steady_state_basis(self.g)


@pytest.fixture(scope="session")
def systems():
    return {w: System(w) for w in NETWORKS}


@pytest.fixture(scope="session")
def samples(systems):
    """Seeded steady-state samples per network, computed once per session."""
    out, timing = {}, {}
    for w, s in systems.items():
        t = time.perf_counter()
        out[w] = sample_steady_states(s.net, TRIALS, SEED)
        timing[w] = time.perf_counter() - t
    out["timing"] = timing
    return out


_TERM = re.compile(r"([kx])(\d+)")


def to_sympy(text):
    """Parse ``"(k2 + k3)*x13 - k1*x1*x9"`` style text into a sympy expression."""
    import sympy

    names = set(_TERM.findall(text))
    symbols = {f"{a}{b}": sympy.Symbol(f"{a}{b}", positive=True) for a, b in names}
    return sympy.sympify(text.replace("^", "**"), locals=symbols)
