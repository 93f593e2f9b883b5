"""Shared fixtures and hypothesis strategies."""

from __future__ import annotations

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from kvwitness.lattice import BlowUpRecord, blow_up, new_projective_plane, register_plane_curve
from kvwitness.qla import QMatrix, is_negative_definite
from kvwitness.lattice import intersect
from kvwitness.scenario import load_embedded_scenario

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def built():
    return load_embedded_scenario().build()


@st.composite
def random_surfaces(draw, max_depth: int = 5):
    """A blown-up plane: a few plane curves, then up to ``max_depth`` blow-ups.

    Each centre lies on a random subset of the tracked curves (multiplicity 0-2
    on plane curves, 0-1 on exceptional curves).  The lattice bookkeeping does
    not care whether such a configuration is realisable.
    """
    s = new_projective_plane()
    n_plane = draw(st.integers(1, 3))
    for i in range(n_plane):
        s = register_plane_curve(s, f"C{i}", draw(st.integers(1, 3)))
    depth = draw(st.integers(1, max_depth))
    for k in range(depth):
        center = {}
        for c in s.curves:
            top = 2 if c.name.startswith("C") else 1
            m = draw(st.integers(0, top))
            if m:
                center[c.name] = m
        s = blow_up(s, BlowUpRecord(f"e{k}", center))
    return s


@st.composite
def random_contractions(draw, max_depth: int = 5):
    """A surface together with a nonempty negative definite set of tracked curves."""
    s = draw(random_surfaces(max_depth))
    order = draw(st.permutations([c.name for c in s.curves]))
    # the last exceptional curve is a (-1)-curve, so the greedy pass never ends empty
    last = s.curves[-1].name
    chosen = [last]
    for n in order:
        if n == last:
            continue
        trial = chosen + [n]
        classes = [s.curve(x).cls for x in trial]
        g = QMatrix.from_rows([[intersect(s, a, b) for b in classes] for a in classes])
        if is_negative_definite(g) and draw(st.booleans()):
            chosen = trial
    return s, chosen


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
