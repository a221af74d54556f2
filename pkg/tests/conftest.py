import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from uhalat import make_algebra
from uhalat.boolean import BoolHom, Element, Partition
from uhalat.specker import from_values

sys.path.insert(0, str(Path(__file__).parent))

GRID = tuple(Fraction(x) for x in ("-2", "-1", "0", "1/2", "1", "2"))


def rationals(max_num=24, max_den=12):
    return st.builds(
        Fraction,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


@st.composite
def algebras(draw, min_atoms=0, max_atoms=5):
    return make_algebra(draw(st.integers(min_atoms, max_atoms)))


@st.composite
def elements(draw, algebra):
    return Element(algebra, draw(st.integers(0, algebra.full_mask)))


@st.composite
def partitions(draw, algebra):
    labels = draw(st.lists(st.integers(0, 3), min_size=algebra.atom_count, max_size=algebra.atom_count))
    blocks = {}
    for atom, label in enumerate(labels):
        blocks.setdefault(label, []).append(atom)
    return Partition.from_lists(algebra, blocks.values())


@st.composite
def speckers(draw, algebra, values=None):
    strat = st.sampled_from(values) if values is not None else rationals()
    vals = draw(st.lists(strat, min_size=algebra.atom_count, max_size=algebra.atom_count))
    return from_values(algebra, vals)


@st.composite
def algebra_and_speckers(draw, count=1, min_atoms=0, max_atoms=5, values=None):
    algebra = draw(algebras(min_atoms, max_atoms))
    return (algebra, *(draw(speckers(algebra, values)) for _ in range(count)))


@st.composite
def homs(draw, min_atoms=1, max_atoms=4, source=None, target=None):
    if source is None:
        source = draw(algebras(min_atoms, max_atoms))
    if target is None:
        target = draw(algebras(min_atoms, max_atoms))
    if source.atom_count == 0 and target.atom_count > 0:
        source = make_algebra(1)
    pm = draw(st.lists(st.integers(0, max(source.atom_count - 1, 0)), min_size=target.atom_count, max_size=target.atom_count))
    return BoolHom(source, target, tuple(pm))


@pytest.fixture
def rng():
    return random.Random(0)


# One line per acceptance criterion at the end of the run.

_acceptance = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _acceptance.append((props["criterion"], report.passed, props.get("detail", ""), report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail, seconds in sorted(_acceptance):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {detail} ({seconds:.2f}s)")
