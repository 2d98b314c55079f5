import sys

import numpy as np
import pytest

from magmakit.actions import Action
from magmakit.core import Magma, cyclic_group, direct_product, or_monoid

NONASSOC3 = [[0, 1, 2], [1, 2, 0], [2, 1, 2]]


@pytest.fixture
def z2() -> Magma:
    return cyclic_group(2)


@pytest.fixture
def orm() -> Magma:
    return or_monoid()


@pytest.fixture
def m3() -> Magma:
    return Magma(NONASSOC3)


@pytest.fixture
def twist(z2) -> Action:
    """Z2 acting on Z2 with 1 sending 1 to 0."""
    return Action(z2, z2, [[0, 1], [0, 0]])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def z2z2(z2) -> Magma:
    return direct_product(z2, z2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
