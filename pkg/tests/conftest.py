import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from addlaws.characters import enumerate_characters
from addlaws.examples import bundled_finite, example1, example2, m3, np4


@pytest.fixture(scope="session")
def bundle():
    return bundled_finite()


@pytest.fixture(scope="session")
def carriers(bundle):
    out = {S.name: S for S in bundle}
    out["M3"] = m3()
    out["NP4"] = np4()
    return out


@pytest.fixture(scope="session")
def chars(carriers):
    return {name: enumerate_characters(S) for name, S in carriers.items()}


@pytest.fixture(scope="session")
def ex1():
    return example1()


@pytest.fixture(scope="session")
def ex2():
    return example2()
