import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from latkit import codes


@pytest.fixture(scope="session")
def registry():
    return codes.load_builtin_registry()


@pytest.fixture(scope="session")
def exthamming8():
    code = codes.extended_hamming_code(3)
    return codes.BinaryCode(
        name=code.name, n=8, k=4, gen=code.gen, d_c=4, tau_c=14, family=code.family
    )


@pytest.fixture(scope="session")
def ebch106(registry):
    return codes.ebch_code(128, 106, registry)


@pytest.fixture(scope="session")
def ebch113(registry):
    return codes.ebch_code(128, 113, registry)


@pytest.fixture(scope="session")
def ebch120(registry):
    return codes.ebch_code(128, 120, registry)
