from pathlib import Path

import pytest

import xorcodes as xc

TESTDATA = Path(__file__).resolve().parent.parent / "testdata"

# 5x5 square whose top rows feed the balanced construction checks
EXAMPLE_SQUARE = (
    (1, 4, 3, 5, 2),
    (3, 1, 5, 2, 4),
    (4, 2, 1, 3, 5),
    (5, 3, 2, 4, 1),
    (2, 5, 4, 1, 3),
)


@pytest.fixture(scope="session")
def g135() -> xc.BinaryMatrix:
    return xc.parse_matrix((TESTDATA / "g_13_5.txt").read_text())


@pytest.fixture(scope="session")
def m55() -> xc.BinaryMatrix:
    return xc.parse_matrix((TESTDATA / "m_5_5.txt").read_text())


@pytest.fixture(scope="session")
def vd135(g135) -> xc.DecodingVector:
    return xc.exact_vd(g135)
