import pytest

from knotcob import gauss
from knotcob.graded import GradedMatrix

TWO_CROSSING = "O1+ O2+ U1+ U2+"
TREFOIL = "O1+ U2+ O3+ U1+ O2+ U3+"
FIG8 = "O1+ U2+ O3- U4- O2+ U1+ O4- U3-"
CURL = "O1+ U1+"

# reference 3x3 fixture: rows/columns (s, x, y), both crossings positive
MATRIX2 = GradedMatrix(
    ("s", "x", "y"),
    (1, 1),
    ((0, -1, 1), (1, 0, 1), (-1, -1, 0)),
)


@pytest.fixture
def two_crossing():
    return gauss.parse(TWO_CROSSING)


@pytest.fixture
def trefoil():
    return gauss.parse(TREFOIL)


@pytest.fixture
def fig8():
    return gauss.parse(FIG8)


@pytest.fixture
def matrix2():
    return MATRIX2
