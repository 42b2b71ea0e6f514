import pytest
from hypothesis import settings

# exact LPs vary a lot in cost; wall-clock deadlines only add flakiness
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

from polystab import polytope
from polystab.grassmann import Subspace

# lines of the simplex example: V stabs through 134 and 234, W misses
V_LINE = ((1, 0, 1, 1), (0, 1, 2, 1))
W_LINE = ((1, 0, 1, -1), (0, 1, -2, 1))
# octahedron subspace through the relint points of two opposite triangles
OCT_V = ((2, 2, 2, 0), (0, 2, 2, 2))


@pytest.fixture(scope="session")
def delta():
    return polytope.simplex(4)


@pytest.fixture(scope="session")
def octahedron():
    return polytope.cross_polytope(4)


@pytest.fixture(scope="session")
def cube():
    return polytope.hypercube(3)


@pytest.fixture
def v_line():
    return Subspace.from_rows(V_LINE)


@pytest.fixture
def w_line():
    return Subspace.from_rows(W_LINE)


@pytest.fixture
def oct_v():
    return Subspace.from_rows(OCT_V)
