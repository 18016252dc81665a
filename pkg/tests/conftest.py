import pytest

from app.db.database import get_db, init_db, make_engine
from app.models.graph import Graph
from tests.helpers import cycle


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def triangle():
    return cycle(3)


@pytest.fixture
def bowtie():
    # two triangles sharing vertex 2
    return Graph(5, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)))


@pytest.fixture
def db_session(tmp_path):
    engine = make_engine(f"sqlite:///{tmp_path / 'bench.db'}")
    init_db(engine)
    with get_db(engine) as session:
        yield session
