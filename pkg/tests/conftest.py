import pytest

from starlift import load_lie_algebra

try:
    from importlib.resources import files
except ImportError:
    files = None


def data_path(name: str) -> str:
    return str(files("starlift").joinpath("data", name + ".json"))


@pytest.fixture(scope="session")
def abelian3():
    return load_lie_algebra(data_path("abelian3"))


@pytest.fixture(scope="session")
def nonabelian2():
    return load_lie_algebra(data_path("nonabelian2"))


@pytest.fixture(scope="session")
def sl2():
    return load_lie_algebra(data_path("sl2"))


@pytest.fixture(scope="session")
def sl2qt():
    return load_lie_algebra(data_path("sl2-qt"))
