import pytest

from lcongr import dataset


@pytest.fixture(scope="session")
def curves():
    return dataset.bundled_dataset()


@pytest.fixture(scope="session")
def e11(curves):
    return curves["11a1"]
