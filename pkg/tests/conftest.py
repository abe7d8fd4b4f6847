import pytest
from ksquant.focknum import FockConfig
from ksquant.kscolor import load_vector_set, find_bases


@pytest.fixture(scope="session")
def config():
    return FockConfig(64, 1.0, 1.0)


@pytest.fixture(scope="session")
def small_config():
    return FockConfig(16, 1.0, 1.0)


@pytest.fixture(scope="session")
def ks18():
    return load_vector_set("ks18-d4")


@pytest.fixture(scope="session")
def ks18_bases(ks18):
    return find_bases(ks18)
