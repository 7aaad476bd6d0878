import pytest

from polaris import fixtures as fx


@pytest.fixture
def g_ver4():
    return fx.g_ver(4)


@pytest.fixture
def g_32():
    return fx.g_32()


@pytest.fixture
def g_fig2():
    return fx.g_fig2()


@pytest.fixture
def g_note():
    return fx.g_note()


@pytest.fixture
def g_join():
    return fx.g_join()
