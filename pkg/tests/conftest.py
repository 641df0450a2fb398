import pytest

from ivmat import make_context


@pytest.fixture(scope="session")
def ctx2():
    return make_context("zp", 2)


@pytest.fixture(scope="session")
def ctx3():
    return make_context("zp", 3)


@pytest.fixture(scope="session")
def ctx5():
    return make_context("zp", 5)


@pytest.fixture(scope="session")
def ctx2t():
    # F_2[t] localized at t; same residue field as ctx2, different uniformizer
    return make_context("fqt", 2)


@pytest.fixture(scope="session")
def ctx4():
    # q = 4 via F_2[u]/(u^2+u+1)
    return make_context("fqt", 2, 2, (1, 1, 1))
