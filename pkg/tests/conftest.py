import pytest

from cdgakit.cohomology import CochainComplex
from cdgakit.dsl import preset
from cdgakit.suite import m_hat, m_source


@pytest.fixture(scope="session")
def src_m():
    return m_source()


@pytest.fixture(scope="session")
def mhat():
    return m_hat()


@pytest.fixture(scope="session")
def cx_n():
    return CochainComplex(preset("N").presentation)


@pytest.fixture(scope="session")
def src_n():
    return preset("N")


@pytest.fixture(scope="session")
def cx_m(src_m):
    return CochainComplex(src_m.presentation)


@pytest.fixture(scope="session")
def cx_t6():
    return CochainComplex(preset("T6").presentation)
