import pytest

import gsn_fileio


@pytest.fixture(scope="session")
def vec():
    return gsn_fileio.open_category("vec")


@pytest.fixture(scope="session")
def vec_z2():
    return gsn_fileio.open_category("vec_z2")


@pytest.fixture(scope="session")
def vec_z2_graded():
    return gsn_fileio.open_category("vec_z2_graded")


@pytest.fixture(scope="session")
def vec_z2_twisted():
    return gsn_fileio.open_category("vec_z2_twisted")


@pytest.fixture(scope="session")
def vec_s3():
    return gsn_fileio.open_category("vec_s3")


@pytest.fixture(scope="session")
def ising():
    return gsn_fileio.open_category("ising")


@pytest.fixture(scope="session")
def categories(vec, vec_z2, vec_z2_graded, vec_z2_twisted, vec_s3, ising):
    return {"vec": vec, "vec_z2": vec_z2, "vec_z2_graded": vec_z2_graded,
            "vec_z2_twisted": vec_z2_twisted, "vec_s3": vec_s3, "ising": ising}
