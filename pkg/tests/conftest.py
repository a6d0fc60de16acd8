import pytest

from azsperner import (
    build_poset,
    gen_affine_poset,
    gen_boolean,
    gen_chain_product,
    gen_fig1a,
    gen_fig1b,
    gen_star_power,
    gen_subspace_lattice,
)


@pytest.fixture(scope="session")
def b2():
    return gen_boolean(2)


@pytest.fixture(scope="session")
def b3():
    return gen_boolean(3)


@pytest.fixture(scope="session")
def b4():
    return gen_boolean(4)


@pytest.fixture(scope="session")
def fig1a():
    return gen_fig1a()


@pytest.fixture(scope="session")
def fig1b():
    return gen_fig1b()


@pytest.fixture(scope="session")
def l32():
    return gen_subspace_lattice(3, 2)


@pytest.fixture(scope="session")
def a22():
    return gen_affine_poset(2, 2)


@pytest.fixture(scope="session")
def c322():
    return gen_chain_product([3, 2, 2])


@pytest.fixture(scope="session")
def star22():
    return gen_star_power(2, 2)


@pytest.fixture(scope="session")
def non_normal_5():
    """Three rank-1 elements over two rank-0 elements; matching fails."""
    elements = [(0, 0), (1, 0), (2, 1), (3, 1), (4, 1)]
    covers = [(0, 2), (0, 3), (0, 4), (1, 4)]
    return build_poset(elements, covers, name="non-normal-5", labels=list("uvxyz"))
