import random

import pytest

import plmorse as pm


@pytest.fixture(scope="session")
def torus7():
    return pm.torus7()


@pytest.fixture(scope="session")
def dd3():
    return pm.simplex_boundary(3)


@pytest.fixture(scope="session")
def dd4():
    return pm.simplex_boundary(4)


@pytest.fixture(scope="session")
def c58():
    return pm.cyclic_polytope_boundary(5, 8)


@pytest.fixture(scope="session")
def dunce():
    return pm.dunce_hat8()


@pytest.fixture(scope="session")
def rp2():
    return pm.rp2_6()


@pytest.fixture(scope="session")
def disc():
    return pm.SimplicialComplex.from_facets([["a", "b", "c"]])


@pytest.fixture(scope="session")
def cone6():
    cyc = pm.SimplicialComplex.from_facets(
        [[i, (i + 1) % 6] for i in range(6)])
    return cyc.cone()


def random_subcomplex(complex_, rng):
    """Random nonempty subcomplex generated by a facet subset."""
    fs = [f for f in complex_.facets if rng.random() < 0.6]
    if not fs:
        fs = [rng.choice(complex_.facets)]
    return pm.SimplicialComplex.from_facets(fs)


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260810)
