import pytest

import jacarith as ja


@pytest.fixture(scope="session")
def f1009():
    return ja.make_prime_field(1009)


@pytest.fixture(scope="session")
def fixture_bundle():
    return ja.gen_paper_fixture()


@pytest.fixture(scope="session")
def bundle_g1():
    return ja.gen_hyperelliptic(1, 1009, rng=ja.RandomStream("conftest-g1"))


@pytest.fixture(scope="session")
def bundle_g2():
    return ja.gen_hyperelliptic(2, 1009, rng=ja.RandomStream("conftest-g2"))


@pytest.fixture(scope="session")
def model_g1(bundle_g1):
    return bundle_g1.large_model(ja.RandomStream("conftest-model-g1"))


@pytest.fixture(scope="session")
def model_g2(bundle_g2):
    return bundle_g2.large_model(ja.RandomStream("conftest-model-g2"))
