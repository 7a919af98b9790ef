import numpy as np
import pytest

from lsaca.corpus import make_synthetic_corpus, toy_matrix


@pytest.fixture(scope="session")
def toy():
    return toy_matrix()


@pytest.fixture(scope="session")
def F(toy):
    return toy.toarray().astype(float)


@pytest.fixture(scope="session")
def small_corpus():
    return make_synthetic_corpus(n_docs=60, n_categories=3, n_terms=150, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
