import pytest

from skinrec.catalog import load_catalog
from skinrec.data import sample_catalog_path
from skinrec.mf import MFConfig, build_interactions, train
from skinrec.vectors import build_vocabulary, vectorize


@pytest.fixture(scope="session")
def sample_path():
    return sample_catalog_path()


@pytest.fixture(scope="session")
def catalog(sample_path):
    return load_catalog(sample_path)


@pytest.fixture(scope="session")
def vocab(catalog):
    return build_vocabulary(catalog.products)


@pytest.fixture(scope="session")
def matrix(catalog, vocab):
    return vectorize(catalog.products, vocab, catalog.fingerprint)


@pytest.fixture(scope="session")
def interactions(catalog):
    return build_interactions(catalog)


@pytest.fixture(scope="session")
def model(interactions, catalog):
    return train(interactions, MFConfig(seed=0), fingerprint=catalog.fingerprint)
