import pathlib

import pytest

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def corpus():
    path = REPO_ROOT / "corpus"
    assert path.is_dir(), "bundled corpus missing; run scripts/make_corpus.py"
    return path


@pytest.fixture(scope="session")
def golden_dir():
    return pathlib.Path(__file__).resolve().parent / "golden"
