import pytest

from emotif import load_default_lexicon

DATA_DIR_NAME = "data"


@pytest.fixture(scope="session")
def lexicon():
    return load_default_lexicon()


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    from pathlib import Path
    return Path(__file__).parent / DATA_DIR_NAME
