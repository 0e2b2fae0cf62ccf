from pathlib import Path

import pytest

from newsframes.corpus_io import load_corpus, load_events, load_slants
from newsframes.frame_extract import load_resources
from newsframes.pipeline import annotate_corpus
from newsframes.validation import load_gold

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def mini_corpus():
    return load_corpus(FIXTURES / "mini_corpus")


@pytest.fixture(scope="session")
def mini_events():
    return load_events(FIXTURES / "events.jsonl")


@pytest.fixture(scope="session")
def mini_slants():
    return load_slants(FIXTURES / "slants.tsv")


@pytest.fixture(scope="session")
def mini_resources():
    return load_resources(FIXTURES / "lexicons")


@pytest.fixture(scope="session")
def mini_gold():
    return load_gold(FIXTURES / "gold.jsonl")


@pytest.fixture(scope="session")
def mini_annotations(mini_corpus, mini_events, mini_resources):
    return annotate_corpus(mini_corpus, mini_events, mini_resources)
