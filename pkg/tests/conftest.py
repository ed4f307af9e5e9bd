"""Shared fixtures: temp stores, the shipped data set, and an API harness."""

from pathlib import Path

import pytest

from admitbot import linkfinder, sentence_gate, service, spellcheck
from admitbot.store import JsonlStore

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"
SEED_FILE = DATA_DIR / "seed_info.jsonl"


@pytest.fixture
def store(tmp_path):
    return JsonlStore(tmp_path / "records")


@pytest.fixture(scope="session")
def shipped_dictionary():
    return spellcheck.load_dictionary(DATA_DIR / "dictionary.txt")


@pytest.fixture(scope="session")
def shipped_lexicon():
    return sentence_gate.load_lexicon(DATA_DIR / "lexicon.tsv")


@pytest.fixture(scope="session")
def shipped_index():
    corpus = linkfinder.load_corpus(DATA_DIR / "link_corpus.jsonl")
    return linkfinder.build_index(corpus)


@pytest.fixture
def engine(tmp_path, shipped_dictionary, shipped_lexicon, shipped_index):
    """Full pipeline over the shipped data files and a seeded temp store."""
    data_store = JsonlStore(tmp_path / "records")
    data_store.seed(SEED_FILE)
    return service.ChatEngine(
        store=data_store,
        dictionary=shipped_dictionary,
        lexicon=shipped_lexicon,
        link_index=shipped_index,
    )


class ApiHarness:
    """TestClient plus the credentials of a known admin account."""

    def __init__(self, client, engine, sessions, username, password):
        self.client = client
        self.engine = engine
        self.sessions = sessions
        self.username = username
        self.password = password

    def login(self) -> dict:
        response = self.client.post(
            "/api/login",
            json={"username": self.username, "password": self.password},
        )
        assert response.status_code == 200, response.text
        return {"Authorization": f"Bearer {response.json()['token']}"}


@pytest.fixture
def api(engine):
    from fastapi.testclient import TestClient

    username, password = "admin", "correct-horse-battery"
    service.create_user(engine.store, username, password)
    sessions = service.SessionManager(engine.store)
    app = service.create_app(engine, sessions)
    client = TestClient(app, raise_server_exceptions=False)
    return ApiHarness(client, engine, sessions, username, password)
