import pytest

from janus import kb as kbmod


@pytest.fixture(scope="session")
def corpus_specs():
    return kbmod.mini_corpus_specs()


@pytest.fixture(scope="session")
def built_kb(corpus_specs):
    """One default-params build of the bundled corpus, shared read-only."""
    return kbmod.run_pipeline(corpus_specs)
