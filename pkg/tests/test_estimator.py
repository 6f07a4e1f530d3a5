"""sklearn API conformance for the estimator wrappers."""

import pytest
from sklearn.base import clone

from janus import NameTokenizer, OntologyBuilder
from janus.taxonomy import InvalidParams


def test_tokenizer_transform():
    tok = NameTokenizer()
    assert tok.fit_transform(["tender_address", "PostBox"]) == [
        ["tender", "address"],
        ["post", "box"],
    ]


def test_tokenizer_abbreviations():
    tok = NameTokenizer(abbreviations={"amt": ["amount"]})
    assert tok.transform(["amt_due"]) == [["amount", "due"]]


def test_builder_get_set_params_and_clone():
    builder = OntologyBuilder(merge_threshold=0.95)
    params = builder.get_params()
    assert params["merge_threshold"] == 0.95
    cloned = clone(builder)
    assert cloned.get_params() == params
    builder.set_params(align_threshold=0.6)
    assert builder.get_params()["align_threshold"] == 0.6


def test_builder_fit_transform(corpus_specs):
    builder = OntologyBuilder().fit(corpus_specs)
    doc = builder.transform()
    assert doc["nodes"]
    assert any(n["id"] == "class:tender_address" for n in doc["nodes"])
    assert b"owl:Class" in builder.export_turtle()


def test_builder_refit_params(corpus_specs):
    builder = OntologyBuilder().fit(corpus_specs)
    n_default = len(builder.network_.nodes)
    builder.set_params(align_threshold=0.5, merge_threshold=0.5).refit_params()
    assert len(builder.network_.nodes) <= n_default
    assert len(builder.kb_.history) == 2


def test_builder_rejects_bad_params(corpus_specs):
    with pytest.raises(InvalidParams):
        OntologyBuilder(align_threshold=0.9, merge_threshold=0.5).fit(corpus_specs)


def test_builder_rejects_bad_input():
    with pytest.raises(ValueError):
        OntologyBuilder().fit(["not-a-pair"])
