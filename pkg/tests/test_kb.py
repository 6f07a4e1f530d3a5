"""Pipeline orchestration and persistence tests."""

import copy
import json

import pytest

from janus import kb as kbmod
from janus import owlexport
from janus.taxonomy import InvalidParams, MergeParams


def test_empty_family_list_rejected():
    with pytest.raises(InvalidParams):
        kbmod.run_pipeline([])


def test_pipeline_deterministic(corpus_specs):
    a = kbmod.run_pipeline(corpus_specs)
    b = kbmod.run_pipeline(corpus_specs)
    assert json.dumps(kbmod.kb_to_dict(a), sort_keys=True) == json.dumps(
        kbmod.kb_to_dict(b), sort_keys=True
    )


def test_pipeline_history_entry(built_kb):
    assert len(built_kb.history) == 1
    entry = built_kb.history[0]
    assert entry["node_count"] == len(built_kb.network.nodes)
    assert entry["edge_count"] == len(built_kb.network.edges)
    assert entry["params"] == built_kb.params.to_dict()


def test_reparameterize_appends_history_and_keeps_corpus(corpus_specs):
    kb = kbmod.run_pipeline(corpus_specs)
    raw_before = json.dumps(kbmod.kb_to_dict(kb)["raw_nodes"], sort_keys=True)
    candidates_before = json.dumps(kbmod.kb_to_dict(kb)["candidates"], sort_keys=True)
    kbmod.reparameterize(kb, MergeParams(align_threshold=0.5, merge_threshold=0.6))
    snapshot = kbmod.kb_to_dict(kb)
    assert len(kb.history) == 2
    assert json.dumps(snapshot["raw_nodes"], sort_keys=True) == raw_before
    assert json.dumps(snapshot["candidates"], sort_keys=True) == candidates_before


def test_reparameterize_same_params_is_idempotent(corpus_specs):
    kb = kbmod.run_pipeline(corpus_specs)
    before = json.dumps(kbmod.kb_to_dict(kb)["network"], sort_keys=True)
    kbmod.reparameterize(kb, kb.params)
    after = json.dumps(kbmod.kb_to_dict(kb)["network"], sort_keys=True)
    assert before == after


def test_reparameterize_lower_threshold_fewer_or_equal_nodes(corpus_specs):
    kb = kbmod.run_pipeline(corpus_specs)
    n_default = len(kb.network.nodes)
    kbmod.reparameterize(kb, MergeParams(align_threshold=0.5, merge_threshold=0.5))
    assert len(kb.network.nodes) <= n_default


def test_reparameterize_merge_threshold_one_only_inclusions(corpus_specs):
    kb = kbmod.run_pipeline(corpus_specs)
    kbmod.reparameterize(kb, MergeParams(align_threshold=0.75, merge_threshold=1.0))
    # the corpus contains two hand-verified full inclusions:
    # post_box_address_type == post_box_address and delivery_address ⊂ tender_address
    merged = {m for n in kb.network.nodes.values() for m in n.merged_from}
    assert "class:post_box_address_type" in merged
    assert "class:delivery_address" in merged


def test_save_load_roundtrip(tmp_path, built_kb):
    path = tmp_path / "kb.json"
    kbmod.save_kb(built_kb, path)
    loaded = kbmod.load_kb(path)
    assert kbmod.kb_to_dict(loaded) == kbmod.kb_to_dict(built_kb)


def test_loaded_kb_supports_reparameterize(tmp_path, built_kb):
    path = tmp_path / "kb.json"
    kbmod.save_kb(built_kb, path)
    loaded = kbmod.load_kb(path)
    kbmod.reparameterize(loaded, MergeParams(align_threshold=0.5, merge_threshold=0.6))
    assert len(loaded.history) == 2


def test_load_unknown_version(tmp_path, built_kb):
    path = tmp_path / "kb.json"
    doc = kbmod.kb_to_dict(built_kb)
    doc["schema_version"] = 999
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(kbmod.VersionMismatch):
        kbmod.load_kb(path)


def test_save_to_unwritable_path(built_kb, tmp_path):
    target = tmp_path / "no_such_dir" / "kb.json"
    with pytest.raises(OSError):
        kbmod.save_kb(built_kb, target)


def test_exports_deterministic_across_runs(corpus_specs):
    def exports(kb):
        triples = owlexport.to_rdf_graph(kb.network, kb.base_namespace)
        return (
            owlexport.serialize(triples, "turtle", kb.base_namespace),
            owlexport.serialize_json_graph(kb.network),
        )

    assert exports(kbmod.run_pipeline(corpus_specs)) == exports(kbmod.run_pipeline(corpus_specs))


def test_mini_corpus_specs_shape(corpus_specs):
    assert len(corpus_specs) == 3
    for name, paths in corpus_specs:
        assert paths, name
        assert all(p.endswith(".xsd") for p in paths)
