"""Acceptance suite: one test per exit criterion, each printing a
pass/fail line.  Oracles are independent re-implementations living in
the sibling test modules."""

import itertools
import json
import random
import time
from pathlib import Path

import pytest

from janus import fca, kb as kbmod, lexnorm, owlexport, similarity
from janus.taxonomy import MergeParams

from test_fca import brute_force_concepts, random_context
from test_owlexport import parse_turtle
from test_similarity import oracle_edit_distance, oracle_trigram_dice

GOLDEN = Path(__file__).parent / "golden" / "mini_corpus.graph.json"


def report(name, ok):
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'}: {name}")
    assert ok, name


def test_fca_oracle_equivalence():
    """100 random contexts <= 8x8: lattice equals brute-force closed sets, < 5 s."""
    rng = random.Random(31337)
    start = time.monotonic()
    ok = True
    for _ in range(100):
        ctx = random_context(rng, max_objects=8, max_attributes=8)
        got = {(c.extent, c.intent) for c in fca.build_lattice(ctx).concepts}
        if got != brute_force_concepts(ctx):
            ok = False
            break
    elapsed = time.monotonic() - start
    report("FCA oracle equivalence (100 contexts)", ok and elapsed < 5.0)


def test_closure_laws_and_galois_connection():
    """1000 random (context, subset) samples: zero violations."""
    rng = random.Random(4242)
    violations = 0
    for _ in range(1000):
        ctx = random_context(rng, max_objects=6, max_attributes=6)
        attrs = set(rng.sample(ctx.attributes, rng.randint(0, len(ctx.attributes))))
        objs = set(rng.sample(ctx.objects, rng.randint(0, len(ctx.objects))))
        closed = ctx.closure(attrs)
        bigger = attrs | set(rng.sample(ctx.attributes, rng.randint(0, len(ctx.attributes))))
        if not attrs <= closed:
            violations += 1
        if not ctx.closure(attrs) <= ctx.closure(bigger):
            violations += 1
        if ctx.closure(closed) != closed:
            violations += 1
        if (objs <= ctx.prime_attributes(attrs)) != (attrs <= ctx.prime_objects(objs)):
            violations += 1
    report("closure laws + Galois connection (1000 samples)", violations == 0)


def test_tokenizer_golden_suite():
    goldens = [
        ("tender_address", ["tender", "address"]),
        ("post_box_address", ["post", "box", "address"]),
        # 20 rule-derived cases
        ("address", ["address"]),
        ("XMLSchemaV2", ["xml", "schema", "v", "2"]),
        ("camelCase", ["camel", "case"]),
        ("PascalCase", ["pascal", "case"]),
        ("snake_case_name", ["snake", "case", "name"]),
        ("kebab-case", ["kebab", "case"]),
        ("dotted.name", ["dotted", "name"]),
        ("ns:local", ["ns", "local"]),
        ("two words", ["two", "words"]),
        ("slash/name", ["slash", "name"]),
        ("HTTPServer", ["http", "server"]),
        ("parseXMLFile", ["parse", "xml", "file"]),
        ("value2", ["value", "2"]),
        ("2ndValue", ["2", "nd", "value"]),
        ("ISO8601Date", ["iso", "8601", "date"]),
        ("UOMCode", ["uom", "code"]),
        ("amountEUR", ["amount", "eur"]),
        ("mixed_CamelCase-v2", ["mixed", "camel", "case", "v", "2"]),
        ("__weird__name__", ["weird", "name"]),
        ("x509Certificate", ["x", "509", "certificate"]),
    ]
    ok = all(lexnorm.tokenize(name).tokens == expected for name, expected in goldens)

    rng = random.Random(2718)
    alphabet = "abcdefgXYZ0123_-. "
    idem = True
    for _ in range(1000):
        name = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 20)))
        try:
            tokens = lexnorm.tokenize(name).tokens
        except lexnorm.EmptyName:
            continue
        if tokens and lexnorm.tokenize("_".join(tokens)).tokens != tokens:
            idem = False
            break
    report("tokenizer golden suite + idempotence", ok and idem)


def test_string_metrics_vs_oracle():
    rng = random.Random(555)
    ok = True
    for _ in range(500):
        a = "".join(rng.choice("abcdefgh") for _ in range(rng.randint(1, 12)))
        b = "".join(rng.choice("abcdefgh") for _ in range(rng.randint(1, 12)))
        d = oracle_edit_distance(a, b)
        if similarity.levenshtein(a, b) != d:
            ok = False
            break
        if abs(similarity.string_similarity(a, b) - (1 - d / max(len(a), len(b)))) > 1e-12:
            ok = False
            break
        if abs(similarity.string_similarity(a, b, "trigram_dice") - oracle_trigram_dice(a, b)) > 1e-12:
            ok = False
            break
    report("string metrics vs brute-force oracle (500 pairs)", ok)


def test_end_to_end_mini_corpus(built_kb):
    doc = json.loads(owlexport.serialize_json_graph(built_kb.network))
    edges = doc["edges"]
    a = any(
        e["kind"] == "sharedTerm"
        and e["label"] == "address"
        and {e["src"], e["dst"]} == {"class:tender_address", "class:post_box_address"}
        for e in edges
    )
    st = built_kb.term_stats["address"]
    b = sum(1 for v in st.per_family_frequency.values() if v > 0) == 3
    merged = any(n.merged_from for n in built_kb.network.nodes.values())
    ttl = owlexport.serialize(
        owlexport.to_rdf_graph(built_kb.network, built_kb.base_namespace),
        "turtle",
        built_kb.base_namespace,
    )
    c = merged and b"owl:sameAs" in ttl
    golden = GOLDEN.read_bytes()
    d = owlexport.serialize_json_graph(built_kb.network) == golden
    report("end-to-end mini-corpus (sharedTerm, attendance, merge, golden)", a and b and c and d)


def test_merge_monotonicity(built_kb):
    from janus.kb import _analysis_stages

    counts = []
    for thr in [0.5, 0.6, 0.7, 0.8, 0.9, 1.0]:
        params = MergeParams(align_threshold=0.5, merge_threshold=thr)
        counts.append(len(_analysis_stages(built_kb, params).nodes))
    report("merge monotonicity over threshold grid", counts == sorted(counts))


def test_determinism_of_exports(corpus_specs):
    def run():
        kb = kbmod.run_pipeline(corpus_specs)
        triples = owlexport.to_rdf_graph(kb.network, kb.base_namespace)
        return (
            owlexport.serialize(triples, "turtle", kb.base_namespace),
            owlexport.serialize_json_graph(kb.network),
        )

    report("byte-identical .ttl and .graph.json across runs", run() == run())


def test_rdf_roundtrip(built_kb):
    triples = owlexport.to_rdf_graph(built_kb.network, built_kb.base_namespace)
    data = owlexport.serialize(triples, "turtle", built_kb.base_namespace)
    _, reparsed = parse_turtle(data.decode("utf-8"))
    report("Turtle round-trip via independent parser", reparsed == set(triples))


def test_kb_persistence_and_snapshot_consistency(tmp_path, built_kb):
    import copy
    import threading

    from fastapi.testclient import TestClient

    from janus.service import KbService, create_app

    path = tmp_path / "kb.json"
    kbmod.save_kb(built_kb, path)
    loaded = kbmod.load_kb(path)
    roundtrip_ok = kbmod.kb_to_dict(loaded) == kbmod.kb_to_dict(built_kb)

    service = KbService(copy.deepcopy(built_kb))
    client = TestClient(create_app(service))
    torn = []

    def reader():
        for _ in range(20):
            kb = service.kb
            entry = kb.history[-1]
            if entry["node_count"] != len(kb.network.nodes) or entry["edge_count"] != len(kb.network.edges):
                torn.append(entry)

    def writer():
        for thr in [0.6, 0.7, 0.8, 0.9, 1.0]:
            assert client.post(
                "/api/params", json={"align_threshold": 0.5, "merge_threshold": thr}
            ).status_code == 200

    threads = [threading.Thread(target=reader) for _ in range(5)]
    threads.append(threading.Thread(target=writer))
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    report("KB persistence round-trip + no torn snapshots", roundtrip_ok and not torn)
