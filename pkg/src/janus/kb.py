"""Knowledge base: pipeline orchestration and persistence.

A KnowledgeBase bundles the corpus snapshot (raw nodes, tokenizations,
term statistics, association rules), the current merge parameters and
the current semantic network, plus an append-only build history.  The
corpus snapshot is kept so threshold changes re-run only the analysis
stages.

History timestamps are logical build counters, not wall-clock times, so
two runs over the same inputs serialize identically.
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources as importlib_resources

from . import ingest, lexnorm, owlexport, taxonomy
from .ingest import RawNode, SchemaDoc, SchemaFamily
from .lexnorm import AssociationRule, TermStats, TokenizedName
from .similarity import SynonymLexicon
from .taxonomy import ConceptNode, InvalidParams, MergeParams, Relationship, SemanticNetwork

SCHEMA_VERSION = 1

# association mining defaults; rules are surfaced, not consumed by merging
MIN_SUPPORT = 0.2
MIN_CONFIDENCE = 0.6


class VersionMismatch(ValueError):
    pass


def _default_resource(name):
    return importlib_resources.files("janus.resources").joinpath(name)


def mini_corpus_specs():
    """Family specs for the bundled demonstration corpus (3 synthetic families)."""
    root = importlib_resources.files("janus.data.mini_corpus")
    specs = []
    for family_dir in sorted(root.iterdir(), key=lambda p: p.name):
        if not family_dir.is_dir():
            continue
        paths = sorted(str(p) for p in family_dir.iterdir() if p.name.endswith(".xsd"))
        specs.append((family_dir.name, paths))
    return specs


@dataclass
class Resources:
    """Loaded lexical resources, snapshotted into the KB."""

    stopwords: set = field(default_factory=set)
    abbreviations: dict = field(default_factory=dict)
    lexicon: SynonymLexicon = field(default_factory=SynonymLexicon)

    @classmethod
    def load(cls, stopwords_path=None, abbreviations_path=None, synonyms_path=None):
        with importlib_resources.as_file(_default_resource("stopwords.txt")) as p:
            stops = lexnorm.load_stopwords(stopwords_path or p)
        with importlib_resources.as_file(_default_resource("abbreviations.csv")) as p:
            abbr = lexnorm.load_abbreviations(abbreviations_path or p)
        with importlib_resources.as_file(_default_resource("synonyms.tsv")) as p:
            lex = SynonymLexicon.load(synonyms_path or p)
        return cls(stopwords=stops, abbreviations=abbr, lexicon=lex)


@dataclass
class KnowledgeBase:
    families: list = field(default_factory=list)
    raw_nodes: list = field(default_factory=list)
    tokenized: dict = field(default_factory=dict)  # raw name -> TokenizedName
    term_stats: dict = field(default_factory=dict)
    associations: list = field(default_factory=list)
    resources: Resources = field(default_factory=Resources)
    report: ingest.IngestReport = field(default_factory=ingest.IngestReport)
    params: MergeParams = field(default_factory=MergeParams)
    candidates: SemanticNetwork = field(default_factory=SemanticNetwork)
    network: SemanticNetwork = field(default_factory=SemanticNetwork)
    history: list = field(default_factory=list)
    base_namespace: str = owlexport.DEFAULT_BASE
    corpus_id: str = ""


def _corpus_id(raw_nodes):
    payload = json.dumps(
        [
            (n.node_id, n.name, n.kind, n.parent_id, n.child_ids, n.type_ref, n.family_id, n.doc_id)
            for n in raw_nodes
        ],
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _analysis_stages(kb: KnowledgeBase, params: MergeParams) -> SemanticNetwork:
    """align -> filter -> merge -> annotate on a fresh copy of the candidates."""
    net = copy.deepcopy(kb.candidates)
    net.provenance = {"corpus_id": kb.corpus_id, "params": params.to_dict()}
    alignments = taxonomy.align_candidates(net, kb.resources.lexicon, params)
    net = taxonomy.filter_by_frequency(net, params.min_frequency)
    net = taxonomy.merge_network(net, alignments, params)
    net = taxonomy.annotate_edges(net, kb.resources.lexicon, kb.term_stats)
    return net


def _record_build(kb: KnowledgeBase, params: MergeParams):
    kb.history.append(
        {
            "seq": len(kb.history) + 1,
            "timestamp": f"build-{len(kb.history) + 1:06d}",
            "params": params.to_dict(),
            "node_count": len(kb.network.nodes),
            "edge_count": len(kb.network.edges),
        }
    )


def run_pipeline(family_specs, params: MergeParams | None = None, resources: Resources | None = None) -> KnowledgeBase:
    """Full build: ingest, normalize, stats, candidates, analysis stages."""
    if not family_specs:
        raise InvalidParams("at least one family is required")
    params = (params or MergeParams()).validate()
    resources = resources or Resources.load()

    families, nodes, report = ingest.ingest_corpus(family_specs)

    tokenized = {}
    for n in nodes:
        if n.name not in tokenized:
            t = lexnorm.tokenize(n.name)
            tokenized[n.name] = lexnorm.expand_abbreviations(t, resources.abbreviations)

    stats_input = [(tokenized[n.name], n.family_id, n.doc_id) for n in nodes]
    term_stats = lexnorm.compute_term_stats(stats_input, resources.stopwords)
    associations = lexnorm.mine_associations(
        [tokenized[name] for name in sorted(tokenized)], MIN_SUPPORT, MIN_CONFIDENCE
    )

    kb = KnowledgeBase(
        families=families,
        raw_nodes=nodes,
        tokenized=tokenized,
        term_stats=term_stats,
        associations=associations,
        resources=resources,
        report=report,
        params=params,
        corpus_id=_corpus_id(nodes),
    )
    kb.candidates = taxonomy.build_candidates(nodes, tokenized)
    kb.network = _analysis_stages(kb, params)
    _record_build(kb, params)
    return kb


def reparameterize(kb: KnowledgeBase, params: MergeParams) -> KnowledgeBase:
    """Re-run the analysis stages on the cached candidates with new thresholds.

    The previous network stays in place until the replacement is
    complete; the corpus snapshot is never touched.
    """
    params.validate()
    new_network = _analysis_stages(kb, params)
    kb.network = new_network
    kb.params = params
    _record_build(kb, params)
    return kb


# -- serialization -----------------------------------------------------


def kb_to_dict(kb: KnowledgeBase) -> dict:
    def node_dict(n: ConceptNode):
        return {
            "concept_id": n.concept_id,
            "canonical_name": n.canonical_name,
            "kind": n.kind,
            "labels": sorted(n.labels),
            "tokens": sorted(n.tokens),
            "frequency": n.frequency,
            "families": sorted(n.families),
            "source_instances": list(n.source_instances),
            "merged_from": list(n.merged_from),
        }

    def net_dict(net: SemanticNetwork):
        return {
            "nodes": [node_dict(net.nodes[cid]) for cid in sorted(net.nodes)],
            "edges": [
                {"src": e.src, "dst": e.dst, "kind": e.kind, "label": e.label, "weight": e.weight}
                for e in sorted(net.edges, key=lambda e: (e.src, e.dst, e.kind, e.label or ""))
            ],
            "provenance": net.provenance,
        }

    return {
        "schema_version": SCHEMA_VERSION,
        "corpus_id": kb.corpus_id,
        "base_namespace": kb.base_namespace,
        "params": kb.params.to_dict(),
        "families": [
            {
                "family_id": f.family_id,
                "name": f.name,
                "docs": [
                    {"doc_id": d.doc_id, "source_path": d.source_path, "target_namespace": d.target_namespace}
                    for d in f.docs
                ],
            }
            for f in kb.families
        ],
        "raw_nodes": [
            {
                "node_id": n.node_id,
                "name": n.name,
                "kind": n.kind,
                "parent_id": n.parent_id,
                "child_ids": list(n.child_ids),
                "type_ref": n.type_ref,
                "family_id": n.family_id,
                "doc_id": n.doc_id,
            }
            for n in kb.raw_nodes
        ],
        "tokenized": {
            name: {"tokens": t.tokens, "raw_tokens": t.raw_tokens}
            for name, t in sorted(kb.tokenized.items())
        },
        "term_stats": {
            term: {
                "global_frequency": st.global_frequency,
                "per_family_frequency": dict(sorted(st.per_family_frequency.items())),
                "document_frequency": st.document_frequency,
            }
            for term, st in sorted(kb.term_stats.items())
        },
        "associations": [
            {
                "antecedent": sorted(r.antecedent),
                "consequent": r.consequent,
                "support": r.support,
                "confidence": r.confidence,
            }
            for r in kb.associations
        ],
        "resources": {
            "stopwords": sorted(kb.resources.stopwords),
            "abbreviations": dict(sorted(kb.resources.abbreviations.items())),
            "synsets": sorted(sorted(s) for s in kb.resources.lexicon.synsets),
        },
        "report": {
            "files_parsed": kb.report.files_parsed,
            "nodes_extracted": dict(sorted(kb.report.nodes_extracted.items())),
            "unresolved_refs": [list(x) for x in kb.report.unresolved_refs],
            "errors": [list(x) for x in kb.report.errors],
            "ignored": [list(x) for x in kb.report.ignored],
        },
        "candidates": net_dict(kb.candidates),
        "network": net_dict(kb.network),
        "history": kb.history,
    }


def _net_from_dict(d) -> SemanticNetwork:
    net = SemanticNetwork(provenance=d.get("provenance", {}))
    for nd in d["nodes"]:
        net.nodes[nd["concept_id"]] = ConceptNode(
            concept_id=nd["concept_id"],
            canonical_name=nd["canonical_name"],
            kind=nd["kind"],
            labels=set(nd["labels"]),
            tokens=set(nd["tokens"]),
            frequency=nd["frequency"],
            families=set(nd["families"]),
            source_instances=list(nd["source_instances"]),
            merged_from=list(nd["merged_from"]),
        )
    for ed in d["edges"]:
        net.edges.append(
            Relationship(src=ed["src"], dst=ed["dst"], kind=ed["kind"], label=ed["label"], weight=ed["weight"])
        )
    return net


def kb_from_dict(d) -> KnowledgeBase:
    if d.get("schema_version") != SCHEMA_VERSION:
        raise VersionMismatch(f"unsupported schema_version {d.get('schema_version')!r}")
    resources = Resources(
        stopwords=set(d["resources"]["stopwords"]),
        abbreviations=dict(d["resources"]["abbreviations"]),
        lexicon=SynonymLexicon.from_synsets(d["resources"]["synsets"]),
    )
    report = ingest.IngestReport(
        files_parsed=d["report"]["files_parsed"],
        nodes_extracted=dict(d["report"]["nodes_extracted"]),
        unresolved_refs=[tuple(x) for x in d["report"]["unresolved_refs"]],
        errors=[tuple(x) for x in d["report"]["errors"]],
        ignored=[tuple(x) for x in d["report"]["ignored"]],
    )
    kb = KnowledgeBase(
        families=[
            SchemaFamily(
                family_id=f["family_id"],
                name=f["name"],
                docs=[
                    SchemaDoc(
                        doc_id=doc["doc_id"],
                        source_path=doc["source_path"],
                        target_namespace=doc["target_namespace"],
                        family_id=f["family_id"],
                    )
                    for doc in f["docs"]
                ],
            )
            for f in d["families"]
        ],
        raw_nodes=[RawNode(**n) for n in d["raw_nodes"]],
        tokenized={
            name: TokenizedName(original=name, tokens=list(t["tokens"]), raw_tokens=list(t["raw_tokens"]))
            for name, t in d["tokenized"].items()
        },
        term_stats={
            term: TermStats(
                term=term,
                global_frequency=st["global_frequency"],
                per_family_frequency=dict(st["per_family_frequency"]),
                document_frequency=st["document_frequency"],
            )
            for term, st in d["term_stats"].items()
        },
        associations=[
            AssociationRule(
                antecedent=frozenset(r["antecedent"]),
                consequent=r["consequent"],
                support=r["support"],
                confidence=r["confidence"],
            )
            for r in d["associations"]
        ],
        resources=resources,
        report=report,
        params=MergeParams.from_dict(d["params"]),
        candidates=_net_from_dict(d["candidates"]),
        network=_net_from_dict(d["network"]),
        history=list(d["history"]),
        base_namespace=d["base_namespace"],
        corpus_id=d["corpus_id"],
    )
    return kb


def save_kb(kb: KnowledgeBase, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(kb_to_dict(kb), fh, sort_keys=True, indent=1)
        fh.write("\n")


def load_kb(path) -> KnowledgeBase:
    with open(path, encoding="utf-8") as fh:
        return kb_from_dict(json.load(fh))
