"""Candidate concepts, alignment, filtering, merging and edge annotation.

The semantic network starts as one ConceptNode per distinct
(canonical name, kind) over the linked corpus.  Alignment pairs come
from name similarity and from co-membership in concept-lattice clusters
built over shared tokens and shared properties.  Aligned class pairs
merge when one property set fully includes the other or the similarity
clears the merge threshold; merging repeats to a fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fca
from .lexnorm import TokenizedName
from .similarity import SynonymLexicon, name_similarity


class InvalidParams(ValueError):
    pass


@dataclass
class MergeParams:
    align_threshold: float = 0.75
    merge_threshold: float = 0.9
    min_frequency: int = 1
    lattice_min_extent: int = 2
    lattice_min_intent: int = 2

    def validate(self):
        if not 0 <= self.align_threshold <= 1:
            raise InvalidParams("align_threshold must be in [0, 1]")
        if not 0 <= self.merge_threshold <= 1:
            raise InvalidParams("merge_threshold must be in [0, 1]")
        if self.merge_threshold < self.align_threshold:
            raise InvalidParams("merge_threshold must be >= align_threshold")
        if self.min_frequency < 1:
            raise InvalidParams("min_frequency must be >= 1")
        if self.lattice_min_extent < 2:
            raise InvalidParams("lattice_min_extent must be >= 2")
        if self.lattice_min_intent < 1:
            raise InvalidParams("lattice_min_intent must be >= 1")
        return self

    def to_dict(self):
        return {
            "align_threshold": self.align_threshold,
            "merge_threshold": self.merge_threshold,
            "min_frequency": self.min_frequency,
            "lattice_min_extent": self.lattice_min_extent,
            "lattice_min_intent": self.lattice_min_intent,
        }

    @classmethod
    def from_dict(cls, d):
        known = {k: d[k] for k in cls().to_dict() if k in d}
        return cls(**known).validate()


@dataclass
class ConceptNode:
    concept_id: str
    canonical_name: str
    kind: str  # class | property
    labels: set = field(default_factory=set)
    tokens: set = field(default_factory=set)
    frequency: int = 0
    families: set = field(default_factory=set)
    source_instances: list = field(default_factory=list)
    merged_from: list = field(default_factory=list)

    @property
    def family_attendance(self):
        return len(self.families)


@dataclass(frozen=True)
class Relationship:
    src: str
    dst: str
    kind: str  # propertyOf | synonym | sharedTerm | relatedTo
    label: str | None = None
    weight: float = 1.0


@dataclass
class SemanticNetwork:
    nodes: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def add_edge(self, edge: Relationship):
        if edge.src == edge.dst:
            return
        key = (edge.src, edge.dst, edge.kind, edge.label)
        if any((e.src, e.dst, e.kind, e.label) == key for e in self.edges):
            return
        self.edges.append(edge)

    def drop_node(self, concept_id):
        del self.nodes[concept_id]
        self.edges = [e for e in self.edges if concept_id not in (e.src, e.dst)]


def canonical_name(tname: TokenizedName) -> str:
    return "_".join(tname.tokens) if tname.tokens else tname.original.lower()


def _concept_id(kind, canonical):
    return f"{kind}:{canonical}"


def build_candidates(nodes, tokenized) -> SemanticNetwork:
    """Collapse linked RawNodes into pre-merge concepts with propertyOf edges.

    ``tokenized`` maps raw names to TokenizedName (post abbreviation
    expansion).  Elements/complexTypes with children become classes;
    leaf elements, attributes and named simpleTypes become properties.
    """
    net = SemanticNetwork()
    by_id = {n.node_id: n for n in nodes}

    def kind_of(raw):
        if raw.kind == "complexType":
            return "class"
        if raw.kind == "element" and raw.child_ids:
            return "class"
        return "property"

    def concept_for(raw):
        tname = tokenized[raw.name]
        canon = canonical_name(tname)
        k = kind_of(raw)
        cid = _concept_id(k, canon)
        node = net.nodes.get(cid)
        if node is None:
            node = ConceptNode(concept_id=cid, canonical_name=canon, kind=k)
            net.nodes[cid] = node
        node.labels.add(raw.name)
        node.labels.add(canon)
        node.tokens |= set(tname.tokens) if tname.tokens else {canon}
        node.frequency += 1
        node.families.add(raw.family_id)
        node.source_instances.append(raw.node_id)
        return node

    for raw in sorted(nodes, key=lambda n: n.node_id):
        concept_for(raw)

    for raw in sorted(nodes, key=lambda n: n.node_id):
        if kind_of(raw) != "class":
            continue
        class_node = concept_for_lookup(net, tokenized, raw)
        for cid in raw.child_ids:
            child = by_id[cid]
            if kind_of(child) == "property":
                prop_node = concept_for_lookup(net, tokenized, child)
                net.add_edge(Relationship(src=prop_node.concept_id, dst=class_node.concept_id, kind="propertyOf"))
    return net


def concept_for_lookup(net, tokenized, raw):
    k = "class" if raw.kind == "complexType" or (raw.kind == "element" and raw.child_ids) else "property"
    return net.nodes[_concept_id(k, canonical_name(tokenized[raw.name]))]


def property_sets(net: SemanticNetwork) -> dict:
    """Map class concept id -> set of property canonical names."""
    out = {cid: set() for cid, n in net.nodes.items() if n.kind == "class"}
    for e in net.edges:
        if e.kind == "propertyOf" and e.dst in out:
            out[e.dst].add(net.nodes[e.src].canonical_name)
    return out


def build_context(net: SemanticNetwork) -> fca.FormalContext:
    """Formal context over class concepts: token attributes plus has:<property> markers."""
    classes = sorted(cid for cid, n in net.nodes.items() if n.kind == "class")
    props = property_sets(net)
    attrs = set()
    pairs = []
    for cid in classes:
        node = net.nodes[cid]
        for tok in sorted(node.tokens):
            attrs.add(tok)
            pairs.append((cid, tok))
        for p in sorted(props.get(cid, ())):
            marker = f"has:{p}"
            attrs.add(marker)
            pairs.append((cid, marker))
    return fca.FormalContext.from_pairs(classes, sorted(attrs), pairs)


def _tokenized_for(node: ConceptNode) -> TokenizedName:
    toks = sorted(node.tokens)
    return TokenizedName(original=node.canonical_name, tokens=toks, raw_tokens=toks)


def align_candidates(net: SemanticNetwork, lex: SynonymLexicon, params: MergeParams):
    """Same-kind concept pairs that pass the similarity threshold or co-cluster.

    Returns (id_a, id_b, combined score) triples, id_a < id_b, ordered
    by score descending then id pair.
    """
    params.validate()
    lattice = fca.build_lattice(build_context(net))
    clusters = fca.extract_clusters(lattice, params.lattice_min_extent, params.lattice_min_intent)
    clustered = set()
    for cluster in clusters:
        ordered = sorted(cluster)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1 :]:
                clustered.add((a, b))

    out = []
    ids = sorted(net.nodes)
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            na, nb = net.nodes[a], net.nodes[b]
            if na.kind != nb.kind:
                continue
            score = name_similarity(_tokenized_for(na), _tokenized_for(nb), lex).combined
            if score >= params.align_threshold or (a, b) in clustered:
                out.append((a, b, score))
    out.sort(key=lambda t: (-t[2], t[0], t[1]))
    return out


def filter_by_frequency(net: SemanticNetwork, min_frequency: int) -> SemanticNetwork:
    """Drop rare classes; drop properties only once no propertyOf edge remains."""
    removed = [
        cid
        for cid, n in sorted(net.nodes.items())
        if n.kind == "class" and n.frequency < min_frequency
    ]
    for cid in removed:
        net.drop_node(cid)
    anchored = {e.src for e in net.edges if e.kind == "propertyOf"}
    if removed:
        orphans = [
            cid
            for cid, n in sorted(net.nodes.items())
            if n.kind == "property" and cid not in anchored
        ]
        for cid in orphans:
            net.drop_node(cid)
        net.provenance.setdefault("filtered", []).extend(removed + orphans)
    return net


def _merge_pair(net, absorbed_id, survivor_id):
    absorbed = net.nodes[absorbed_id]
    survivor = net.nodes[survivor_id]
    survivor.labels |= absorbed.labels
    survivor.tokens |= absorbed.tokens
    survivor.families |= absorbed.families
    survivor.source_instances.extend(absorbed.source_instances)
    survivor.frequency = len(survivor.source_instances)
    survivor.merged_from.append(absorbed_id)
    survivor.merged_from.extend(absorbed.merged_from)
    del net.nodes[absorbed_id]
    rewired = []
    for e in net.edges:
        src = survivor_id if e.src == absorbed_id else e.src
        dst = survivor_id if e.dst == absorbed_id else e.dst
        if src == dst:
            continue
        rewired.append(Relationship(src=src, dst=dst, kind=e.kind, label=e.label, weight=e.weight))
    net.edges = []
    for e in rewired:
        net.add_edge(e)


def merge_network(net: SemanticNetwork, alignments, params: MergeParams) -> SemanticNetwork:
    """Merge aligned class pairs by full property inclusion or merge threshold.

    An included class merges into its includer; otherwise the
    lower-frequency node merges into the higher (lexicographically
    smaller canonical name absorbs on ties).  Passes repeat until no
    merge fires.  Aligned pairs left unmerged get a relatedTo edge.
    """
    params.validate()
    redirect = {}

    def resolve(cid):
        while cid in redirect:
            cid = redirect[cid]
        return cid

    changed = True
    while changed:
        changed = False
        props = property_sets(net)
        for a, b, score in alignments:
            a, b = resolve(a), resolve(b)
            if a == b or a not in net.nodes or b not in net.nodes:
                continue
            na, nb = net.nodes[a], net.nodes[b]
            if na.kind != "class" or nb.kind != "class":
                continue
            pa, pb = props.get(a, set()), props.get(b, set())
            inclusion = pa <= pb or pb <= pa
            if not inclusion and score < params.merge_threshold:
                continue
            if pa < pb:
                absorbed, survivor = a, b
            elif pb < pa:
                absorbed, survivor = b, a
            else:
                # equal property sets or threshold merge: keep the busier node
                if na.frequency != nb.frequency:
                    absorbed, survivor = (a, b) if na.frequency < nb.frequency else (b, a)
                else:
                    absorbed, survivor = (
                        (b, a) if na.canonical_name <= nb.canonical_name else (a, b)
                    )
            _merge_pair(net, absorbed, survivor)
            redirect[absorbed] = survivor
            changed = True
            props = property_sets(net)

    for a, b, score in alignments:
        ra, rb = resolve(a), resolve(b)
        if ra == rb or ra not in net.nodes or rb not in net.nodes:
            continue
        src, dst = sorted((ra, rb))
        net.add_edge(Relationship(src=src, dst=dst, kind="relatedTo", weight=round(score, 6)))
    return net


def annotate_edges(net: SemanticNetwork, lex: SynonymLexicon, term_stats=None) -> SemanticNetwork:
    """Add synonym edges (shared synset, single-token names) and sharedTerm edges."""
    ids = sorted(net.nodes)
    known_terms = set(term_stats) if term_stats is not None else None
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            na, nb = net.nodes[a], net.nodes[b]
            if na.kind == nb.kind and len(na.tokens) == 1 and len(nb.tokens) == 1:
                (ta,), (tb,) = na.tokens, nb.tokens
                if ta != tb and lex.index.get(ta, set()) & lex.index.get(tb, set()):
                    net.add_edge(Relationship(src=a, dst=b, kind="synonym"))
            if len(na.tokens) >= 2 and len(nb.tokens) >= 2:
                shared = na.tokens & nb.tokens
                if known_terms is not None:
                    shared &= known_terms
                for term in sorted(shared):
                    net.add_edge(Relationship(src=a, dst=b, kind="sharedTerm", label=term))
    return net
