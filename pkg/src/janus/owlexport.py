"""RDFS/OWL and JSON-graph serialization of the semantic network.

Output is fully deterministic: triples sort before writing, JSON keys
sort, arrays follow id order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from urllib.parse import quote
from xml.sax.saxutils import escape as xml_escape
from xml.sax.saxutils import quoteattr

DEFAULT_BASE = "http://example.org/janus#"

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"

PREFIXES = [("owl", OWL), ("rdf", RDF), ("rdfs", RDFS)]


class InvalidNetwork(ValueError):
    """The network violates its own shape invariants (e.g. dangling edge)."""


class UnsupportedFormat(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Literal:
    value: str


@dataclass(frozen=True, order=True)
class RdfTriple:
    subject: str
    predicate: str
    object: object  # IRI string or Literal


def concept_iri(concept_id: str, base: str = DEFAULT_BASE) -> str:
    return base + quote(concept_id, safe="")


def to_rdf_graph(network, base: str = DEFAULT_BASE):
    """Map the semantic network onto OWL triples.

    Classes type as owl:Class, properties as owl:DatatypeProperty with
    rdfs:domain per enclosing class; merge aliases and relatedTo edges
    become owl:sameAs; sharedTerm and synonym edges become annotation
    triples in the tool namespace.
    """
    for e in network.edges:
        if e.src not in network.nodes or e.dst not in network.nodes:
            raise InvalidNetwork(f"dangling edge {e.src} -> {e.dst}")

    janus = base
    triples = set()
    onto = base.rstrip("#/")
    triples.add(RdfTriple(onto, RDF + "type", OWL + "Ontology"))

    for cid in sorted(network.nodes):
        node = network.nodes[cid]
        iri = concept_iri(cid, base)
        type_iri = OWL + ("Class" if node.kind == "class" else "DatatypeProperty")
        triples.add(RdfTriple(iri, RDF + "type", type_iri))
        for label in sorted(node.labels):
            triples.add(RdfTriple(iri, RDFS + "label", Literal(label)))
        for alias_id in sorted(node.merged_from):
            triples.add(RdfTriple(iri, OWL + "sameAs", concept_iri(alias_id, base)))

    for e in network.edges:
        src = concept_iri(e.src, base)
        dst = concept_iri(e.dst, base)
        if e.kind == "propertyOf":
            triples.add(RdfTriple(src, RDFS + "domain", dst))
        elif e.kind == "relatedTo":
            triples.add(RdfTriple(src, OWL + "sameAs", dst))
        elif e.kind == "synonym":
            triples.add(RdfTriple(src, janus + "altLabel", Literal(network.nodes[e.dst].canonical_name)))
            triples.add(RdfTriple(dst, janus + "altLabel", Literal(network.nodes[e.src].canonical_name)))
        elif e.kind == "sharedTerm":
            triples.add(RdfTriple(src, janus + "sharesTerm", Literal(e.label)))
            triples.add(RdfTriple(dst, janus + "sharesTerm", Literal(e.label)))
    return triples


def _sorted(triples):
    def key(t):
        obj = t.object
        return (t.subject, t.predicate, isinstance(obj, Literal), obj.value if isinstance(obj, Literal) else obj)

    return sorted(triples, key=key)


def _turtle_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")


def _prefixed(iri: str, base: str) -> str:
    for prefix, ns in PREFIXES + [("janus", base)]:
        if iri.startswith(ns) and iri != ns.rstrip("#/"):
            local = iri[len(ns):]
            if local and all(c.isalnum() or c in "_-" for c in local):
                return f"{prefix}:{local}"
    return f"<{iri}>"


def serialize(triples, fmt: str = "turtle", base: str = DEFAULT_BASE) -> bytes:
    """Write triples in Turtle or RDF/XML, deterministically sorted."""
    if fmt == "turtle":
        return _to_turtle(triples, base)
    if fmt == "rdfxml":
        return _to_rdfxml(triples, base)
    raise UnsupportedFormat(fmt)


def _to_turtle(triples, base) -> bytes:
    lines = []
    for prefix, ns in PREFIXES + [("janus", base)]:
        lines.append(f"@prefix {prefix}: <{ns}> .")
    lines.append("")
    for t in _sorted(triples):
        subj = f"<{t.subject}>"
        pred = _prefixed(t.predicate, base)
        if isinstance(t.object, Literal):
            obj = f'"{_turtle_escape(t.object.value)}"'
        else:
            obj = _prefixed(t.object, base)
        lines.append(f"{subj} {pred} {obj} .")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _split_qname(iri):
    for prefix, ns in PREFIXES:
        if iri.startswith(ns):
            return prefix, ns, iri[len(ns):]
    return None


def _to_rdfxml(triples, base) -> bytes:
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    lines.append(
        '<rdf:RDF xmlns:rdf="%s" xmlns:rdfs="%s" xmlns:owl="%s" xmlns:janus="%s">'
        % (RDF, RDFS, OWL, base)
    )
    by_subject = {}
    for t in _sorted(triples):
        by_subject.setdefault(t.subject, []).append(t)
    for subject in sorted(by_subject):
        lines.append(f"  <rdf:Description rdf:about={quoteattr(subject)}>")
        for t in by_subject[subject]:
            q = _split_qname(t.predicate)
            if q is not None:
                prefix, _, local = q
            elif t.predicate.startswith(base):
                prefix, local = "janus", t.predicate[len(base):]
            else:
                raise UnsupportedFormat(f"cannot qname predicate {t.predicate}")
            tag = f"{prefix}:{local}"
            if isinstance(t.object, Literal):
                lines.append(f"    <{tag}>{xml_escape(t.object.value)}</{tag}>")
            else:
                lines.append(f"    <{tag} rdf:resource={quoteattr(t.object)}/>")
        lines.append("  </rdf:Description>")
    lines.append("</rdf:RDF>")
    return ("\n".join(lines) + "\n").encode("utf-8")


def serialize_json_graph(network) -> bytes:
    """Neutral node/edge JSON document used by the table and graph views."""
    nodes = []
    for cid in sorted(network.nodes):
        n = network.nodes[cid]
        nodes.append(
            {
                "id": cid,
                "label": n.canonical_name,
                "kind": n.kind,
                "frequency": n.frequency,
                "family_attendance": n.family_attendance,
                "labels": sorted(n.labels),
            }
        )
    edges = []
    for e in sorted(network.edges, key=lambda e: (e.src, e.dst, e.kind, e.label or "")):
        edges.append(
            {"src": e.src, "dst": e.dst, "kind": e.kind, "label": e.label, "weight": e.weight}
        )
    doc = {"edges": edges, "nodes": nodes}
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")
