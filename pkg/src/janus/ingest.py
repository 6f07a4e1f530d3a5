"""XSD corpus ingestion.

Parses XML Schema files grouped into named families and extracts a flat
graph of candidate constructs (elements, complex/simple types,
attributes) with structural links.  Reference resolution copies type
subtrees per referencing element so later statistics count usage
contexts.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

XSD_NS = "http://www.w3.org/2001/XMLSchema"

# leaf types that linking leaves alone
XSD_BUILTINS = {
    "string", "normalizedString", "token", "boolean", "decimal", "float",
    "double", "integer", "int", "long", "short", "byte", "nonNegativeInteger",
    "positiveInteger", "negativeInteger", "nonPositiveInteger", "unsignedInt",
    "unsignedLong", "unsignedShort", "unsignedByte", "date", "time",
    "dateTime", "duration", "gYear", "gYearMonth", "gMonth", "gMonthDay",
    "gDay", "anyURI", "QName", "base64Binary", "hexBinary", "language",
    "Name", "NCName", "ID", "IDREF", "anyType", "anySimpleType",
}

_STRUCTURAL = {"sequence", "choice", "all", "complexContent", "simpleContent", "extension", "restriction", "group"}


class XmlMalformed(ValueError):
    pass


class NotASchema(ValueError):
    pass


class AllFilesFailed(RuntimeError):
    """No file in a load_family call produced a parseable schema."""


@dataclass
class SchemaDoc:
    doc_id: str
    source_path: str
    target_namespace: str | None = None
    family_id: str = ""


@dataclass
class SchemaFamily:
    family_id: str
    name: str
    docs: list = field(default_factory=list)


@dataclass
class RawNode:
    node_id: str
    name: str
    kind: str  # element | complexType | simpleType | attribute
    parent_id: str | None = None
    child_ids: list = field(default_factory=list)
    type_ref: str | None = None
    family_id: str = ""
    doc_id: str = ""


@dataclass
class IngestReport:
    files_parsed: int = 0
    nodes_extracted: dict = field(default_factory=dict)
    unresolved_refs: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    ignored: list = field(default_factory=list)

    def count(self, kind):
        self.nodes_extracted[kind] = self.nodes_extracted.get(kind, 0) + 1


def _local(tag):
    return tag.rsplit("}", 1)[-1]


def _type_ref(value):
    """Canonicalize a type QName: builtins become ``xs:<name>``, others keep the local part."""
    if value is None:
        return None
    local = value.rsplit(":", 1)[-1]
    if local in XSD_BUILTINS:
        return f"xs:{local}"
    return local


def load_family(paths, name, report: IngestReport | None = None):
    """Load one family of XSD files.

    Unparseable files are recorded in the report and skipped; only a
    family with zero parseable files is an error.
    """
    if not paths:
        raise AllFilesFailed(f"family {name!r}: no paths given")
    report = report if report is not None else IngestReport()
    family = SchemaFamily(family_id=name, name=name)
    seen_ids = set()
    for path in sorted(str(p) for p in paths):
        try:
            root = ET.parse(path).getroot()
        except (ET.ParseError, OSError) as exc:
            report.errors.append((path, str(exc)))
            continue
        if root.tag != f"{{{XSD_NS}}}schema":
            report.errors.append((path, f"root element {root.tag!r} is not an XSD schema"))
            continue
        doc_id = Path(path).stem
        k = 1
        while doc_id in seen_ids:
            k += 1
            doc_id = f"{Path(path).stem}-{k}"
        seen_ids.add(doc_id)
        family.docs.append(
            SchemaDoc(
                doc_id=doc_id,
                source_path=str(path),
                target_namespace=root.get("targetNamespace"),
                family_id=family.family_id,
            )
        )
        report.files_parsed += 1
    if not family.docs:
        raise AllFilesFailed(f"family {name!r}: no file parsed as an XSD schema")
    return family


def parse_schema(doc: SchemaDoc, report: IngestReport | None = None):
    """Extract RawNodes from one schema document in document order.

    Anonymous inline complexTypes fold into their enclosing element;
    node ids are ``family/doc/seq`` with a per-document counter.
    """
    report = report if report is not None else IngestReport()
    try:
        root = ET.parse(doc.source_path).getroot()
    except ET.ParseError as exc:
        raise XmlMalformed(str(exc)) from exc
    if root.tag != f"{{{XSD_NS}}}schema":
        raise NotASchema(f"{doc.source_path}: root is {root.tag!r}")

    nodes = []
    seq = [0]

    def new_node(name, kind, parent, type_ref=None):
        seq[0] += 1
        node = RawNode(
            node_id=f"{doc.family_id}/{doc.doc_id}/{seq[0]}",
            name=name,
            kind=kind,
            parent_id=parent.node_id if parent else None,
            type_ref=type_ref,
            family_id=doc.family_id,
            doc_id=doc.doc_id,
        )
        if parent is not None:
            parent.child_ids.append(node.node_id)
        nodes.append(node)
        report.count(kind)
        return node

    def walk_content(xml_el, parent):
        """Descend through structural wrappers collecting declarations."""
        for child in xml_el:
            tag = _local(child.tag)
            if tag in _STRUCTURAL:
                walk_content(child, parent)
            elif tag == "element":
                handle_element(child, parent)
            elif tag == "attribute":
                if child.get("name"):
                    new_node(child.get("name"), "attribute", parent, _type_ref(child.get("type")))
            elif tag == "complexType" and child.get("name") is None:
                # anonymous type: fold children into the enclosing element
                walk_content(child, parent)
            elif tag in ("redefine", "substitutionGroup"):
                report.ignored.append((doc.doc_id, tag))
            elif tag in ("annotation", "include", "import", "anyAttribute", "any", "key", "keyref", "unique", "simpleType"):
                continue
            else:
                walk_content(child, parent)

    def handle_element(xml_el, parent):
        name = xml_el.get("name") or _local(xml_el.get("ref", ""))
        if not name:
            return
        if xml_el.get("substitutionGroup"):
            report.ignored.append((doc.doc_id, "substitutionGroup"))
        node = new_node(name, "element", parent, _type_ref(xml_el.get("type")))
        walk_content(xml_el, node)

    for child in root:
        tag = _local(child.tag)
        if tag == "element":
            handle_element(child, None)
        elif tag == "complexType" and child.get("name"):
            node = new_node(child.get("name"), "complexType", None)
            walk_content(child, node)
        elif tag == "simpleType" and child.get("name"):
            new_node(child.get("name"), "simpleType", None)
        elif tag == "attribute" and child.get("name"):
            new_node(child.get("name"), "attribute", None, _type_ref(child.get("type")))
        elif tag == "redefine":
            report.ignored.append((doc.doc_id, "redefine"))
    return nodes


def link_structure(nodes, report: IngestReport | None = None):
    """Resolve element type references to complexTypes by copying subtrees.

    Lookup prefers the referencing element's document, then its family,
    then corpus order.  Each type is visited at most once per chain, so
    reference cycles terminate and are reported.
    """
    report = report if report is not None else IngestReport()
    by_id = {n.node_id: n for n in nodes}
    # highest used seq per document, for minting fresh copy ids
    next_seq = {}
    for n in nodes:
        prefix, _, s = n.node_id.rpartition("/")
        next_seq[prefix] = max(next_seq.get(prefix, 0), int(s))

    type_nodes = [n for n in nodes if n.kind == "complexType"]

    def find_type(name, from_node):
        same_doc = [t for t in type_nodes if t.name == name and t.doc_id == from_node.doc_id and t.family_id == from_node.family_id]
        if same_doc:
            return same_doc[0]
        same_family = [t for t in type_nodes if t.name == name and t.family_id == from_node.family_id]
        if same_family:
            return same_family[0]
        anywhere = [t for t in type_nodes if t.name == name]
        return anywhere[0] if anywhere else None

    out = list(nodes)
    # children as they stood before linking, so in-progress resolution
    # never re-copies subtrees it is itself appending
    orig_children = {n.node_id: list(n.child_ids) for n in nodes}

    def mint_id(like_node):
        prefix, _, _ = like_node.node_id.rpartition("/")
        next_seq[prefix] = next_seq.get(prefix, 0) + 1
        return f"{prefix}/{next_seq[prefix]}"

    def copy_subtree(src, new_parent, visited_types):
        copy = RawNode(
            node_id=mint_id(new_parent),
            name=src.name,
            kind=src.kind,
            parent_id=new_parent.node_id,
            type_ref=src.type_ref,
            family_id=new_parent.family_id,
            doc_id=new_parent.doc_id,
        )
        new_parent.child_ids.append(copy.node_id)
        out.append(copy)
        by_id[copy.node_id] = copy
        for cid in orig_children.get(src.node_id, src.child_ids):
            copy_subtree(by_id[cid], copy, visited_types)
        if copy.kind == "element" and copy.type_ref and not copy.type_ref.startswith("xs:"):
            resolve(copy, visited_types)
        return copy

    def resolve(element, visited_types):
        tname = element.type_ref
        if tname in visited_types:
            report.unresolved_refs.append((element.doc_id, f"{tname} (cycle)"))
            return
        target = find_type(tname, element)
        if target is None:
            report.unresolved_refs.append((element.doc_id, tname))
            return
        for cid in orig_children.get(target.node_id, target.child_ids):
            copy_subtree(by_id[cid], element, visited_types | {tname})

    for node in list(nodes):
        if node.kind == "element" and node.type_ref and not node.type_ref.startswith("xs:") and not node.child_ids:
            resolve(node, frozenset())
    return out


def ingest_corpus(family_specs):
    """Load, parse and link a whole corpus.

    ``family_specs`` is a list of (name, paths) pairs.  Returns
    (families, nodes, report).
    """
    report = IngestReport()
    families = []
    nodes = []
    for name, paths in family_specs:
        family = load_family(paths, name, report)
        families.append(family)
        for doc in family.docs:
            nodes.extend(parse_schema(doc, report))
    nodes = link_structure(nodes, report)
    return families, nodes, report
