"""XSD ingestion tests over small handwritten fixtures."""

import pytest

from janus import ingest

SCHEMA_HEAD = '<?xml version="1.0"?>\n<xs:schema xmlns:xs="http://www.w3.org/2001/XMLSchema">'
SCHEMA_TAIL = "</xs:schema>"


def write_xsd(tmp_path, name, body):
    p = tmp_path / name
    p.write_text(f"{SCHEMA_HEAD}\n{body}\n{SCHEMA_TAIL}\n", encoding="utf-8")
    return p


ADDRESS_BODY = """
<xs:element name="Address">
  <xs:complexType>
    <xs:sequence>
      <xs:element name="Street" type="xs:string"/>
      <xs:element name="City" type="xs:string"/>
    </xs:sequence>
  </xs:complexType>
</xs:element>
"""


def test_load_family_two_valid(tmp_path):
    a = write_xsd(tmp_path, "a.xsd", ADDRESS_BODY)
    b = write_xsd(tmp_path, "b.xsd", '<xs:element name="Id" type="xs:string"/>')
    report = ingest.IngestReport()
    family = ingest.load_family([a, b], "ubl", report)
    assert len(family.docs) == 2
    assert report.errors == []
    assert report.files_parsed == 2


def test_load_family_partial_failure(tmp_path):
    good = write_xsd(tmp_path, "good.xsd", ADDRESS_BODY)
    bad = tmp_path / "bad.xsd"
    bad.write_text("<xs:schema xmlns:xs='http://www.w3.org/2001/XMLSch", encoding="utf-8")
    report = ingest.IngestReport()
    family = ingest.load_family([good, bad], "x", report)
    assert len(family.docs) == 1
    assert len(report.errors) == 1


def test_load_family_not_a_schema(tmp_path):
    p = tmp_path / "y.xsd"
    p.write_text("<root><child/></root>", encoding="utf-8")
    with pytest.raises(ingest.AllFilesFailed):
        ingest.load_family([p], "y")


def test_load_family_no_paths():
    with pytest.raises(ingest.AllFilesFailed):
        ingest.load_family([], "empty")


def _parse_one(tmp_path, body, report=None):
    p = write_xsd(tmp_path, "one.xsd", body)
    family = ingest.load_family([p], "fam")
    return ingest.parse_schema(family.docs[0], report)


def test_parse_inline_complex_type(tmp_path):
    nodes = _parse_one(tmp_path, ADDRESS_BODY)
    by_name = {n.name: n for n in nodes}
    assert set(by_name) == {"Address", "Street", "City"}
    addr = by_name["Address"]
    assert addr.kind == "element"
    assert addr.child_ids == [by_name["Street"].node_id, by_name["City"].node_id]
    assert by_name["Street"].parent_id == addr.node_id


def test_parse_single_leaf(tmp_path):
    nodes = _parse_one(tmp_path, '<xs:element name="Id" type="xs:string"/>')
    assert len(nodes) == 1
    node = nodes[0]
    assert node.kind == "element"
    assert node.type_ref == "xs:string"
    assert node.child_ids == []


def test_parse_named_type_reference(tmp_path):
    body = """
    <xs:complexType name="AddressType">
      <xs:sequence>
        <xs:element name="Street" type="xs:string"/>
        <xs:element name="City" type="xs:string"/>
      </xs:sequence>
    </xs:complexType>
    <xs:element name="PostBoxAddress" type="AddressType"/>
    """
    nodes = _parse_one(tmp_path, body)
    by_name = {n.name: n for n in nodes}
    assert by_name["PostBoxAddress"].type_ref == "AddressType"
    assert by_name["AddressType"].kind == "complexType"
    assert len(by_name["AddressType"].child_ids) == 2


def test_parse_not_a_schema(tmp_path):
    p = tmp_path / "n.xsd"
    p.write_text("<root/>", encoding="utf-8")
    doc = ingest.SchemaDoc(doc_id="n", source_path=str(p), family_id="f")
    with pytest.raises(ingest.NotASchema):
        ingest.parse_schema(doc)


def test_parse_malformed(tmp_path):
    p = tmp_path / "m.xsd"
    p.write_text("<xs:schema", encoding="utf-8")
    doc = ingest.SchemaDoc(doc_id="m", source_path=str(p), family_id="f")
    with pytest.raises(ingest.XmlMalformed):
        ingest.parse_schema(doc)


def test_parse_deterministic(tmp_path):
    a = _parse_one(tmp_path, ADDRESS_BODY)
    b = _parse_one(tmp_path, ADDRESS_BODY)
    assert a == b


def test_report_counts_match_output(tmp_path):
    report = ingest.IngestReport()
    body = ADDRESS_BODY + '<xs:attribute name="lang" type="xs:string"/>'
    nodes = _parse_one(tmp_path, body, report)
    for kind, count in report.nodes_extracted.items():
        assert count == sum(1 for n in nodes if n.kind == kind)


def test_attribute_has_no_children(tmp_path):
    body = """
    <xs:element name="Item">
      <xs:complexType>
        <xs:sequence><xs:element name="Name" type="xs:string"/></xs:sequence>
        <xs:attribute name="id" type="xs:string"/>
      </xs:complexType>
    </xs:element>
    """
    nodes = _parse_one(tmp_path, body)
    by_name = {n.name: n for n in nodes}
    assert by_name["id"].kind == "attribute"
    assert by_name["id"].child_ids == []
    assert by_name["id"].node_id in by_name["Item"].child_ids


def test_link_resolves_type_reference(tmp_path):
    body = """
    <xs:complexType name="AddressType">
      <xs:sequence>
        <xs:element name="Street" type="xs:string"/>
        <xs:element name="City" type="xs:string"/>
      </xs:sequence>
    </xs:complexType>
    <xs:element name="PostBoxAddress" type="AddressType"/>
    """
    report = ingest.IngestReport()
    nodes = ingest.link_structure(_parse_one(tmp_path, body), report)
    by_id = {n.node_id: n for n in nodes}
    pba = next(n for n in nodes if n.name == "PostBoxAddress")
    child_names = [by_id[c].name for c in pba.child_ids]
    assert child_names == ["Street", "City"]
    # copies, not shared nodes
    original = next(n for n in nodes if n.name == "AddressType")
    assert set(pba.child_ids).isdisjoint(set(original.child_ids))
    for cid in pba.child_ids:
        assert by_id[cid].parent_id == pba.node_id
    assert report.unresolved_refs == []


def test_link_leaves_builtins(tmp_path):
    nodes = _parse_one(tmp_path, '<xs:element name="Id" type="xs:string"/>')
    linked = ingest.link_structure(nodes)
    assert linked[0].type_ref == "xs:string"
    assert linked[0].child_ids == []


def test_link_unresolved_reported(tmp_path):
    report = ingest.IngestReport()
    nodes = _parse_one(tmp_path, '<xs:element name="Thing" type="MissingType"/>')
    ingest.link_structure(nodes, report)
    assert ("one", "MissingType") in report.unresolved_refs


def test_link_cycle_guard(tmp_path):
    body = """
    <xs:complexType name="A">
      <xs:sequence><xs:element name="b_part" type="B"/></xs:sequence>
    </xs:complexType>
    <xs:complexType name="B">
      <xs:sequence><xs:element name="a_part" type="A"/></xs:sequence>
    </xs:complexType>
    <xs:element name="root_a" type="A"/>
    """
    report = ingest.IngestReport()
    nodes = ingest.link_structure(_parse_one(tmp_path, body), report)
    assert any("cycle" in ref for _, ref in report.unresolved_refs)
    assert len(nodes) < 50  # no runaway expansion


def test_parent_child_consistency_mini_corpus(built_kb):
    by_id = {n.node_id: n for n in built_kb.raw_nodes}
    for n in built_kb.raw_nodes:
        for cid in n.child_ids:
            assert by_id[cid].parent_id == n.node_id
        if n.kind == "attribute":
            assert n.child_ids == []
    ids = [n.node_id for n in built_kb.raw_nodes]
    assert len(ids) == len(set(ids))
