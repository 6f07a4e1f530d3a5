"""Command-line front end.

Families are directories of .xsd files (one directory = one family) or
explicit --family NAME PATH pairs.  The knowledge base persists as one
versioned JSON document.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import kb as kbmod
from . import owlexport
from .taxonomy import MergeParams

CONFIG_KEYS = {
    "align_threshold": float,
    "merge_threshold": float,
    "min_frequency": int,
    "lattice_min_extent": int,
    "lattice_min_intent": int,
}


def read_config(path):
    """Parse key=value lines; returns (MergeParams kwargs, other settings)."""
    params = {}
    other = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        # '#' starts a comment only at line start or after whitespace,
        # so fragment namespaces like http://...# survive
        line = raw.strip()
        if line.startswith("#"):
            continue
        line = line.split(" #", 1)[0].split("\t#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in CONFIG_KEYS:
            params[key] = CONFIG_KEYS[key](value)
        else:
            other[key] = value
    return params, other


def _resources_from(other):
    return kbmod.Resources.load(
        stopwords_path=other.get("stopwords"),
        abbreviations_path=other.get("abbreviations"),
        synonyms_path=other.get("synonyms"),
    )


def _family_specs(dirs, family_opts):
    specs = []
    for d in dirs:
        p = Path(d)
        specs.append((p.name, sorted(str(f) for f in p.glob("*.xsd"))))
    for name, path in family_opts:
        p = Path(path)
        paths = sorted(str(f) for f in p.glob("*.xsd")) if p.is_dir() else [str(p)]
        specs.append((name, paths))
    return specs


@click.group()
def main():
    """Build and explore a knowledge base mined from XML Schema corpora."""


@main.command()
@click.argument("dirs", nargs=-1, type=click.Path(exists=True, file_okay=False))
@click.option("--family", "families", nargs=2, multiple=True, metavar="NAME PATH", help="Named family; PATH is a directory or one .xsd file. Repeatable.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--kb", "kb_path", type=click.Path(), default="janus_kb.json", show_default=True)
def ingest(dirs, families, config_path, kb_path):
    """Parse XSD families and build the knowledge base with current params."""
    params_kv, other = read_config(config_path) if config_path else ({}, {})
    specs = _family_specs(dirs, families)
    if not specs:
        raise click.UsageError("no families given (positional DIRS or --family)")
    params = MergeParams(**params_kv).validate()
    kb = kbmod.run_pipeline(specs, params, _resources_from(other))
    if "base_namespace" in other:
        kb.base_namespace = other["base_namespace"]
    kbmod.save_kb(kb, kb_path)
    click.echo(
        f"ingested {len(kb.families)} families, {len(kb.raw_nodes)} constructs; "
        f"network: {len(kb.network.nodes)} concepts, {len(kb.network.edges)} relationships"
    )
    for path, msg in kb.report.errors:
        click.echo(f"warning: {path}: {msg}", err=True)


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--kb", "kb_path", type=click.Path(exists=True), default="janus_kb.json", show_default=True)
def build(config_path, kb_path):
    """Re-run alignment/filter/merge on the stored corpus with new thresholds."""
    kb = kbmod.load_kb(kb_path)
    params_kv, other = read_config(config_path) if config_path else ({}, {})
    params = MergeParams(**{**kb.params.to_dict(), **params_kv}).validate()
    kbmod.reparameterize(kb, params)
    if "base_namespace" in other:
        kb.base_namespace = other["base_namespace"]
    kbmod.save_kb(kb, kb_path)
    click.echo(f"rebuilt: {len(kb.network.nodes)} concepts, {len(kb.network.edges)} relationships")


@main.command()
@click.option("--format", "fmt", type=click.Choice(["ttl", "rdfxml", "json"]), required=True)
@click.option("--out", "out_path", type=click.Path(), required=True)
@click.option("--kb", "kb_path", type=click.Path(exists=True), default="janus_kb.json", show_default=True)
def export(fmt, out_path, kb_path):
    """Write the semantic network as Turtle, RDF/XML or a JSON graph."""
    kb = kbmod.load_kb(kb_path)
    if fmt == "json":
        data = owlexport.serialize_json_graph(kb.network)
    else:
        triples = owlexport.to_rdf_graph(kb.network, kb.base_namespace)
        data = owlexport.serialize(triples, "turtle" if fmt == "ttl" else "rdfxml", kb.base_namespace)
    Path(out_path).write_bytes(data)
    click.echo(f"wrote {out_path} ({len(data)} bytes)")


@main.command()
@click.option("--kb", "kb_path", type=click.Path(exists=True), default="janus_kb.json", show_default=True)
@click.option("--top", type=int, default=20, show_default=True)
def stats(kb_path, top):
    """Print term frequencies and mined association rules."""
    kb = kbmod.load_kb(kb_path)
    rows = sorted(
        kb.term_stats.values(), key=lambda s: (-s.global_frequency, s.term)
    )[:top]
    click.echo(f"{'term':<20}{'freq':>6}{'families':>10}{'docs':>6}")
    for st in rows:
        attendance = sum(1 for v in st.per_family_frequency.values() if v > 0)
        click.echo(f"{st.term:<20}{st.global_frequency:>6}{attendance:>10}{st.document_frequency:>6}")
    if kb.associations:
        click.echo("\nassociation rules (confidence, support):")
        for r in kb.associations[:top]:
            ante = " ".join(sorted(r.antecedent))
            click.echo(f"  {{{ante}}} -> {r.consequent}  ({r.confidence:.2f}, {r.support:.2f})")


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--kb", "kb_path", type=click.Path(exists=True), required=True)
@click.option("--frontend", "frontend_dir", type=click.Path(exists=True, file_okay=False), default=None, help="Directory with the built web UI")
def serve(port, host, kb_path, frontend_dir):
    """Serve the HTTP API (and optionally the web UI) for a knowledge base."""
    import uvicorn

    from .service import KbService, create_app

    app = create_app(KbService(kbmod.load_kb(kb_path)), frontend_dir=frontend_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
