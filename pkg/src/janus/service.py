"""HTTP API over a knowledge base.

Single-writer / multi-reader: rebuilds run under a lock and swap the
published KnowledgeBase reference atomically, so readers always see one
complete snapshot.
"""

from __future__ import annotations

import copy
import threading

from fastapi import FastAPI, HTTPException, Query

from . import kb as kbmod
from .taxonomy import InvalidParams, MergeParams


class KbService:
    def __init__(self, kb: kbmod.KnowledgeBase):
        self._kb = kb
        self._write_lock = threading.Lock()
        self._building = False

    @property
    def kb(self) -> kbmod.KnowledgeBase:
        return self._kb

    @property
    def building(self) -> bool:
        return self._building

    def reparameterize(self, params: MergeParams) -> kbmod.KnowledgeBase:
        with self._write_lock:
            self._building = True
            try:
                working = copy.deepcopy(self._kb)
                kbmod.reparameterize(working, params)
                self._kb = working  # atomic publish
            finally:
                self._building = False
        return self._kb


def _terms_payload(kb):
    out = []
    for term in sorted(kb.term_stats):
        st = kb.term_stats[term]
        out.append(
            {
                "term": term,
                "frequency": st.global_frequency,
                "family_attendance": sum(1 for v in st.per_family_frequency.values() if v > 0),
            }
        )
    out.sort(key=lambda r: (-r["frequency"], r["term"]))
    return out


def _concept_rows(kb, kind=None, q=None, sort=None):
    net = kb.network
    counts = {cid: {} for cid in net.nodes}
    for e in net.edges:
        for end in (e.src, e.dst):
            counts[end][e.kind] = counts[end].get(e.kind, 0) + 1
    rows = []
    for cid in sorted(net.nodes):
        n = net.nodes[cid]
        if kind and n.kind != kind:
            continue
        if q and q.lower() not in n.canonical_name and not any(q.lower() in l.lower() for l in n.labels):
            continue
        rows.append(
            {
                "id": cid,
                "label": n.canonical_name,
                "kind": n.kind,
                "frequency": n.frequency,
                "family_attendance": n.family_attendance,
                "source_instances": list(n.source_instances),
                "relationship_counts": dict(sorted(counts[cid].items())),
            }
        )
    if sort == "frequency":
        rows.sort(key=lambda r: (-r["frequency"], r["id"]))
    elif sort == "family_attendance":
        rows.sort(key=lambda r: (-r["family_attendance"], r["id"]))
    elif sort in (None, "", "label"):
        rows.sort(key=lambda r: r["label"])
    else:
        raise HTTPException(status_code=422, detail=f"unknown sort key {sort!r}")
    return rows


def _subgraph(kb, focus=None, depth=1, kinds=None):
    net = kb.network
    kinds = set(kinds) if kinds else {"propertyOf", "synonym", "sharedTerm", "relatedTo"}
    edges = [e for e in net.edges if e.kind in kinds]
    if focus is None:
        keep = set(net.nodes)
    else:
        if focus not in net.nodes:
            raise HTTPException(status_code=404, detail=f"unknown concept {focus!r}")
        keep = {focus}
        frontier = {focus}
        for _ in range(max(depth, 0)):
            nxt = set()
            for e in edges:
                if e.src in frontier:
                    nxt.add(e.dst)
                if e.dst in frontier:
                    nxt.add(e.src)
            nxt -= keep
            keep |= nxt
            frontier = nxt
    nodes = []
    for cid in sorted(keep):
        n = net.nodes[cid]
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
    edge_rows = [
        {"src": e.src, "dst": e.dst, "kind": e.kind, "label": e.label, "weight": e.weight}
        for e in sorted(edges, key=lambda e: (e.src, e.dst, e.kind, e.label or ""))
        if e.src in keep and e.dst in keep
    ]
    return {"nodes": nodes, "edges": edge_rows}


def create_app(service: KbService, frontend_dir=None) -> FastAPI:
    app = FastAPI(title="janus", version="0.1.0")

    @app.get("/api/terms")
    def terms():
        return _terms_payload(service.kb)

    @app.get("/api/concepts")
    def concepts(kind: str | None = None, sort: str | None = None, q: str | None = None):
        return _concept_rows(service.kb, kind=kind, q=q, sort=sort)

    @app.get("/api/graph")
    def graph(
        focus: str | None = None,
        depth: int = 1,
        kinds: str | None = Query(default=None, description="comma-separated edge kinds"),
    ):
        kind_list = [k for k in kinds.split(",") if k] if kinds else None
        return _subgraph(service.kb, focus=focus, depth=depth, kinds=kind_list)

    @app.get("/api/params")
    def get_params():
        return service.kb.params.to_dict()

    @app.post("/api/params")
    def post_params(body: dict):
        try:
            params = MergeParams.from_dict(body)
        except (InvalidParams, TypeError, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        kb = service.reparameterize(params)
        return {
            "params": kb.params.to_dict(),
            "node_count": len(kb.network.nodes),
            "edge_count": len(kb.network.edges),
        }

    @app.get("/api/associations")
    def associations():
        return [
            {
                "antecedent": sorted(r.antecedent),
                "consequent": r.consequent,
                "support": r.support,
                "confidence": r.confidence,
            }
            for r in service.kb.associations
        ]

    @app.get("/api/status")
    def status():
        return {"building": service.building, "history": service.kb.history}

    if frontend_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="ui")

    return app
