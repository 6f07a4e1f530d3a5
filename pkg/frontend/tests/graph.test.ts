import { describe, expect, it } from "vitest";

import {
  NODE_CAP,
  capMessage,
  filterEdges,
  forceLayout,
  hierarchicalLayout,
  layoutGraph,
  radialLayout,
  visibleNodes,
} from "../src/graph.js";
import { EDGE_KINDS, EdgeKind, GraphDoc, GraphEdge, GraphNode } from "../src/model.js";

function node(id: string, kind = "class"): GraphNode {
  return { id, label: id, kind, frequency: 1, family_attendance: 1, labels: [id] };
}

function edge(src: string, dst: string, kind: EdgeKind, label: string | null = null): GraphEdge {
  return { src, dst, kind, label, weight: 1.0 };
}

const DOC: GraphDoc = {
  nodes: [node("class:a"), node("class:b"), node("property:p", "property"), node("class:lonely")],
  edges: [
    edge("property:p", "class:a", "propertyOf"),
    edge("class:a", "class:b", "sharedTerm", "address"),
    edge("class:a", "class:b", "relatedTo"),
  ],
};

describe("edge-kind filtering", () => {
  it("draws exactly the fetched edges of the enabled kinds", () => {
    const enabled = new Set<EdgeKind>(["propertyOf", "sharedTerm"]);
    const drawn = filterEdges(DOC.edges, enabled);
    expect(drawn).toEqual(DOC.edges.filter((e) => enabled.has(e.kind)));
    expect(drawn.map((e) => e.kind)).toEqual(["propertyOf", "sharedTerm"]);
  });

  it("toggling a kind off and back on restores the identical edge set", () => {
    const enabled = new Set<EdgeKind>(EDGE_KINDS);
    const before = filterEdges(DOC.edges, enabled);
    enabled.delete("sharedTerm");
    const during = filterEdges(DOC.edges, enabled);
    expect(during.some((e) => e.kind === "sharedTerm")).toBe(false);
    enabled.add("sharedTerm");
    expect(filterEdges(DOC.edges, enabled)).toEqual(before);
  });

  it("hides nodes whose edges are all filtered out, but keeps isolated nodes", () => {
    const onlyProps = visibleNodes(DOC, new Set<EdgeKind>(["propertyOf"]));
    const ids = onlyProps.map((n) => n.id);
    expect(ids).toContain("class:a");
    expect(ids).toContain("property:p");
    expect(ids).toContain("class:lonely"); // never had edges
    expect(ids).not.toContain("class:b"); // only sharedTerm/relatedTo edges

    const all = visibleNodes(DOC, new Set<EdgeKind>(EDGE_KINDS));
    expect(all.map((n) => n.id).sort()).toEqual(DOC.nodes.map((n) => n.id).sort());
  });
});

describe("node cap", () => {
  it("allows exactly the cap and refuses one past it", () => {
    expect(NODE_CAP).toBe(500);
    expect(capMessage(NODE_CAP)).toBeNull();
    expect(capMessage(0)).toBeNull();
    const msg = capMessage(NODE_CAP + 1);
    expect(msg).toContain("501 nodes");
    expect(msg).toContain("focus");
  });
});

describe("layouts", () => {
  const W = 800;
  const H = 600;

  it("force layout places every node inside the canvas, deterministically", () => {
    const a = forceLayout(DOC.nodes, DOC.edges, W, H);
    const b = forceLayout(DOC.nodes, DOC.edges, W, H);
    expect(a.size).toBe(DOC.nodes.length);
    for (const n of DOC.nodes) {
      const p = a.get(n.id)!;
      expect(p.x).toBeGreaterThanOrEqual(0);
      expect(p.x).toBeLessThanOrEqual(W);
      expect(p.y).toBeGreaterThanOrEqual(0);
      expect(p.y).toBeLessThanOrEqual(H);
      expect(b.get(n.id)).toEqual(p);
    }
  });

  it("hierarchical layout separates classes from properties vertically", () => {
    const pos = hierarchicalLayout(DOC.nodes, W, H);
    const classY = pos.get("class:a")!.y;
    const propY = pos.get("property:p")!.y;
    expect(classY).toBeLessThan(propY);
    expect(pos.get("class:b")!.y).toBe(classY);
  });

  it("radial layout centers the focus node and rings its neighbours", () => {
    const pos = radialLayout(DOC.nodes, DOC.edges, W, H, "class:a");
    const center = pos.get("class:a")!;
    expect(center).toEqual({ x: W / 2, y: H / 2 });
    const distB = Math.hypot(pos.get("class:b")!.x - center.x, pos.get("class:b")!.y - center.y);
    expect(distB).toBeGreaterThan(0);
    expect(pos.size).toBe(DOC.nodes.length);
  });

  it("layoutGraph dispatches by name and covers all nodes", () => {
    for (const name of ["force", "hierarchical", "radial"] as const) {
      const pos = layoutGraph(name, DOC.nodes, DOC.edges, W, H);
      expect(pos.size).toBe(DOC.nodes.length);
    }
  });
});
