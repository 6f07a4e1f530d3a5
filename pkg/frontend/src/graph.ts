// Graph view: edge-kind filtering is a pure view-side filter over the
// fetched subgraph (toggling a kind off and on must restore exactly the
// fetched edge set), layouts are deterministic coordinate assignments,
// and rendering refuses to draw more than NODE_CAP nodes.

import { EdgeKind, GraphDoc, GraphEdge, GraphNode } from "./model.js";

export const NODE_CAP = 500;

export type LayoutName = "force" | "hierarchical" | "radial";

export interface Point {
  x: number;
  y: number;
}

export function filterEdges(edges: GraphEdge[], enabled: ReadonlySet<EdgeKind>): GraphEdge[] {
  return edges.filter((e) => enabled.has(e.kind));
}

/** Nodes with at least one visible edge, plus isolated nodes (which no
 * kind toggle should hide). */
export function visibleNodes(doc: GraphDoc, enabled: ReadonlySet<EdgeKind>): GraphNode[] {
  const touched = new Set<string>();
  for (const e of doc.edges) {
    touched.add(e.src);
    touched.add(e.dst);
  }
  const connected = new Set<string>();
  for (const e of filterEdges(doc.edges, enabled)) {
    connected.add(e.src);
    connected.add(e.dst);
  }
  return doc.nodes.filter((n) => connected.has(n.id) || !touched.has(n.id));
}

function hashAngle(id: string): number {
  let h = 2166136261;
  for (let i = 0; i < id.length; i++) {
    h = (h ^ id.charCodeAt(i)) * 16777619;
    h >>>= 0;
  }
  return (h % 3600) / 3600 * 2 * Math.PI;
}

/** Poor man's force layout: start nodes on a jittered circle, run a few
 * rounds of spring relaxation along edges.  Deterministic (no RNG). */
export function forceLayout(nodes: GraphNode[], edges: GraphEdge[], width: number, height: number): Map<string, Point> {
  const pos = new Map<string, Point>();
  const cx = width / 2;
  const cy = height / 2;
  const r = Math.min(width, height) / 2 - 30;
  nodes.forEach((n, i) => {
    const angle = (2 * Math.PI * i) / Math.max(nodes.length, 1) + hashAngle(n.id) * 0.05;
    pos.set(n.id, { x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  });
  const ids = new Set(nodes.map((n) => n.id));
  for (let round = 0; round < 40; round++) {
    for (const e of edges) {
      if (!ids.has(e.src) || !ids.has(e.dst)) continue;
      const a = pos.get(e.src)!;
      const b = pos.get(e.dst)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.hypot(dx, dy) || 1;
      const pull = (dist - 120) / dist * 0.05;
      a.x += dx * pull;
      a.y += dy * pull;
      b.x -= dx * pull;
      b.y -= dy * pull;
    }
  }
  for (const p of pos.values()) {
    p.x = Math.min(Math.max(p.x, 20), width - 20);
    p.y = Math.min(Math.max(p.y, 20), height - 20);
  }
  return pos;
}

/** Classes in an upper band, properties below, both spread evenly. */
export function hierarchicalLayout(nodes: GraphNode[], width: number, height: number): Map<string, Point> {
  const pos = new Map<string, Point>();
  const classes = nodes.filter((n) => n.kind === "class");
  const props = nodes.filter((n) => n.kind !== "class");
  const place = (row: GraphNode[], y: number) => {
    row.forEach((n, i) => {
      pos.set(n.id, { x: ((i + 1) * width) / (row.length + 1), y });
    });
  };
  place(classes, height * 0.25);
  place(props, height * 0.75);
  return pos;
}

/** Concentric rings by graph distance from the first (or focus) node. */
export function radialLayout(
  nodes: GraphNode[],
  edges: GraphEdge[],
  width: number,
  height: number,
  focus?: string,
): Map<string, Point> {
  const pos = new Map<string, Point>();
  if (nodes.length === 0) return pos;
  const root = focus && nodes.some((n) => n.id === focus) ? focus : nodes[0].id;
  const ring = new Map<string, number>([[root, 0]]);
  let frontier = [root];
  let depth = 0;
  while (frontier.length > 0) {
    depth += 1;
    const next: string[] = [];
    for (const e of edges) {
      for (const [from, to] of [[e.src, e.dst], [e.dst, e.src]] as const) {
        if (ring.has(from) && ring.get(from) === depth - 1 && !ring.has(to)) {
          ring.set(to, depth);
          next.push(to);
        }
      }
    }
    frontier = next;
  }
  let maxRing = depth;
  for (const n of nodes) {
    if (!ring.has(n.id)) {
      ring.set(n.id, maxRing); // disconnected: outermost ring
    }
  }
  maxRing = Math.max(...ring.values(), 1);
  const cx = width / 2;
  const cy = height / 2;
  const step = (Math.min(width, height) / 2 - 30) / maxRing;
  const byRing = new Map<number, GraphNode[]>();
  for (const n of nodes) {
    const k = ring.get(n.id)!;
    const bucket = byRing.get(k) ?? [];
    bucket.push(n);
    byRing.set(k, bucket);
  }
  for (const [k, bucket] of byRing) {
    bucket.forEach((n, i) => {
      if (k === 0) {
        pos.set(n.id, { x: cx, y: cy });
        return;
      }
      const angle = (2 * Math.PI * i) / bucket.length;
      pos.set(n.id, { x: cx + k * step * Math.cos(angle), y: cy + k * step * Math.sin(angle) });
    });
  }
  return pos;
}

export function layoutGraph(
  layout: LayoutName,
  nodes: GraphNode[],
  edges: GraphEdge[],
  width: number,
  height: number,
  focus?: string,
): Map<string, Point> {
  if (layout === "hierarchical") return hierarchicalLayout(nodes, width, height);
  if (layout === "radial") return radialLayout(nodes, edges, width, height, focus);
  return forceLayout(nodes, edges, width, height);
}

/** Non-null when the view must refuse to draw: the message tells the
 * user how to narrow the graph instead. */
export function capMessage(nodeCount: number): string | null {
  if (nodeCount <= NODE_CAP) return null;
  return (
    `Graph has ${nodeCount} nodes, more than the ${NODE_CAP}-node display limit. ` +
    "Pick a focus concept or raise the thresholds to narrow the view."
  );
}

export interface GraphRenderResult {
  drawnNodeIds: string[];
  drawnEdges: GraphEdge[];
  capped: boolean;
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderGraph(
  container: HTMLElement,
  doc: GraphDoc,
  enabled: ReadonlySet<EdgeKind>,
  layout: LayoutName,
  onPick: (id: string) => void,
  focus?: string,
): GraphRenderResult {
  container.textContent = "";
  const nodes = visibleNodes(doc, enabled);
  const edges = filterEdges(doc.edges, enabled);
  const warning = capMessage(nodes.length);
  if (warning !== null) {
    const p = document.createElement("p");
    p.className = "warning";
    p.textContent = warning;
    container.appendChild(p);
    return { drawnNodeIds: [], drawnEdges: [], capped: true };
  }

  const width = 960;
  const height = 620;
  const pos = layoutGraph(layout, nodes, edges, width, height, focus);
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);

  for (const e of edges) {
    const a = pos.get(e.src);
    const b = pos.get(e.dst);
    if (!a || !b) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    line.setAttribute("class", `edge edge-${e.kind}`);
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = e.label ? `${e.kind} (${e.label})` : e.kind;
    line.appendChild(title);
    svg.appendChild(line);
  }
  for (const n of nodes) {
    const p = pos.get(n.id)!;
    const g = document.createElementNS(SVG_NS, "g");
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(p.x));
    circle.setAttribute("cy", String(p.y));
    circle.setAttribute("r", String(6 + Math.min(n.frequency, 10)));
    circle.setAttribute("class", `node node-${n.kind}`);
    circle.addEventListener("click", () => onPick(n.id));
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(p.x + 10));
    label.setAttribute("y", String(p.y + 4));
    label.textContent = n.label;
    g.appendChild(circle);
    g.appendChild(label);
    svg.appendChild(g);
  }
  container.appendChild(svg);
  return { drawnNodeIds: nodes.map((n) => n.id), drawnEdges: edges, capped: false };
}
