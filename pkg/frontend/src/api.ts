// Thin fetch client for the knowledge-base HTTP API.  All responses go
// through the parse* validators so malformed payloads surface as
// PayloadError instead of silently rendering garbage.

import {
  BuildStatus,
  ConceptRow,
  EdgeKind,
  GraphDoc,
  MergeParams,
  TermRow,
  parseConcepts,
  parseGraph,
  parseParams,
  parseStatus,
  parseTerms,
} from "./model.js";

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function getJson(url: string): Promise<unknown> {
  const resp = await fetch(url);
  if (!resp.ok) {
    throw new ApiError(resp.status, await resp.text());
  }
  return resp.json();
}

export class ApiClient {
  constructor(private base: string = "") {}

  async terms(): Promise<TermRow[]> {
    return parseTerms(await getJson(`${this.base}/api/terms`));
  }

  async concepts(opts: { kind?: string; sort?: string; q?: string } = {}): Promise<ConceptRow[]> {
    const qs = new URLSearchParams();
    if (opts.kind) qs.set("kind", opts.kind);
    if (opts.sort) qs.set("sort", opts.sort);
    if (opts.q) qs.set("q", opts.q);
    const suffix = qs.toString() ? `?${qs}` : "";
    return parseConcepts(await getJson(`${this.base}/api/concepts${suffix}`));
  }

  async graph(opts: { focus?: string; depth?: number; kinds?: EdgeKind[] } = {}): Promise<GraphDoc> {
    const qs = new URLSearchParams();
    if (opts.focus) qs.set("focus", opts.focus);
    if (opts.depth !== undefined) qs.set("depth", String(opts.depth));
    if (opts.kinds) qs.set("kinds", opts.kinds.join(","));
    const suffix = qs.toString() ? `?${qs}` : "";
    return parseGraph(await getJson(`${this.base}/api/graph${suffix}`));
  }

  async getParams(): Promise<MergeParams> {
    return parseParams(await getJson(`${this.base}/api/params`));
  }

  async postParams(params: MergeParams): Promise<{ params: MergeParams; node_count: number; edge_count: number }> {
    const resp = await fetch(`${this.base}/api/params`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(params),
    });
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    const body = (await resp.json()) as { params: unknown; node_count: number; edge_count: number };
    return {
      params: parseParams(body.params),
      node_count: body.node_count,
      edge_count: body.edge_count,
    };
  }

  async status(): Promise<BuildStatus> {
    return parseStatus(await getJson(`${this.base}/api/status`));
  }
}
