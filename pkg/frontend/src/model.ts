// Shared payload shapes and client-side validation.
// Every shape mirrors a documented JSON endpoint; unknown fields are
// ignored, missing required fields make validation fail loudly.

export const EDGE_KINDS = ["propertyOf", "synonym", "sharedTerm", "relatedTo"] as const;
export type EdgeKind = (typeof EDGE_KINDS)[number];

export interface TermRow {
  term: string;
  frequency: number;
  family_attendance: number;
}

export interface ConceptRow {
  id: string;
  label: string;
  kind: string;
  frequency: number;
  family_attendance: number;
  source_instances: string[];
  relationship_counts: Record<string, number>;
}

export interface GraphNode {
  id: string;
  label: string;
  kind: string;
  frequency: number;
  family_attendance: number;
  labels: string[];
}

export interface GraphEdge {
  src: string;
  dst: string;
  kind: EdgeKind;
  label: string | null;
  weight: number;
}

export interface GraphDoc {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface MergeParams {
  align_threshold: number;
  merge_threshold: number;
  min_frequency: number;
  lattice_min_extent: number;
  lattice_min_intent: number;
}

export interface BuildStatus {
  building: boolean;
  history: Array<{ seq: number; node_count: number; edge_count: number }>;
}

export class PayloadError extends Error {}

function requireNumber(obj: Record<string, unknown>, key: string): number {
  const v = obj[key];
  if (typeof v !== "number" || Number.isNaN(v)) {
    throw new PayloadError(`field ${key} missing or not a number`);
  }
  return v;
}

function requireString(obj: Record<string, unknown>, key: string): string {
  const v = obj[key];
  if (typeof v !== "string") throw new PayloadError(`field ${key} missing or not a string`);
  return v;
}

function asRecord(value: unknown, what: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new PayloadError(`${what} is not an object`);
  }
  return value as Record<string, unknown>;
}

function asArray(value: unknown, what: string): unknown[] {
  if (!Array.isArray(value)) throw new PayloadError(`${what} is not an array`);
  return value;
}

export function parseTerms(data: unknown): TermRow[] {
  return asArray(data, "terms payload").map((raw) => {
    const r = asRecord(raw, "term row");
    return {
      term: requireString(r, "term"),
      frequency: requireNumber(r, "frequency"),
      family_attendance: requireNumber(r, "family_attendance"),
    };
  });
}

export function parseConcepts(data: unknown): ConceptRow[] {
  return asArray(data, "concepts payload").map((raw) => {
    const r = asRecord(raw, "concept row");
    return {
      id: requireString(r, "id"),
      label: requireString(r, "label"),
      kind: requireString(r, "kind"),
      frequency: requireNumber(r, "frequency"),
      family_attendance: requireNumber(r, "family_attendance"),
      source_instances: asArray(r.source_instances ?? [], "source_instances").map(String),
      relationship_counts: (r.relationship_counts ?? {}) as Record<string, number>,
    };
  });
}

export function parseGraph(data: unknown): GraphDoc {
  const doc = asRecord(data, "graph payload");
  const nodes = asArray(doc.nodes, "graph nodes").map((raw) => {
    const r = asRecord(raw, "graph node");
    return {
      id: requireString(r, "id"),
      label: requireString(r, "label"),
      kind: requireString(r, "kind"),
      frequency: requireNumber(r, "frequency"),
      family_attendance: requireNumber(r, "family_attendance"),
      labels: asArray(r.labels ?? [], "labels").map(String),
    };
  });
  const edges = asArray(doc.edges, "graph edges").map((raw) => {
    const r = asRecord(raw, "graph edge");
    const kind = requireString(r, "kind");
    if (!(EDGE_KINDS as readonly string[]).includes(kind)) {
      throw new PayloadError(`unknown edge kind ${kind}`);
    }
    return {
      src: requireString(r, "src"),
      dst: requireString(r, "dst"),
      kind: kind as EdgeKind,
      label: (r.label ?? null) as string | null,
      weight: requireNumber(r, "weight"),
    };
  });
  return { nodes, edges };
}

export function parseParams(data: unknown): MergeParams {
  const r = asRecord(data, "params payload");
  return {
    align_threshold: requireNumber(r, "align_threshold"),
    merge_threshold: requireNumber(r, "merge_threshold"),
    min_frequency: requireNumber(r, "min_frequency"),
    lattice_min_extent: requireNumber(r, "lattice_min_extent"),
    lattice_min_intent: requireNumber(r, "lattice_min_intent"),
  };
}

export function parseStatus(data: unknown): BuildStatus {
  const r = asRecord(data, "status payload");
  if (typeof r.building !== "boolean") throw new PayloadError("field building missing");
  return { building: r.building, history: (r.history ?? []) as BuildStatus["history"] };
}

/** Client-side mirror of the server's MergeParams invariants.
 *  Returns one error message per offending field, empty when valid. */
export function validateParams(p: MergeParams): Partial<Record<keyof MergeParams, string>> {
  const errors: Partial<Record<keyof MergeParams, string>> = {};
  if (!(p.align_threshold >= 0 && p.align_threshold <= 1)) {
    errors.align_threshold = "must be in [0, 1]";
  }
  if (!(p.merge_threshold >= 0 && p.merge_threshold <= 1)) {
    errors.merge_threshold = "must be in [0, 1]";
  } else if (p.merge_threshold < p.align_threshold) {
    errors.merge_threshold = "must be >= align_threshold";
  }
  if (!(Number.isInteger(p.min_frequency) && p.min_frequency >= 1)) {
    errors.min_frequency = "must be an integer >= 1";
  }
  if (!(Number.isInteger(p.lattice_min_extent) && p.lattice_min_extent >= 2)) {
    errors.lattice_min_extent = "must be an integer >= 2";
  }
  if (!(Number.isInteger(p.lattice_min_intent) && p.lattice_min_intent >= 1)) {
    errors.lattice_min_intent = "must be an integer >= 1";
  }
  return errors;
}
