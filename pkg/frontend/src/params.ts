// Threshold form flow: validate locally, POST, wait for the rebuild to
// finish, then report the new network size.  Kept free of DOM access so
// the whole flow is testable with a mocked client.

import { ApiClient, ApiError } from "./api.js";
import { MergeParams, validateParams } from "./model.js";

export interface ApplyResult {
  ok: boolean;
  /** field -> message for client-side rejections; "_server" for 4xx. */
  errors: Record<string, string>;
  nodeCount?: number;
  edgeCount?: number;
  params?: MergeParams;
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Apply new thresholds.  Invalid input never reaches the network. */
export async function applyParams(
  client: ApiClient,
  params: MergeParams,
  pollIntervalMs = 50,
  maxPolls = 100,
): Promise<ApplyResult> {
  const errors = validateParams(params);
  if (Object.keys(errors).length > 0) {
    return { ok: false, errors: errors as Record<string, string> };
  }
  let response;
  try {
    response = await client.postParams(params);
  } catch (exc) {
    if (exc instanceof ApiError) {
      return { ok: false, errors: { _server: exc.detail } };
    }
    throw exc;
  }
  // The POST is synchronous server-side, but a concurrent rebuild may
  // still be in flight; wait until the service reports idle.
  for (let i = 0; i < maxPolls; i++) {
    const status = await client.status();
    if (!status.building) break;
    await sleep(pollIntervalMs);
  }
  return {
    ok: true,
    errors: {},
    nodeCount: response.node_count,
    edgeCount: response.edge_count,
    params: response.params,
  };
}

export function readForm(form: HTMLFormElement): MergeParams {
  const num = (name: string) => Number((form.elements.namedItem(name) as HTMLInputElement).value);
  return {
    align_threshold: num("align_threshold"),
    merge_threshold: num("merge_threshold"),
    min_frequency: num("min_frequency"),
    lattice_min_extent: num("lattice_min_extent"),
    lattice_min_intent: num("lattice_min_intent"),
  };
}

export function fillForm(form: HTMLFormElement, params: MergeParams): void {
  for (const [key, value] of Object.entries(params)) {
    const input = form.elements.namedItem(key) as HTMLInputElement | null;
    if (input) input.value = String(value);
  }
}
