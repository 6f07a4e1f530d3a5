// View state shared across the three tabs.

import { EDGE_KINDS, EdgeKind } from "./model.js";
import { LayoutName } from "./graph.js";
import { TableSort } from "./table.js";

export type Tab = "cloud" | "table" | "graph";

export interface ViewState {
  tab: Tab;
  enabledKinds: Set<EdgeKind>;
  layout: LayoutName;
  focus?: string;
  depth: number;
  tableSort: TableSort;
  conceptQuery: string;
}

export function initialState(): ViewState {
  return {
    tab: "cloud",
    enabledKinds: new Set<EdgeKind>(EDGE_KINDS),
    layout: "force",
    depth: 2,
    tableSort: { column: "frequency", descending: true },
    conceptQuery: "",
  };
}

export function toggleKind(state: ViewState, kind: EdgeKind): void {
  if (state.enabledKinds.has(kind)) {
    state.enabledKinds.delete(kind);
  } else {
    state.enabledKinds.add(kind);
  }
}
