// Entry point: wires the pure view modules to the DOM.  All data comes
// from the HTTP API; nothing is computed locally beyond layout/sorting.

import { ApiClient } from "./api.js";
import { layoutCloud, renderCloud } from "./cloud.js";
import { renderGraph } from "./graph.js";
import { EDGE_KINDS, EdgeKind } from "./model.js";
import { applyParams, fillForm, readForm } from "./params.js";
import { initialState, Tab, toggleKind, ViewState } from "./state.js";
import { nextSort, renderTable, SortColumn } from "./table.js";

const client = new ApiClient("");
const state: ViewState = initialState();

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function setMessage(text: string, isError = false): void {
  const box = el("message");
  box.textContent = text;
  box.className = isError ? "message error" : "message";
}

async function refreshCloud(): Promise<void> {
  const terms = await client.terms();
  renderCloud(el("cloud"), layoutCloud(terms), (term) => {
    state.conceptQuery = term;
    (el("concept-query") as HTMLInputElement).value = term;
    showTab("table");
  });
}

async function refreshTable(): Promise<void> {
  const rows = await client.concepts(state.conceptQuery ? { q: state.conceptQuery } : {});
  renderTable(
    el("table-view"),
    rows,
    state.tableSort,
    (column: SortColumn) => {
      state.tableSort = nextSort(state.tableSort, column);
      void refreshTable();
    },
    (id) => {
      state.focus = id;
      showTab("graph");
    },
  );
}

async function refreshGraph(): Promise<void> {
  const doc = await client.graph({ focus: state.focus, depth: state.depth });
  const result = renderGraph(el("graph-view"), doc, state.enabledKinds, state.layout, (id) => {
    state.focus = id;
    void refreshGraph();
  }, state.focus);
  el("graph-counts").textContent = result.capped
    ? ""
    : `${result.drawnNodeIds.length} nodes, ${result.drawnEdges.length} edges shown`;
}

function showTab(tab: Tab): void {
  state.tab = tab;
  for (const name of ["cloud", "table", "graph"] as const) {
    el(`panel-${name}`).hidden = name !== tab;
    el(`tab-${name}`).classList.toggle("active", name === tab);
  }
  if (tab === "cloud") void refreshCloud();
  if (tab === "table") void refreshTable();
  if (tab === "graph") void refreshGraph();
}

function wireGraphControls(): void {
  const kindBox = el("kind-toggles");
  for (const kind of EDGE_KINDS) {
    const label = document.createElement("label");
    const input = document.createElement("input");
    input.type = "checkbox";
    input.checked = true;
    input.addEventListener("change", () => {
      toggleKind(state, kind as EdgeKind);
      void refreshGraph();
    });
    label.appendChild(input);
    label.appendChild(document.createTextNode(kind));
    kindBox.appendChild(label);
  }
  (el("layout-select") as HTMLSelectElement).addEventListener("change", (ev) => {
    state.layout = (ev.target as HTMLSelectElement).value as ViewState["layout"];
    void refreshGraph();
  });
  (el("depth-input") as HTMLInputElement).addEventListener("change", (ev) => {
    state.depth = Number((ev.target as HTMLInputElement).value) || 1;
    void refreshGraph();
  });
  el("clear-focus").addEventListener("click", () => {
    state.focus = undefined;
    void refreshGraph();
  });
}

function wireParamsForm(): void {
  const form = el("params-form") as HTMLFormElement;
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    void (async () => {
      setMessage("Rebuilding…");
      const result = await applyParams(client, readForm(form));
      if (!result.ok) {
        setMessage(Object.entries(result.errors).map(([k, v]) => `${k}: ${v}`).join("; "), true);
        return;
      }
      setMessage(`Rebuilt: ${result.nodeCount} concepts, ${result.edgeCount} relationships.`);
      if (result.params) fillForm(form, result.params);
      showTab(state.tab);
    })();
  });
}

async function boot(): Promise<void> {
  el("tab-cloud").addEventListener("click", () => showTab("cloud"));
  el("tab-table").addEventListener("click", () => showTab("table"));
  el("tab-graph").addEventListener("click", () => showTab("graph"));
  (el("concept-query") as HTMLInputElement).addEventListener("input", (ev) => {
    state.conceptQuery = (ev.target as HTMLInputElement).value;
    void refreshTable();
  });
  wireGraphControls();
  wireParamsForm();
  fillForm(el("params-form") as HTMLFormElement, await client.getParams());
  showTab("cloud");
}

void boot().catch((exc) => setMessage(String(exc), true));
