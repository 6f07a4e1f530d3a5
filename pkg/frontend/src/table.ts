// Concept table: column sorting done client-side over the fetched rows.

import { ConceptRow } from "./model.js";

export type SortColumn = "label" | "kind" | "frequency" | "family_attendance";

export interface TableSort {
  column: SortColumn;
  descending: boolean;
}

export function sortRows(rows: ConceptRow[], sort: TableSort): ConceptRow[] {
  const out = [...rows];
  out.sort((a, b) => {
    const va = a[sort.column];
    const vb = b[sort.column];
    let cmp: number;
    if (typeof va === "number" && typeof vb === "number") {
      cmp = va - vb;
    } else {
      cmp = String(va).localeCompare(String(vb));
    }
    if (cmp !== 0) return sort.descending ? -cmp : cmp;
    return a.id.localeCompare(b.id); // stable tie-break, never flipped
  });
  return out;
}

/** Toggle semantics for clicking a header: same column flips direction,
 * a new column starts ascending for text and descending for numbers. */
export function nextSort(current: TableSort, clicked: SortColumn): TableSort {
  if (current.column === clicked) {
    return { column: clicked, descending: !current.descending };
  }
  return { column: clicked, descending: clicked === "frequency" || clicked === "family_attendance" };
}

const COLUMNS: Array<{ key: SortColumn; title: string }> = [
  { key: "label", title: "Concept" },
  { key: "kind", title: "Kind" },
  { key: "frequency", title: "Frequency" },
  { key: "family_attendance", title: "Families" },
];

export function renderTable(
  container: HTMLElement,
  rows: ConceptRow[],
  sort: TableSort,
  onSort: (column: SortColumn) => void,
  onPick: (id: string) => void,
): void {
  container.textContent = "";
  const table = document.createElement("table");
  const thead = document.createElement("thead");
  const headRow = document.createElement("tr");
  for (const col of COLUMNS) {
    const th = document.createElement("th");
    th.textContent = col.title + (sort.column === col.key ? (sort.descending ? " ▼" : " ▲") : "");
    th.addEventListener("click", () => onSort(col.key));
    headRow.appendChild(th);
  }
  const thRel = document.createElement("th");
  thRel.textContent = "Relationships";
  headRow.appendChild(thRel);
  thead.appendChild(headRow);
  table.appendChild(thead);

  const tbody = document.createElement("tbody");
  for (const row of sortRows(rows, sort)) {
    const tr = document.createElement("tr");
    const tdLabel = document.createElement("td");
    const link = document.createElement("a");
    link.href = "#";
    link.textContent = row.label;
    link.addEventListener("click", (ev) => {
      ev.preventDefault();
      onPick(row.id);
    });
    tdLabel.appendChild(link);
    tr.appendChild(tdLabel);
    for (const text of [row.kind, String(row.frequency), String(row.family_attendance)]) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    const tdRel = document.createElement("td");
    tdRel.textContent = Object.entries(row.relationship_counts)
      .map(([k, v]) => `${k}: ${v}`)
      .join(", ");
    tr.appendChild(tdRel);
    tbody.appendChild(tr);
  }
  table.appendChild(tbody);
  container.appendChild(table);
}
