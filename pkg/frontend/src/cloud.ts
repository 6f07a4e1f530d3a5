// Tag-cloud sizing: map term frequency onto a font-size scale.
// Pure functions so the sizing contract is testable without a DOM.

import { TermRow } from "./model.js";

export interface CloudItem {
  term: string;
  frequency: number;
  family_attendance: number;
  fontSizePx: number;
}

export const MIN_FONT_PX = 11;
export const MAX_FONT_PX = 34;

/** Linear interpolation between MIN_FONT_PX and MAX_FONT_PX over the
 * frequency range of the given terms.  Font size is monotone
 * non-decreasing in frequency; a uniform cloud renders mid-scale. */
export function layoutCloud(terms: TermRow[]): CloudItem[] {
  if (terms.length === 0) return [];
  const freqs = terms.map((t) => t.frequency);
  const lo = Math.min(...freqs);
  const hi = Math.max(...freqs);
  const span = hi - lo;
  return terms.map((t) => {
    const ratio = span === 0 ? 0.5 : (t.frequency - lo) / span;
    return {
      term: t.term,
      frequency: t.frequency,
      family_attendance: t.family_attendance,
      fontSizePx: Math.round(MIN_FONT_PX + ratio * (MAX_FONT_PX - MIN_FONT_PX)),
    };
  });
}

export function renderCloud(container: HTMLElement, items: CloudItem[], onPick: (term: string) => void): void {
  container.textContent = "";
  if (items.length === 0) {
    const p = document.createElement("p");
    p.className = "empty";
    p.textContent = "No terms in the knowledge base yet.";
    container.appendChild(p);
    return;
  }
  for (const item of items) {
    const span = document.createElement("span");
    span.className = "cloud-term";
    span.textContent = item.term;
    span.style.fontSize = `${item.fontSizePx}px`;
    span.title = `frequency ${item.frequency}, in ${item.family_attendance} families`;
    span.addEventListener("click", () => onPick(item.term));
    container.appendChild(span);
    container.appendChild(document.createTextNode(" "));
  }
}
