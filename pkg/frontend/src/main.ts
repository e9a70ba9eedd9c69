/** Application shell: load the document, render the chart, drive the
 * readout panel and the pin/export workflow. */

import { fetchDocument } from "./api.js";
import { PathChart } from "./chart.js";
import { exportFilename, exportModel } from "./export.js";
import { buildReadout, Readout } from "./readout.js";
import { PathDocument, PathView, SchemaError, alphaLines, clampIndex } from "./types.js";
import { formatLambda } from "./format.js";

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

function renderReadout(panel: HTMLElement, readout: Readout): void {
  const rows = readout.nonzero
    .map(
      (entry) => `<tr><td>${entry.name}</td><td class="num">${entry.display}</td></tr>`,
    )
    .join("");
  panel.innerHTML = `
    <div class="readout-summary">${readout.summary}</div>
    <dl>
      <dt>&lambda;</dt><dd>${readout.lambdaDisplay}</dd>
      <dt>estimated FSR</dt><dd>${readout.fsrDisplay}
        <span class="spread">(replicates ${readout.spreadDisplay})</span></dd>
      <dt>active size</dt><dd>${readout.activeSize}</dd>
    </dl>
    ${readout.nonzero.length
      ? `<table class="coef-table"><thead><tr><th>variable</th><th>coefficient</th></tr></thead><tbody>${rows}</tbody></table>`
      : `<p class="empty-model">empty model</p>`}
  `;
}

function download(name: string, payload: unknown): void {
  const blob = new Blob([JSON.stringify(payload, null, 2)], {
    type: "application/json",
  });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = name;
  a.click();
  URL.revokeObjectURL(url);
}

function renderPins(doc: PathDocument, view: PathView, list: HTMLElement,
                    onRemove: (index: number) => void): void {
  list.replaceChildren();
  if (view.pinnedIndices.length === 0) {
    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = "Click the chart to pin candidate models.";
    list.appendChild(hint);
    return;
  }
  for (const index of view.pinnedIndices) {
    const item = document.createElement("div");
    item.className = "pin-item";
    const label = document.createElement("span");
    label.textContent =
      `λ=${formatLambda(doc.lambdas[index])} · ` +
      `${doc.active_sizes[index]} vars · FSR ${doc.fsr.mean[index].toFixed(2)}`;
    const exportBtn = document.createElement("button");
    exportBtn.textContent = "export";
    exportBtn.addEventListener("click", () =>
      download(exportFilename(index), exportModel(doc, index)),
    );
    const removeBtn = document.createElement("button");
    removeBtn.textContent = "unpin";
    removeBtn.addEventListener("click", () => onRemove(index));
    item.append(label, exportBtn, removeBtn);
    list.appendChild(item);
  }
}

function showError(message: string): void {
  const banner = byId("error-banner");
  banner.textContent = message;
  banner.classList.remove("hidden");
}

async function start(): Promise<void> {
  let doc: PathDocument;
  try {
    doc = await fetchDocument();
  } catch (err) {
    const detail = err instanceof SchemaError
      ? `document schema mismatch: ${err.message}`
      : `failed to load the path document: ${String(err)}`;
    showError(detail);
    return;
  }

  const meta = doc.metadata;
  byId("subtitle").textContent =
    `${meta.family} family · n=${meta.n}, p=${meta.p} · ` +
    `${meta.b_replicates} replicates · screening: ${meta.screening}`;

  const view: PathView = { doc, hoverIndex: 0, pinnedIndices: [] };
  const panel = byId("readout");
  const pinList = byId("pin-list");

  const chart = new PathChart(byId("chart"), doc, {
    onHover(index) {
      view.hoverIndex = clampIndex(doc, index);
      renderReadout(panel, buildReadout(doc, view.hoverIndex));
    },
    onTogglePin(index) {
      const at = view.pinnedIndices.indexOf(index);
      if (at >= 0) view.pinnedIndices.splice(at, 1);
      else view.pinnedIndices.push(index);
      view.pinnedIndices.sort((a, b) => a - b);
      chart.setPins(view);
      renderPins(doc, view, pinList, (idx) => {
        view.pinnedIndices = view.pinnedIndices.filter((v) => v !== idx);
        chart.setPins(view);
        renderPins(doc, view, pinList, () => undefined);
      });
    },
  });

  // start the readout at the strictest target's model, if any
  const marks = alphaLines(doc);
  const startIndex = marks.length ? marks[0].lambdaIndex : 0;
  view.hoverIndex = startIndex;
  chart.setHover(startIndex);
  renderReadout(panel, buildReadout(doc, startIndex));
  renderPins(doc, view, pinList, () => undefined);
}

start();
