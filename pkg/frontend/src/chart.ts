/** SVG rendering of the labeled solution path.
 *
 * One polyline per coefficient against the penalty (log scale, largest
 * penalty on the left), the FSR label curve on a [0, 1] overlay axis,
 * dashed vertical markers at each target's selected penalty, a hover
 * crosshair, and click-to-pin markers.
 */

import { PathDocument, PathView, alphaLines, clampIndex } from "./types.js";
import { Scale, decadeTicks, linearTicks, logScale, linearScale, nearestIndex, polylinePoints } from "./scale.js";
import { formatFsr, formatLambda } from "./format.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const MARGIN = { top: 24, right: 58, bottom: 44, left: 64 };
const WIDTH = 860;
const HEIGHT = 440;

const SERIES_COLORS = [
  "#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#3ca951",
  "#ff8ab7", "#a463f2", "#97bbf5", "#9c6b4e", "#9498a0",
];

export interface ChartCallbacks {
  onHover(index: number): void;
  onTogglePin(index: number): void;
}

function el(tag: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

export class PathChart {
  private readonly doc: PathDocument;
  private readonly callbacks: ChartCallbacks;
  private readonly xScale: Scale;
  private readonly yScale: Scale;
  private readonly fsrScale: Scale;
  private svg: SVGSVGElement;
  private hoverLine: SVGElement;
  private pinsGroup: SVGElement;

  constructor(container: HTMLElement, doc: PathDocument, callbacks: ChartCallbacks) {
    this.doc = doc;
    this.callbacks = callbacks;
    const lambdas = doc.lambdas;
    this.xScale = logScale(
      [lambdas[0], lambdas[lambdas.length - 1]],
      [MARGIN.left, WIDTH - MARGIN.right],
    );
    let lo = 0;
    let hi = 0;
    for (const row of doc.coefficients) {
      for (const v of row) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
    const pad = 0.05 * (hi - lo || 1);
    this.yScale = linearScale([lo - pad, hi + pad], [HEIGHT - MARGIN.bottom, MARGIN.top]);
    this.fsrScale = linearScale([0, 1], [HEIGHT - MARGIN.bottom, MARGIN.top]);

    this.svg = el("svg", {
      viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
      width: "100%",
      role: "img",
    }) as SVGSVGElement;
    this.hoverLine = el("line", { class: "hover-line", y1: MARGIN.top, y2: HEIGHT - MARGIN.bottom });
    this.pinsGroup = el("g", { class: "pins" });
    container.replaceChildren(this.svg);
    this.render();
    this.attachEvents();
  }

  private render(): void {
    this.drawAxes();
    this.drawCoefficientLines();
    this.drawFsrOverlay();
    this.drawAlphaMarkers();
    this.svg.appendChild(this.pinsGroup);
    this.hoverLine.setAttribute("visibility", "hidden");
    this.svg.appendChild(this.hoverLine);
  }

  private drawAxes(): void {
    const bottom = HEIGHT - MARGIN.bottom;
    const axes = el("g", { class: "axes" });
    axes.appendChild(el("line", {
      x1: MARGIN.left, x2: WIDTH - MARGIN.right, y1: bottom, y2: bottom, class: "axis-line",
    }));
    for (const tick of decadeTicks(this.xScale.domain)) {
      const x = this.xScale(tick);
      axes.appendChild(el("line", { x1: x, x2: x, y1: bottom, y2: bottom + 5, class: "axis-line" }));
      const label = el("text", { x, y: bottom + 18, class: "tick-label", "text-anchor": "middle" });
      label.textContent = formatLambda(tick);
      axes.appendChild(label);
    }
    const xTitle = el("text", {
      x: (MARGIN.left + WIDTH - MARGIN.right) / 2, y: HEIGHT - 8,
      class: "axis-title", "text-anchor": "middle",
    });
    xTitle.textContent = "penalty λ (log scale)";
    axes.appendChild(xTitle);

    axes.appendChild(el("line", {
      x1: MARGIN.left, x2: MARGIN.left, y1: MARGIN.top, y2: bottom, class: "axis-line",
    }));
    for (const tick of linearTicks(this.yScale.domain, 5)) {
      const y = this.yScale(tick);
      axes.appendChild(el("line", { x1: MARGIN.left - 5, x2: MARGIN.left, y1: y, y2: y, class: "axis-line" }));
      const label = el("text", {
        x: MARGIN.left - 9, y: y + 3, class: "tick-label", "text-anchor": "end",
      });
      label.textContent = tick.toFixed(2);
      axes.appendChild(label);
    }
    const yTitle = el("text", {
      x: 16, y: (MARGIN.top + bottom) / 2, class: "axis-title",
      transform: `rotate(-90 16 ${(MARGIN.top + bottom) / 2})`, "text-anchor": "middle",
    });
    yTitle.textContent = "coefficient";
    axes.appendChild(yTitle);

    const right = WIDTH - MARGIN.right;
    axes.appendChild(el("line", {
      x1: right, x2: right, y1: MARGIN.top, y2: bottom, class: "axis-line",
    }));
    for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
      const y = this.fsrScale(tick);
      axes.appendChild(el("line", { x1: right, x2: right + 5, y1: y, y2: y, class: "axis-line" }));
      const label = el("text", { x: right + 9, y: y + 3, class: "tick-label" });
      label.textContent = formatFsr(tick);
      axes.appendChild(label);
    }
    const fsrTitle = el("text", {
      x: WIDTH - 12, y: (MARGIN.top + bottom) / 2, class: "axis-title fsr-title",
      transform: `rotate(90 ${WIDTH - 12} ${(MARGIN.top + bottom) / 2})`, "text-anchor": "middle",
    });
    fsrTitle.textContent = "estimated FSR";
    axes.appendChild(fsrTitle);
    this.svg.appendChild(axes);
  }

  private drawCoefficientLines(): void {
    const doc = this.doc;
    const group = el("g", { class: "coef-lines" });
    const p = doc.metadata.column_names.length;
    for (let j = 0; j < p; j++) {
      const ys = doc.coefficients.map((row) => row[j]);
      const line = el("polyline", {
        points: polylinePoints(doc.lambdas, ys, this.xScale, this.yScale),
        class: "coef-line",
        stroke: SERIES_COLORS[j % SERIES_COLORS.length],
        fill: "none",
      });
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = doc.metadata.column_names[j];
      line.appendChild(title);
      group.appendChild(line);
    }
    this.svg.appendChild(group);
  }

  private drawFsrOverlay(): void {
    const line = el("polyline", {
      points: polylinePoints(this.doc.lambdas, this.doc.fsr.mean, this.xScale, this.fsrScale),
      class: "fsr-line",
      fill: "none",
    });
    this.svg.appendChild(line);
  }

  private drawAlphaMarkers(): void {
    const group = el("g", { class: "alpha-markers" });
    for (const mark of alphaLines(this.doc)) {
      const x = this.xScale(mark.lambda);
      group.appendChild(el("line", {
        x1: x, x2: x, y1: MARGIN.top, y2: HEIGHT - MARGIN.bottom, class: "alpha-line",
      }));
      const label = el("text", { x, y: MARGIN.top - 8, class: "alpha-label", "text-anchor": "middle" });
      label.textContent = `α=${mark.alpha}`;
      group.appendChild(label);
    }
    this.svg.appendChild(group);
  }

  private attachEvents(): void {
    this.svg.addEventListener("mousemove", (event) => {
      const index = this.indexAt(event);
      this.setHover(index);
      this.callbacks.onHover(index);
    });
    this.svg.addEventListener("mouseleave", () => {
      this.hoverLine.setAttribute("visibility", "hidden");
    });
    this.svg.addEventListener("click", (event) => {
      this.callbacks.onTogglePin(this.indexAt(event));
    });
  }

  private indexAt(event: MouseEvent): number {
    const rect = this.svg.getBoundingClientRect();
    const px = ((event.clientX - rect.left) / rect.width) * WIDTH;
    return clampIndex(this.doc, nearestIndex(this.doc.lambdas, this.xScale, px));
  }

  setHover(index: number): void {
    const x = this.xScale(this.doc.lambdas[index]);
    this.hoverLine.setAttribute("x1", String(x));
    this.hoverLine.setAttribute("x2", String(x));
    this.hoverLine.setAttribute("visibility", "visible");
  }

  setPins(view: PathView): void {
    this.pinsGroup.replaceChildren();
    for (const index of view.pinnedIndices) {
      const x = this.xScale(this.doc.lambdas[index]);
      this.pinsGroup.appendChild(el("line", {
        x1: x, x2: x, y1: MARGIN.top, y2: HEIGHT - MARGIN.bottom, class: "pin-line",
      }));
      const dot = el("circle", { cx: x, cy: MARGIN.top, r: 4, class: "pin-dot" });
      this.pinsGroup.appendChild(dot);
    }
  }
}
