import { svgEl } from "../dom";
import { linearScale } from "../scales";
import { fmtNumber } from "../format";

export interface LineChartOptions {
  width?: number;
  height?: number;
  color?: string;
  // called with the brushed [t0, t1] (data units) or null when cleared
  onBrush?: (window: [number, number] | null) => void;
}

export const PAD_LEFT = 48;
export const PAD_RIGHT = 12;
export const PAD_TOP = 8;
export const PAD_BOTTOM = 22;

export function pxToTime(
  px: number,
  width: number,
  tMin: number,
  tMax: number,
): number {
  const plotW = width - PAD_LEFT - PAD_RIGHT;
  const frac = Math.min(1, Math.max(0, (px - PAD_LEFT) / plotW));
  return tMin + frac * (tMax - tMin);
}

export function renderLineChart(
  points: [number, number][],
  opts: LineChartOptions = {},
): SVGSVGElement {
  const width = opts.width ?? 860;
  const height = opts.height ?? 220;
  const color = opts.color ?? "#2563eb";
  const svg = svgEl("svg", { width, height, class: "line-chart" });
  if (points.length === 0) return svg;

  const tMin = points[0][0];
  const tMax = points[points.length - 1][0];
  const vMax = Math.max(...points.map((p) => p[1]), 0);
  const x = linearScale([tMin, tMax], [PAD_LEFT, width - PAD_RIGHT]);
  const y = linearScale([0, vMax || 1], [height - PAD_BOTTOM, PAD_TOP]);

  for (const tick of y.ticks(4)) {
    const ty = y.map(tick);
    svg.append(
      svgEl("line", { x1: PAD_LEFT, x2: width - PAD_RIGHT, y1: ty, y2: ty, class: "gridline" }),
      svgEl("text", { x: PAD_LEFT - 6, y: ty + 3, "text-anchor": "end", class: "axis-label", fill: "#5d6b7d", "font-size": 10 }, fmtNumber(tick)),
    );
  }
  for (const tick of x.ticks(Math.min(8, points.length))) {
    svg.append(
      svgEl("text", { x: x.map(tick), y: height - 6, "text-anchor": "middle", fill: "#5d6b7d", "font-size": 10 }, `${Math.round(tick)}s`),
    );
  }

  const path = points
    .map(([t, v], i) => `${i === 0 ? "M" : "L"}${x.map(t)},${y.map(v)}`)
    .join(" ");
  svg.append(svgEl("path", { d: path, fill: "none", stroke: color, "stroke-width": 1.6 }));

  const selection = svgEl("rect", {
    class: "brush-selection",
    y: PAD_TOP,
    height: height - PAD_TOP - PAD_BOTTOM,
    fill: color,
    "fill-opacity": 0.15,
    stroke: color,
    "stroke-dasharray": "3 2",
    visibility: "hidden",
  });
  svg.append(selection);

  // transparent overlay owning the brush gestures
  const overlay = svgEl("rect", {
    class: "brush-overlay",
    x: PAD_LEFT,
    y: PAD_TOP,
    width: width - PAD_LEFT - PAD_RIGHT,
    height: height - PAD_TOP - PAD_BOTTOM,
    fill: "transparent",
    cursor: "crosshair",
  });
  svg.append(overlay);

  let dragStart: number | null = null;

  const localX = (ev: MouseEvent) => ev.clientX - svg.getBoundingClientRect().left;

  overlay.addEventListener("mousedown", (ev) => {
    dragStart = localX(ev as MouseEvent);
  });
  overlay.addEventListener("mousemove", (ev) => {
    if (dragStart === null) return;
    const current = localX(ev as MouseEvent);
    const x0 = Math.min(dragStart, current);
    const x1 = Math.max(dragStart, current);
    selection.setAttribute("x", String(x0));
    selection.setAttribute("width", String(x1 - x0));
    selection.setAttribute("visibility", "visible");
  });
  overlay.addEventListener("mouseup", (ev) => {
    if (dragStart === null) return;
    const end = localX(ev as MouseEvent);
    const x0 = Math.min(dragStart, end);
    const x1 = Math.max(dragStart, end);
    dragStart = null;
    if (x1 - x0 < 3) {
      // a click clears the brush and restores the full-span averages
      selection.setAttribute("visibility", "hidden");
      opts.onBrush?.(null);
      return;
    }
    const t0 = pxToTime(x0, width, tMin, tMax);
    const t1 = pxToTime(x1, width, tMin, tMax);
    opts.onBrush?.([t0, t1]);
  });

  return svg;
}
