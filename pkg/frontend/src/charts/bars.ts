import { hideTooltip, showTooltip, svgEl } from "../dom";
import { fmtMs, fmtNumber } from "../format";
import { linearBarScale, logBarScale } from "../scales";

export interface AverageBarEntry {
  label: string;
  value: number;
  color: string;
  // tooltips show all three OLTP metrics at once
  tooltip: string;
}

export function renderAverageBars(
  entries: AverageBarEntry[],
  opts: { width?: number; height?: number } = {},
): SVGSVGElement {
  const width = opts.width ?? 420;
  const height = opts.height ?? 180;
  const padBottom = 22;
  const plotH = height - padBottom - 8;
  const svg = svgEl("svg", { width, height, class: "average-bars" });
  if (!entries.length) return svg;

  const max = Math.max(...entries.map((e) => e.value), 0) || 1;
  const slot = width / entries.length;
  const barW = Math.min(64, slot * 0.6);
  entries.forEach((entry, i) => {
    const hPx = (entry.value / max) * plotH;
    const xPos = i * slot + (slot - barW) / 2;
    const bar = svgEl("rect", {
      class: "avg-bar",
      x: xPos,
      y: 8 + plotH - hPx,
      width: barW,
      height: hPx,
      fill: entry.color,
      rx: 2,
    });
    bar.addEventListener("mousemove", (ev) => showTooltip(ev as MouseEvent, entry.tooltip));
    bar.addEventListener("mouseleave", hideTooltip);
    svg.append(
      bar,
      svgEl("text", { x: i * slot + slot / 2, y: height - 8, "text-anchor": "middle", "font-size": 11, fill: "#5d6b7d" }, entry.label),
      svgEl("text", { x: i * slot + slot / 2, y: 8 + plotH - hPx - 4, "text-anchor": "middle", "font-size": 10, fill: "#1d2733" }, fmtNumber(entry.value)),
    );
  });
  return svg;
}

export interface GroupedBarsOptions {
  width?: number;
  height?: number;
  logScale: boolean;
  runColors: string[];
  onSelect?: (queryNo: number) => void;
  selectedQuery?: number | null;
}

export function renderGroupedBars(
  runs: string[],
  perQuery: Record<string, (number | null)[]>,
  opts: GroupedBarsOptions,
): SVGSVGElement {
  const width = opts.width ?? 1100;
  const height = opts.height ?? 260;
  const padBottom = 24;
  const plotH = height - padBottom - 6;
  const svg = svgEl("svg", { width, height, class: "grouped-bars" });
  const queryNos = Object.keys(perQuery)
    .map(Number)
    .sort((a, b) => a - b);
  if (!queryNos.length) return svg;

  const durations = queryNos.flatMap((q) => perQuery[String(q)]).filter((d): d is number => d !== null);
  const scale = opts.logScale
    ? logBarScale(durations, plotH)
    : linearBarScale(Math.max(...durations, 0), plotH);

  const groupW = width / queryNos.length;
  const barW = Math.max(2, Math.min(18, (groupW * 0.8) / runs.length));

  queryNos.forEach((q, gi) => {
    const row = perQuery[String(q)];
    const x0 = gi * groupW + (groupW - barW * runs.length) / 2;
    row.forEach((duration, ri) => {
      if (duration === null) return; // absent duration renders as a gap, never zero
      const hPx = scale.height(duration);
      const bar = svgEl("rect", {
        class: "group-bar",
        "data-query": q,
        "data-run": runs[ri],
        x: x0 + ri * barW,
        y: 6 + plotH - hPx,
        width: barW,
        height: hPx,
        fill: opts.runColors[ri],
        opacity: opts.selectedQuery === q ? 1 : 0.85,
        cursor: "pointer",
      });
      const floorNote = opts.logScale && scale.atFloor(duration) && duration === 0 ? "\n(zero duration, drawn at floor)" : "";
      bar.addEventListener("mousemove", (ev) =>
        showTooltip(ev as MouseEvent, `${runs[ri]}\nQ${q}\n${fmtMs(duration)}${floorNote}`),
      );
      bar.addEventListener("mouseleave", hideTooltip);
      bar.addEventListener("click", () => opts.onSelect?.(q));
      svg.append(bar);
    });
    svg.append(
      svgEl("text", { x: gi * groupW + groupW / 2, y: height - 8, "text-anchor": "middle", "font-size": 10, fill: "#5d6b7d" }, `Q${q}`),
    );
  });
  return svg;
}

// one horizontal stacked bar; segment widths are exact fractions of the chart
// width so they add back up to it
export function renderStackedPercent(
  percentages: { label: string; pct: number }[],
  colorFor: (label: string) => string,
  opts: { width?: number; height?: number } = {},
): SVGSVGElement {
  const width = opts.width ?? 860;
  const height = opts.height ?? 42;
  const barH = 22;
  const svg = svgEl("svg", { width, height, class: "stacked-percent" });
  let cursor = 0;
  for (const { label, pct } of percentages) {
    const segW = (pct / 100) * width;
    const seg = svgEl("rect", {
      class: "stacked-segment",
      "data-label": label,
      x: cursor,
      y: 6,
      width: segW,
      height: barH,
      fill: colorFor(label),
    });
    seg.addEventListener("mousemove", (ev) => showTooltip(ev as MouseEvent, `${label}: ${pct.toFixed(2)}%`));
    seg.addEventListener("mouseleave", hideTooltip);
    svg.append(seg);
    if (segW > 60) {
      svg.append(
        svgEl(
          "text",
          { x: cursor + segW / 2, y: 6 + barH / 2 + 3, "text-anchor": "middle", "font-size": 10, fill: "#fff" },
          `${label} ${pct.toFixed(1)}%`,
        ),
      );
    }
    cursor += segW;
  }
  return svg;
}
