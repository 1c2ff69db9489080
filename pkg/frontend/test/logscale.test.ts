// Log-scale toggle: durations spanning three orders of magnitude must all
// stay visible (>= 1px bars) once the log scale is on.
import { describe, expect, it } from "vitest";

import { renderGroupedBars } from "../src/charts/bars";

const RUNS = ["pg", "maria"];
const PER_QUERY: Record<string, (number | null)[]> = {
  "1": [10, 12],
  "2": [10000, 9000],
  "3": [500, null], // absent duration renders as a gap, not a zero bar
  "4": [0, 4000], // zero duration draws at the floor
};

function barHeights(svg: SVGSVGElement): number[] {
  return Array.from(svg.querySelectorAll("rect.group-bar")).map((r) =>
    Number(r.getAttribute("height")),
  );
}

describe("grouped duration chart", () => {
  it("linear scale squashes small bars below 1px", () => {
    const svg = renderGroupedBars(RUNS, PER_QUERY, {
      logScale: false,
      runColors: ["#111", "#222"],
    });
    const heights = barHeights(svg);
    expect(Math.min(...heights)).toBeLessThan(1);
  });

  it("log scale keeps every bar at >= 1px across 3 orders of magnitude", () => {
    const svg = renderGroupedBars(RUNS, PER_QUERY, {
      logScale: true,
      runColors: ["#111", "#222"],
    });
    const heights = barHeights(svg);
    expect(heights.length).toBe(7); // 8 slots, one absent
    expect(Math.min(...heights)).toBeGreaterThanOrEqual(1);
  });

  it("absent durations render no bar at all", () => {
    const svg = renderGroupedBars(RUNS, PER_QUERY, {
      logScale: true,
      runColors: ["#111", "#222"],
    });
    const q3bars = svg.querySelectorAll('rect.group-bar[data-query="3"]');
    expect(q3bars.length).toBe(1);
    expect(q3bars[0].getAttribute("data-run")).toBe("pg");
  });

  it("clicking a bar selects its query", () => {
    let selected: number | null = null;
    const svg = renderGroupedBars(RUNS, PER_QUERY, {
      logScale: false,
      runColors: ["#111", "#222"],
      onSelect: (q) => {
        selected = q;
      },
    });
    svg.querySelector('rect.group-bar[data-query="2"]')!.dispatchEvent(
      new MouseEvent("click", { bubbles: true }),
    );
    expect(selected).toBe(2);
  });

  it("log toggle is a pure re-render: same data, same bar count", () => {
    const linear = renderGroupedBars(RUNS, PER_QUERY, { logScale: false, runColors: ["#1", "#2"] });
    const log = renderGroupedBars(RUNS, PER_QUERY, { logScale: true, runColors: ["#1", "#2"] });
    expect(barHeights(linear).length).toBe(barHeights(log).length);
  });
});
