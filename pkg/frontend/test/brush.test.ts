// Brush fidelity: the card must render exactly the API's window-average
// response field, not anything recomputed from the plotted points.
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import type { RunSummary, WindowAveragesResponse } from "../src/api";
import { fmtNumber } from "../src/format";
import { Store } from "../src/state";
import { renderOltpView } from "../src/views/oltp";

const RUN: RunSummary = {
  id: "run1",
  name: "mysql-8",
  kind: "sysbench",
  uploadedAt: "2026-01-01T00:00:00Z",
  sampleCount: 3,
};

// deliberately NOT the mean of any subset of the series (100/200/300):
// if the card showed a client-side computation the assertion would fail
const BRUSHED: WindowAveragesResponse = {
  tpsAvg: 123.456,
  qpsAvg: 77.7,
  latencyAvg: 9.87,
  sampleCount: 2,
  window: [1.5, 2.5],
};
const FULL: WindowAveragesResponse = {
  tpsAvg: 200,
  qpsAvg: 80,
  latencyAvg: 9,
  sampleCount: 3,
  window: [1, 3],
};

const averageCalls: string[] = [];

function jsonResponse(body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status: 200,
    headers: { "Content-Type": "application/json" },
  });
}

beforeEach(() => {
  averageCalls.length = 0;
  vi.stubGlobal(
    "fetch",
    vi.fn(async (input: RequestInfo | URL) => {
      const url = String(input);
      if (url.includes("/timeseries")) {
        return jsonResponse({
          metric: "tps",
          points: [
            [1, 100],
            [2, 200],
            [3, 300],
          ],
        });
      }
      if (url.includes("/average")) {
        averageCalls.push(url);
        return jsonResponse(url.includes("from=") ? BRUSHED : FULL);
      }
      throw new Error(`unexpected fetch: ${url}`);
    }),
  );
});

afterEach(() => {
  vi.unstubAllGlobals();
  document.body.innerHTML = "";
});

function mouse(el: Element, type: string, clientX: number): void {
  el.dispatchEvent(new MouseEvent(type, { clientX, clientY: 50, bubbles: true }));
}

async function flush(): Promise<void> {
  for (let i = 0; i < 6; i++) await new Promise((r) => setTimeout(r, 0));
}

function setupStore(): Store {
  const store = new Store();
  store.update({ benchmark: "sysbench", runs: [RUN], activeRunIds: [RUN.id] });
  return store;
}

describe("brush fidelity", () => {
  it("card shows exactly the API window-average field after brushing", async () => {
    const host = document.createElement("div");
    document.body.appendChild(host);
    const store = setupStore();
    store.subscribe(() => void renderOltpView(host, store));
    await renderOltpView(host, store);
    await flush();

    const card = host.querySelector('[data-role="avg-value"]');
    expect(card?.textContent).toBe(fmtNumber(FULL.tpsAvg));
    expect(card?.textContent).toBe("200");

    const overlay = host.querySelector(".brush-overlay")!;
    mouse(overlay, "mousedown", 150);
    mouse(overlay, "mousemove", 500);
    mouse(overlay, "mouseup", 500);
    await flush();

    expect(store.get().brushWindow).not.toBeNull();
    expect(averageCalls.some((u) => u.includes("from="))).toBe(true);

    const brushedCard = document.body.querySelector('[data-role="avg-value"]');
    // exact string match on the rendered value, traceable to the API field
    expect(brushedCard?.textContent).toBe(fmtNumber(BRUSHED.tpsAvg));
    expect(brushedCard?.textContent).toBe("123.46");
    const windowNote = document.body.querySelector(".window-note");
    expect(windowNote?.textContent).toContain(`${BRUSHED.sampleCount} samples`);
  });

  it("clearing the brush restores the full-span averages", async () => {
    const host = document.createElement("div");
    document.body.appendChild(host);
    const store = setupStore();
    store.subscribe(() => void renderOltpView(host, store));
    await renderOltpView(host, store);
    await flush();

    const overlay = host.querySelector(".brush-overlay")!;
    mouse(overlay, "mousedown", 150);
    mouse(overlay, "mousemove", 500);
    mouse(overlay, "mouseup", 500);
    await flush();
    expect(document.body.querySelector('[data-role="avg-value"]')?.textContent).toBe("123.46");

    const overlay2 = document.body.querySelector(".brush-overlay")!;
    mouse(overlay2, "mousedown", 300);
    mouse(overlay2, "mouseup", 301); // < 3px drag = click = clear
    await flush();

    expect(store.get().brushWindow).toBeNull();
    expect(document.body.querySelector('[data-role="avg-value"]')?.textContent).toBe(
      fmtNumber(FULL.tpsAvg),
    );
  });

  it("metric selector switches the plotted series and the card label", async () => {
    const host = document.createElement("div");
    document.body.appendChild(host);
    const store = setupStore();
    store.subscribe(() => void renderOltpView(host, store));
    await renderOltpView(host, store);
    await flush();

    const select = host.querySelector('[data-role="metric-select"]') as HTMLSelectElement;
    select.value = "latency";
    select.dispatchEvent(new Event("change"));
    await flush();

    expect(store.get().oltpMetric).toBe("latency");
    const card = document.body.querySelector('[data-role="avg-value"]');
    expect(card?.textContent).toBe(fmtNumber(FULL.latencyAvg));
  });
});
