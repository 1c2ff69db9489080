import { SeqGate, api } from "../api";
import type { OltpMetric, WindowAveragesResponse } from "../api";
import { renderAverageBars } from "../charts/bars";
import { renderLineChart } from "../charts/line";
import { runColor } from "../colors";
import { clear, h } from "../dom";
import { METRIC_LABELS, fmtNumber } from "../format";
import type { Store } from "../state";

const gate = new SeqGate();

function metricField(averages: WindowAveragesResponse, metric: OltpMetric): number {
  switch (metric) {
    case "tps":
      return averages.tpsAvg;
    case "qps":
      return averages.qpsAvg;
    case "latency":
      return averages.latencyAvg;
  }
}

// Every number below is displayed verbatim from an API response: the card and
// the bar chart show the /average payload, the line chart the /timeseries one.
export async function renderOltpView(host: HTMLElement, store: Store): Promise<void> {
  const state = store.get();
  const token = gate.next();
  const runs = state.runs.filter(
    (r) => r.kind === "sysbench" && state.activeRunIds.includes(r.id),
  );

  const container = h("div", {});
  const selector = h("select", { "data-role": "metric-select" });
  for (const metric of ["tps", "qps", "latency"] as OltpMetric[]) {
    const opt = h("option", { value: metric }, METRIC_LABELS[metric]);
    if (metric === state.oltpMetric) opt.setAttribute("selected", "");
    selector.append(opt);
  }
  selector.addEventListener("change", () => {
    store.update({ oltpMetric: (selector as HTMLSelectElement).value as OltpMetric });
  });
  container.append(
    h("div", { class: "controls" }, h("label", {}, "Metric:"), selector),
  );

  if (!runs.length) {
    container.append(h("div", { class: "empty-note" }, "Upload a sysbench run to see its time series."));
    clear(host);
    host.append(container);
    return;
  }

  const results = await Promise.all(
    runs.map(async (run) => ({
      run,
      series: await api.timeseries(run.id, state.oltpMetric),
      averages: await api.averages(run.id, state.brushWindow ?? undefined),
    })),
  );
  if (!gate.isCurrent(token)) return; // a newer render superseded this one

  const cards = h("div", { class: "cards" });
  const barEntries = results.map(({ run, averages }) => {
    const value = metricField(averages, state.oltpMetric);
    cards.append(
      h(
        "div",
        { class: "card", "data-run-id": run.id },
        h("div", { class: "label" }, `${run.name} — avg ${METRIC_LABELS[state.oltpMetric]}`),
        h("div", { class: "value", "data-role": "avg-value" }, fmtNumber(value)),
        h(
          "div",
          { class: "window-note" },
          state.brushWindow
            ? `window ${fmtNumber(averages.window[0])}–${fmtNumber(averages.window[1])}s, ${averages.sampleCount} samples`
            : `full run, ${averages.sampleCount} samples`,
        ),
      ),
    );
    return {
      label: run.name,
      value,
      color: runColor(state.runs.filter((r) => r.kind === "sysbench").indexOf(run)),
      tooltip:
        `${run.name}\nTPS: ${fmtNumber(averages.tpsAvg)}\n` +
        `QPS: ${fmtNumber(averages.qpsAvg)}\nLatency: ${fmtNumber(averages.latencyAvg)} ms`,
    };
  });
  container.append(cards);

  for (const { run, series } of results) {
    const block = h("div", { class: "chart-block", "data-run-id": run.id });
    block.append(h("div", { class: "chart-title" }, `${run.name} — ${METRIC_LABELS[state.oltpMetric]}`));
    block.append(
      renderLineChart(series.points, {
        color: runColor(state.runs.filter((r) => r.kind === "sysbench").indexOf(run)),
        onBrush: (win) => store.update({ brushWindow: win }),
      }),
    );
    container.append(block);
  }

  const barsBlock = h("div", { class: "chart-block" });
  barsBlock.append(h("div", { class: "chart-title" }, `Average ${METRIC_LABELS[state.oltpMetric]} comparison`));
  barsBlock.append(renderAverageBars(barEntries));
  container.append(barsBlock);

  clear(host);
  host.append(container);
}
