import { SeqGate, api } from "../api";
import { renderGroupedBars } from "../charts/bars";
import { runColor } from "../colors";
import { clear, h } from "../dom";
import { fmtMs } from "../format";
import type { Store } from "../state";
import { renderPlanView } from "./plan";

const gate = new SeqGate();

export async function renderOlapView(host: HTMLElement, store: Store): Promise<void> {
  const state = store.get();
  const token = gate.next();
  const runs = state.runs.filter((r) => r.kind === "tpch" && state.activeRunIds.includes(r.id));

  const container = h("div", {});
  if (!runs.length) {
    container.append(h("div", { class: "empty-note" }, "Upload a TPC-H run to compare query durations."));
    clear(host);
    host.append(container);
    return;
  }

  const comparison = await api.comparison(runs.map((r) => r.id));
  if (!gate.isCurrent(token)) return;

  const logToggle = h(
    "button",
    { class: "ghost", type: "button", "data-role": "log-toggle" },
    state.logScale ? "Show linear scale" : "Show log scale",
  );
  // toggling only re-renders from the data already fetched
  logToggle.addEventListener("click", () => store.update({ logScale: !store.get().logScale }));

  const legend = h("div", { class: "legend" });
  comparison.runs.forEach((name, i) => {
    legend.append(h("span", {}, h("i", { style: `background:${runColor(i)}` }), name));
  });

  container.append(
    h("div", { class: "controls" }, logToggle, legend),
    h("div", { class: "chart-title" }, "Per-query duration"),
    renderGroupedBars(comparison.runs, comparison.perQuery, {
      logScale: state.logScale,
      runColors: comparison.runs.map((_, i) => runColor(i)),
      selectedQuery: state.selectedQuery,
      onSelect: (q) => store.update({ selectedQuery: q }),
    }),
  );

  // sidebar-style selector over the union of query numbers
  const queryNos = Object.keys(comparison.perQuery).map(Number).sort((a, b) => a - b);
  const select = h("select", { "data-role": "query-select" });
  select.append(h("option", { value: "" }, "select a query…"));
  for (const q of queryNos) {
    const opt = h("option", { value: q }, `Q${q}`);
    if (state.selectedQuery === q) opt.setAttribute("selected", "");
    select.append(opt);
  }
  select.addEventListener("change", () => {
    const value = (select as HTMLSelectElement).value;
    store.update({ selectedQuery: value ? Number(value) : null });
  });
  container.append(h("div", { class: "controls" }, h("label", {}, "Selected query:"), select));

  if (state.selectedQuery !== null && queryNos.includes(state.selectedQuery)) {
    const q = state.selectedQuery;
    const detail = h("div", { class: "chart-block", "data-role": "query-detail" });
    detail.append(h("div", { class: "chart-title" }, `Q${q} durations`));
    const durations = comparison.perQuery[String(q)];
    const rows = h("div", { class: "cards" });
    comparison.runs.forEach((name, i) => {
      const d = durations[i];
      rows.append(
        h(
          "div",
          { class: "card" },
          h("div", { class: "label" }, name),
          h("div", { class: "value" }, d === null ? "not run" : fmtMs(d)),
        ),
      );
    });
    detail.append(rows);
    container.append(detail);

    const planHost = h("div", { class: "chart-block", "data-role": "plan-host" });
    container.append(planHost);
    await renderPlanView(planHost, store, runs, q);
    if (!gate.isCurrent(token)) return;
  }

  clear(host);
  host.append(container);
}
