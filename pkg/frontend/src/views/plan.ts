import { ApiError, api } from "../api";
import type { PlanMetric, PlanResponse, RunSummary, TerminologyStyle } from "../api";
import { renderStackedPercent } from "../charts/bars";
import { opClassColor } from "../colors";
import { clear, h } from "../dom";
import type { Store } from "../state";
import { renderPlanTree } from "../tree";

// collapse state survives re-renders within a session: run id + query + node path
const collapsedByPlan = new Map<string, Set<string>>();

function collapsedSet(key: string): Set<string> {
  let set = collapsedByPlan.get(key);
  if (!set) {
    set = new Set();
    collapsedByPlan.set(key, set);
  }
  return set;
}

// label -> color for the stacked chart: Other nodes keep their raw label, so
// fall back to a neutral color when the label is not a canonical class name
function labelColor(plan: PlanResponse): (label: string) => string {
  const byLabel = new Map<string, string>();
  const walk = (node: PlanResponse["tree"]) => {
    byLabel.set(node.name, opClassColor(node.opClass));
    node.children.forEach(walk);
  };
  walk(plan.tree);
  return (label) => byLabel.get(label) ?? opClassColor("Other");
}

export async function renderPlanView(
  host: HTMLElement,
  store: Store,
  runs: RunSummary[],
  queryNo: number,
): Promise<void> {
  const state = store.get();
  clear(host);
  host.append(h("h2", {}, `Query plans — Q${queryNo}`));

  const termSelect = h("select", { "data-role": "terminology-select" });
  for (const term of ["canonical", "postgres", "mysql", "mariadb"] as TerminologyStyle[]) {
    const opt = h("option", { value: term }, term);
    if (term === state.terminology) opt.setAttribute("selected", "");
    termSelect.append(opt);
  }
  // terminology changes refetch: display names are rendered server-side
  termSelect.addEventListener("change", () => {
    store.update({ terminology: (termSelect as HTMLSelectElement).value as TerminologyStyle });
  });

  const metricSelect = h("select", { "data-role": "plan-metric-select" });
  for (const metric of ["cost", "rows"] as PlanMetric[]) {
    const opt = h("option", { value: metric }, metric);
    if (metric === state.planMetric) opt.setAttribute("selected", "");
    metricSelect.append(opt);
  }
  metricSelect.addEventListener("change", () => {
    store.update({ planMetric: (metricSelect as HTMLSelectElement).value as PlanMetric });
  });

  const stackedToggle = h(
    "button",
    { class: "ghost", type: "button", "data-role": "stacked-toggle" },
    state.stackedVisible ? "Hide metric percentage" : "Show metric percentage",
  );
  stackedToggle.addEventListener("click", () =>
    store.update({ stackedVisible: !store.get().stackedVisible }),
  );

  host.append(
    h(
      "div",
      { class: "controls" },
      h("label", {}, "Terminology:"),
      termSelect,
      h("label", {}, "Metric:"),
      metricSelect,
      stackedToggle,
    ),
  );

  for (const run of runs) {
    const section = h("div", { class: "chart-block", "data-role": "plan-section", "data-run-id": run.id });
    section.append(h("div", { class: "chart-title" }, run.name));
    try {
      const plan = await api.plan(run.id, queryNo, state.terminology, state.planMetric);
      const key = `${run.id}:${queryNo}`;
      const collapsed = collapsedSet(key);
      const treeHost = h("div", { "data-role": "tree-host" });

      const draw = () => {
        clear(treeHost);
        treeHost.append(
          renderPlanTree(plan.tree, {
            metric: store.get().planMetric,
            collapsed,
            onToggle: (id) => {
              if (collapsed.has(id)) collapsed.delete(id);
              else collapsed.add(id);
              draw(); // collapse/expand is purely client-side
            },
          }),
        );
      };
      draw();
      section.append(treeHost);

      if (state.stackedVisible) {
        const stacked = h("div", { "data-role": "stacked-host" });
        if (plan.percentages === null) {
          stacked.append(
            h("div", { class: "empty-note" }, `${state.planMetric} is unavailable for this plan (no values in the capture)`),
          );
        } else {
          stacked.append(renderStackedPercent(plan.percentages, labelColor(plan)));
        }
        section.append(stacked);
      }
    } catch (err) {
      const message =
        err instanceof ApiError && err.code === "NoPlanAttached"
          ? "No EXPLAIN capture attached for this query."
          : err instanceof Error
            ? err.message
            : String(err);
      section.append(h("div", { class: "empty-note" }, message));
    }
    host.append(section);
  }
}
