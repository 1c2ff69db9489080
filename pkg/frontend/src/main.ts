import type { RunKind } from "./api";
import { clear, h } from "./dom";
import { Store } from "./state";
import { reloadRuns, renderFileManager } from "./views/files";
import { renderOlapView } from "./views/olap";
import { renderOltpView } from "./views/oltp";

export function mountApp(root: HTMLElement): Store {
  const store = new Store();

  const sidebar = h("div", { class: "sidebar" });
  const main = h("div", { class: "main" });
  const benchPanel = h("div", { class: "panel" });
  main.append(benchPanel);
  root.append(sidebar, main);

  const render = () => {
    const state = store.get();

    clear(sidebar);
    sidebar.append(h("h1", {}, "benchlens"));
    const tabs = h("div", { class: "tabs" });
    for (const kind of ["sysbench", "tpch"] as RunKind[]) {
      const button = h(
        "button",
        { class: state.benchmark === kind ? "active" : "", "data-benchmark": kind },
        kind === "sysbench" ? "sysbench (OLTP)" : "TPC-H (OLAP)",
      );
      button.addEventListener("click", () => {
        const visible = store
          .get()
          .runs.filter((r) => r.kind === kind)
          .map((r) => r.id);
        store.update({
          benchmark: kind,
          activeRunIds: visible,
          brushWindow: null,
          selectedQuery: null,
        });
      });
      tabs.append(button);
    }
    sidebar.append(tabs);
    const filesHost = h("div", {});
    sidebar.append(filesHost);
    renderFileManager(filesHost, store);

    if (state.benchmark === "sysbench") {
      void renderOltpView(benchPanel, store);
    } else {
      void renderOlapView(benchPanel, store);
    }
  };

  store.subscribe(render);
  render();
  void reloadRuns(store);
  return store;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app")!);
}
