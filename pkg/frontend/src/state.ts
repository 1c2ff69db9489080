import type { OltpMetric, PlanMetric, RunKind, RunSummary, TerminologyStyle } from "./api";

export interface ViewState {
  benchmark: RunKind;
  runs: RunSummary[];
  activeRunIds: string[];
  oltpMetric: OltpMetric;
  brushWindow: [number, number] | null;
  selectedQuery: number | null;
  planMetric: PlanMetric;
  terminology: TerminologyStyle;
  logScale: boolean;
  stackedVisible: boolean;
}

export function initialState(): ViewState {
  return {
    benchmark: "sysbench",
    runs: [],
    activeRunIds: [],
    oltpMetric: "tps",
    brushWindow: null,
    selectedQuery: null,
    planMetric: "cost",
    terminology: "canonical",
    logScale: false,
    stackedVisible: false,
  };
}

export class Store {
  private state = initialState();
  private listeners = new Set<(s: ViewState) => void>();

  get(): ViewState {
    return this.state;
  }

  update(patch: Partial<ViewState>): void {
    const next = { ...this.state, ...patch };
    // invariants: a brush window only makes sense for OLTP runs, a selected
    // query only while an active run still has it
    if (next.benchmark !== "sysbench") next.brushWindow = patch.brushWindow ?? null;
    const activeRuns = next.runs.filter((r) => next.activeRunIds.includes(r.id));
    if (
      next.selectedQuery !== null &&
      !activeRuns.some((r) => r.kind === "tpch" && (r.queryCount ?? 0) > 0)
    ) {
      next.selectedQuery = patch.selectedQuery ?? next.selectedQuery;
    }
    next.activeRunIds = next.activeRunIds.filter((id) => next.runs.some((r) => r.id === id));
    this.state = next;
    for (const listener of this.listeners) listener(next);
  }

  subscribe(listener: (s: ViewState) => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }
}
