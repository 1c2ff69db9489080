// Typed client for the benchlens v1 API. The dashboard computes no metric of
// its own: every displayed number comes from one of these response payloads.

export type RunKind = "sysbench" | "tpch";
export type OltpMetric = "tps" | "qps" | "latency";
export type PlanMetric = "cost" | "rows";
export type TerminologyStyle = "canonical" | "postgres" | "mysql" | "mariadb";

export interface RunSummary {
  id: string;
  name: string;
  kind: RunKind;
  uploadedAt: string;
  sampleCount?: number;
  queryCount?: number;
  queriesWithPlan?: number[];
}

export interface TimeseriesResponse {
  metric: OltpMetric;
  points: [number, number][];
}

export interface WindowAveragesResponse {
  tpsAvg: number;
  qpsAvg: number;
  latencyAvg: number;
  sampleCount: number;
  window: [number, number];
}

export interface ComparisonResponse {
  runs: string[];
  perQuery: Record<string, (number | null)[]>;
}

export interface HierarchyNode {
  name: string;
  opClass: string;
  dialect: string;
  attrs: {
    cost: number | null;
    selfCost: number | null;
    rows: number | null;
    relation: string | null;
    condition: string | null;
    extra: Record<string, string>;
  };
  children: HierarchyNode[];
}

export interface PlanResponse {
  tree: HierarchyNode;
  percentages: { label: string; pct: number }[] | null;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, init);
  if (resp.status === 204) return undefined as T;
  let body: unknown = null;
  try {
    body = await resp.json();
  } catch {
    /* non-JSON error body */
  }
  if (!resp.ok) {
    const err = (body as { error?: { code?: string; message?: string } } | null)?.error;
    throw new ApiError(err?.code ?? "HttpError", err?.message ?? `HTTP ${resp.status}`, resp.status);
  }
  return body as T;
}

export const api = {
  listRuns: () => request<{ runs: RunSummary[] }>("/v1/runs").then((d) => d.runs),

  uploadRun(kind: RunKind, name: string, file: File): Promise<RunSummary> {
    const form = new FormData();
    form.append("file", file);
    if (name) form.append("name", name);
    return request<RunSummary>(`/v1/runs?kind=${kind}`, { method: "POST", body: form });
  },

  renameRun: (id: string, name: string) =>
    request<RunSummary>(`/v1/runs/${id}`, {
      method: "PATCH",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ name }),
    }),

  deleteRun: (id: string) => request<void>(`/v1/runs/${id}`, { method: "DELETE" }),

  timeseries: (id: string, metric: OltpMetric) =>
    request<TimeseriesResponse>(`/v1/runs/${id}/timeseries?metric=${metric}`),

  averages: (id: string, window?: [number, number]) =>
    request<WindowAveragesResponse>(
      window
        ? `/v1/runs/${id}/average?from=${window[0]}&to=${window[1]}`
        : `/v1/runs/${id}/average`,
    ),

  comparison: (ids: string[]) =>
    request<ComparisonResponse>(`/v1/tpch/comparison?ids=${ids.join(",")}`),

  plan: (id: string, queryNo: number, terminology: TerminologyStyle, metric: PlanMetric) =>
    request<PlanResponse>(
      `/v1/runs/${id}/queries/${queryNo}/plan?terminology=${terminology}&metric=${metric}`,
    ),

  attachPlan: (id: string, queryNo: number, text: string) =>
    request<void>(`/v1/runs/${id}/queries/${queryNo}/plan`, {
      method: "POST",
      headers: { "Content-Type": "text/plain" },
      body: text,
    }),
};

// In-flight responses can arrive out of order; each consumer keeps a gate and
// drops anything that is not the latest request it issued.
export class SeqGate {
  private seq = 0;

  next(): number {
    return ++this.seq;
  }

  isCurrent(token: number): boolean {
    return token === this.seq;
  }
}
