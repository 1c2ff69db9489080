// One formatting rule for every number the dashboard renders, so tests can
// assert exact strings against API payload fields.

export function fmtNumber(value: number): string {
  if (!Number.isFinite(value)) return "–";
  if (Number.isInteger(value)) return String(value);
  const abs = Math.abs(value);
  if (abs >= 1000) return value.toFixed(0);
  if (abs >= 10) return value.toFixed(2).replace(/\.?0+$/, "");
  return value.toFixed(3).replace(/\.?0+$/, "");
}

export function fmtMs(value: number): string {
  return `${fmtNumber(value)} ms`;
}

export const METRIC_LABELS: Record<string, string> = {
  tps: "TPS",
  qps: "QPS",
  latency: "Latency (ms)",
  cost: "Cost",
  rows: "Rows",
};
