// Fixed palettes: run colors are assigned by position (stable while the run
// list is stable); operator colors are keyed by opClass so two trees shown
// side by side always agree.

const RUN_PALETTE = [
  "#2563eb",
  "#dc2626",
  "#16a34a",
  "#d97706",
  "#7c3aed",
  "#0891b2",
  "#db2777",
  "#65a30d",
];

export function runColor(index: number): string {
  return RUN_PALETTE[index % RUN_PALETTE.length];
}

const OP_CLASS_COLORS: Record<string, string> = {
  FullScan: "#dc2626",
  IndexScan: "#2563eb",
  IndexLookup: "#0891b2",
  Sort: "#d97706",
  Aggregate: "#7c3aed",
  NestedLoopJoin: "#16a34a",
  HashJoin: "#15803d",
  MergeJoin: "#4d7c0f",
  Materialize: "#db2777",
  Limit: "#64748b",
  Distinct: "#9333ea",
  Gather: "#ca8a04",
  SubqueryScan: "#0d9488",
  Other: "#6b7280",
};

export function opClassColor(opClass: string): string {
  return OP_CLASS_COLORS[opClass] ?? OP_CLASS_COLORS.Other;
}
