import type { HierarchyNode, PlanMetric } from "./api";
import { opClassColor } from "./colors";
import { hideTooltip, showTooltip, svgEl } from "./dom";
import { fmtNumber } from "./format";

export interface LaidOutNode {
  id: string;
  node: HierarchyNode;
  x: number;
  y: number;
  parentId: string | null;
  hasChildren: boolean;
  collapsed: boolean;
}

// Tidy-enough layout: leaves get sequential slots, parents sit at the middle
// of their visible children. Collapsed subtrees are simply not visited.
export function layoutTree(root: HierarchyNode, collapsed: Set<string>): LaidOutNode[] {
  const out: LaidOutNode[] = [];
  let nextSlot = 0;

  function visit(node: HierarchyNode, id: string, depth: number, parentId: string | null): number {
    const isCollapsed = collapsed.has(id);
    const children = isCollapsed ? [] : node.children;
    let x: number;
    if (children.length === 0) {
      x = nextSlot++;
    } else {
      const xs = children.map((child, i) => visit(child, `${id}.${i}`, depth + 1, id));
      x = (Math.min(...xs) + Math.max(...xs)) / 2;
    }
    out.push({
      id,
      node,
      x,
      y: depth,
      parentId,
      hasChildren: node.children.length > 0,
      collapsed: isCollapsed,
    });
    return x;
  }

  visit(root, "0", 0, null);
  return out;
}

export interface TreeRenderOptions {
  metric: PlanMetric;
  collapsed: Set<string>;
  onToggle?: (id: string) => void;
  width?: number;
  levelHeight?: number;
  minRadius?: number;
  maxRadius?: number;
}

function metricValue(node: HierarchyNode, metric: PlanMetric): number | null {
  return metric === "cost" ? node.attrs.selfCost : node.attrs.rows;
}

export function nodeRadius(
  value: number | null,
  maxValue: number,
  minRadius: number,
  maxRadius: number,
): number {
  // area proportional to the metric, floored so zero-metric nodes stay clickable
  if (value === null || maxValue <= 0 || value <= 0) return minRadius;
  return Math.max(minRadius, Math.sqrt(value / maxValue) * maxRadius);
}

function tooltipText(node: HierarchyNode): string {
  const lines = [`${node.name}  [${node.opClass}]`];
  const { cost, selfCost, rows, relation, condition } = node.attrs;
  if (relation) lines.push(`relation: ${relation}`);
  if (cost !== null) lines.push(`cost: ${fmtNumber(cost)}`);
  if (selfCost !== null) lines.push(`self cost: ${fmtNumber(selfCost)}`);
  if (rows !== null) lines.push(`rows: ${fmtNumber(rows)}`);
  if (condition) lines.push(`condition: ${condition}`);
  return lines.join("\n");
}

export function renderPlanTree(root: HierarchyNode, opts: TreeRenderOptions): SVGSVGElement {
  const width = opts.width ?? 860;
  const levelHeight = opts.levelHeight ?? 84;
  const minRadius = opts.minRadius ?? 6;
  const maxRadius = opts.maxRadius ?? 22;

  const laid = layoutTree(root, opts.collapsed);
  const depth = Math.max(...laid.map((n) => n.y));
  const slots = Math.max(...laid.map((n) => n.x)) + 1;
  const height = (depth + 1) * levelHeight + 30;
  const slotW = width / Math.max(1, slots);
  const px = (n: LaidOutNode) => (n.x + 0.5) * slotW;
  const py = (n: LaidOutNode) => n.y * levelHeight + maxRadius + 10;

  const byId = new Map(laid.map((n) => [n.id, n]));
  const maxValue = Math.max(
    ...laid.map((n) => metricValue(n.node, opts.metric) ?? 0),
    0,
  );

  const svg = svgEl("svg", { width, height, class: "plan-tree" });

  for (const n of laid) {
    if (!n.parentId) continue;
    const parent = byId.get(n.parentId)!;
    svg.append(
      svgEl("line", {
        x1: px(parent),
        y1: py(parent),
        x2: px(n),
        y2: py(n),
        stroke: "#c3ccd6",
        "stroke-width": 1.2,
      }),
    );
  }

  for (const n of laid) {
    const value = metricValue(n.node, opts.metric);
    const r = nodeRadius(value, maxValue, minRadius, maxRadius);
    const group = svgEl("g", { class: "tree-node", "data-id": n.id, "data-opclass": n.node.opClass });
    const circle = svgEl("circle", {
      cx: px(n),
      cy: py(n),
      r,
      fill: opClassColor(n.node.opClass),
      "fill-opacity": n.collapsed ? 0.45 : 0.9,
      stroke: n.collapsed ? "#1d2733" : "#ffffff",
      "stroke-width": n.collapsed ? 2 : 1.2,
      cursor: n.hasChildren ? "pointer" : "default",
    });
    circle.addEventListener("mousemove", (ev) => showTooltip(ev as MouseEvent, tooltipText(n.node)));
    circle.addEventListener("mouseleave", hideTooltip);
    if (n.hasChildren) {
      circle.addEventListener("click", () => opts.onToggle?.(n.id));
    }
    group.append(
      circle,
      svgEl(
        "text",
        {
          x: px(n),
          y: py(n) + r + 12,
          "text-anchor": "middle",
          "font-size": 11,
          fill: "#1d2733",
        },
        n.collapsed ? `${n.node.name} …` : n.node.name,
      ),
    );
    svg.append(group);
  }
  return svg;
}
