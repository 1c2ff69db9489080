const SVG_NS = "http://www.w3.org/2000/svg";

type Attrs = Record<string, string | number | boolean | ((ev: Event) => void)>;

function applyAttrs(el: Element, attrs: Attrs): void {
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      el.addEventListener(key.replace(/^on/, ""), value as EventListener);
    } else if (value === true) {
      el.setAttribute(key, "");
    } else if (value !== false) {
      el.setAttribute(key, String(value));
    }
  }
}

export function h<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Attrs = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const el = document.createElement(tag);
  applyAttrs(el, attrs);
  el.append(...children);
  return el;
}

export function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Attrs = {},
  ...children: (Node | string)[]
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  applyAttrs(el, attrs);
  el.append(...children);
  return el;
}

export function clear(el: Element): void {
  while (el.firstChild) el.removeChild(el.firstChild);
}

// single shared tooltip element, positioned at the cursor
let tooltipEl: HTMLDivElement | null = null;

export function tooltip(): HTMLDivElement {
  if (!tooltipEl || !document.body.contains(tooltipEl)) {
    tooltipEl = h("div", { class: "tooltip" });
    document.body.appendChild(tooltipEl);
  }
  return tooltipEl;
}

export function showTooltip(ev: MouseEvent, text: string): void {
  const tip = tooltip();
  tip.textContent = text;
  tip.style.display = "block";
  tip.style.left = `${ev.clientX + 12}px`;
  tip.style.top = `${ev.clientY + 12}px`;
}

export function hideTooltip(): void {
  if (tooltipEl) tooltipEl.style.display = "none";
}
