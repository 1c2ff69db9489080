// Chart scales. The log scale floors at the smallest positive value so bars
// for tiny durations keep a visible height, and zero maps to the floor.

export interface Scale {
  map(value: number): number;
  ticks(count: number): number[];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  return {
    map(value: number): number {
      if (span === 0) return (r0 + r1) / 2;
      return r0 + ((value - d0) / span) * (r1 - r0);
    },
    ticks(count: number): number[] {
      if (span === 0) return [d0];
      const step = span / Math.max(1, count - 1);
      return Array.from({ length: count }, (_, i) => d0 + i * step);
    },
  };
}

export interface BarHeightScale {
  height(value: number): number;
  atFloor(value: number): boolean;
}

// Linear bar heights; values at 0 get zero height (gaps stay gaps upstream:
// absent values are simply not drawn).
export function linearBarScale(max: number, plotHeight: number): BarHeightScale {
  return {
    height(value: number): number {
      if (max <= 0) return 0;
      return (value / max) * plotHeight;
    },
    atFloor: () => false,
  };
}

// log10 with a floor at the smallest positive value: every positive bar gets
// at least minHeight px, zeros render at the floor (flagged for tooltips).
export function logBarScale(
  values: number[],
  plotHeight: number,
  minHeight = 2,
): BarHeightScale {
  const positive = values.filter((v) => v > 0);
  const floor = positive.length ? Math.min(...positive) : 1;
  const max = positive.length ? Math.max(...positive) : 1;
  const logSpan = Math.log10(max) - Math.log10(floor);
  return {
    height(value: number): number {
      if (value <= floor) return minHeight;
      if (logSpan === 0) return plotHeight;
      const frac = (Math.log10(value) - Math.log10(floor)) / logSpan;
      return minHeight + frac * (plotHeight - minHeight);
    },
    atFloor(value: number): boolean {
      return value <= floor;
    },
  };
}
