import { describe, expect, it } from "vitest";

import { linearBarScale, linearScale, logBarScale } from "../src/scales";

describe("linearScale", () => {
  it("maps domain ends to range ends", () => {
    const s = linearScale([0, 10], [100, 200]);
    expect(s.map(0)).toBe(100);
    expect(s.map(10)).toBe(200);
    expect(s.map(5)).toBe(150);
  });

  it("degenerate domain maps to range midpoint", () => {
    const s = linearScale([4, 4], [0, 100]);
    expect(s.map(4)).toBe(50);
  });
});

describe("linearBarScale", () => {
  it("is proportional and allows sub-pixel bars", () => {
    const s = linearBarScale(10000, 230);
    expect(s.height(10000)).toBe(230);
    expect(s.height(10)).toBeLessThan(1);
  });
});

describe("logBarScale", () => {
  it("floors at the smallest positive value", () => {
    const s = logBarScale([10, 1000, 10000], 230);
    expect(s.height(10)).toBeGreaterThanOrEqual(1);
    expect(s.height(10000)).toBe(230);
    expect(s.atFloor(10)).toBe(true);
    expect(s.atFloor(10000)).toBe(false);
  });

  it("renders zero at the floor height", () => {
    const s = logBarScale([0, 5, 5000], 230);
    expect(s.height(0)).toBeGreaterThanOrEqual(1);
    expect(s.height(0)).toBe(s.height(5));
  });

  it("keeps ordering monotone", () => {
    const s = logBarScale([1, 10, 100, 1000], 200);
    expect(s.height(10)).toBeGreaterThan(s.height(1));
    expect(s.height(100)).toBeGreaterThan(s.height(10));
    expect(s.height(1000)).toBeGreaterThan(s.height(100));
  });
});
