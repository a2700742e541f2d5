import { describe, expect, it } from "vitest";

import { compare, normalize, parseRational, toWire, validateInRange } from "../src/rational.js";

describe("parseRational", () => {
  it("accepts num/den and bare integers", () => {
    expect(parseRational("3/2")).toEqual({ num: 3n, den: 2n });
    expect(parseRational("-7/20")).toEqual({ num: -7n, den: 20n });
    expect(parseRational("4")).toEqual({ num: 4n, den: 1n });
    expect(parseRational("  1/10 ")).toEqual({ num: 1n, den: 10n });
  });

  it("handles values beyond double precision exactly", () => {
    const r = parseRational("123456789012345678901234567891/2");
    expect(r?.num).toBe(123456789012345678901234567891n);
  });

  it("rejects malformed input", () => {
    for (const bad of ["", "x", "1/0", "1.5", "1/2/3", "1/-2", "inf"]) {
      expect(parseRational(bad)).toBeNull();
    }
  });
});

describe("normalize and toWire", () => {
  it("reduces to lowest terms", () => {
    expect(normalize({ num: 35n, den: 25123n })).toEqual({ num: 5n, den: 3589n });
  });

  it("always prints the denominator", () => {
    expect(toWire({ num: 4n, den: 1n })).toBe("4/1");
    expect(toWire({ num: 2n, den: 4n })).toBe("1/2");
  });
});

describe("compare", () => {
  it("is exact", () => {
    const a = parseRational("1/3")!;
    const b = parseRational("33333333333333333333/100000000000000000000")!;
    expect(compare(a, b)).toBe(1);
    expect(compare(b, a)).toBe(-1);
    expect(compare(a, parseRational("2/6")!)).toBe(0);
  });
});

describe("validateInRange", () => {
  it("accepts values strictly inside (0, cap)", () => {
    const r = validateInRange("1/10", "9/10");
    expect(r).toEqual({ ok: true, wire: "1/10" });
  });

  it("rejects the cap itself and beyond", () => {
    expect(validateInRange("9/10", "9/10").ok).toBe(false);
    expect(validateInRange("2", "9/10").ok).toBe(false);
  });

  it("rejects zero, negatives and huge denominators", () => {
    expect(validateInRange("0", "1/1").ok).toBe(false);
    expect(validateInRange("-1/2", "1/1").ok).toBe(false);
    expect(validateInRange("1/1000001", "1/1").ok).toBe(false);
  });
});
