import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { CSV_HEADER, parseSimulationCsv } from "../src/csv.js";

const fig2 = readFileSync(new URL("../fixtures/fig2.csv", import.meta.url), "utf8");

describe("parseSimulationCsv", () => {
  it("parses metadata and rows from a produced file", () => {
    const data = parseSimulationCsv(fig2);
    expect(data.meta["initial"]).toBe("bell-phi");
    expect(data.meta["method"]).toBe("analytic");
    expect(Number(data.meta["gamma"])).toBe(1);
    expect(data.rows.length).toBe(5 * 1000);
    const first = data.rows[0];
    expect(first.t).toBe(0);
    expect(first.concurrence).toBe(1);
    expect(first.rho14Re).toBe(0.5);
    expect(first.rho22).toBe(0);
  });

  it("round-trips 17-digit floats exactly", () => {
    const data = parseSimulationCsv(fig2);
    const lines = fig2.split("\n").filter((l) => l && !l.startsWith("#"));
    // lines[0] is the header; compare the first two data rows field by field
    expect(data.rows[0].t).toBe(Number(lines[1].split(",")[0]));
    expect(data.rows[1].t).toBe(Number(lines[2].split(",")[0]));
    expect(data.rows[1].rho14Re).toBe(Number(lines[2].split(",")[14]));
  });

  it("rejects a malformed row naming the line", () => {
    const text = "# a = b\n" + CSV_HEADER + "\n1,2,3\n";
    expect(() => parseSimulationCsv(text)).toThrow(/line 3/);
  });

  it("rejects non-numeric fields naming the line and column", () => {
    const row = ["0", "1", "0", "0", "analytic", "oops",
                 ...Array(10).fill("0")].join(",");
    const text = CSV_HEADER + "\n" + row + "\n";
    expect(() => parseSimulationCsv(text)).toThrow(/line 2.*concurrence/);
  });

  it("rejects an unexpected header", () => {
    expect(() => parseSimulationCsv("a,b,c\n1,2,3\n")).toThrow(/header/);
  });

  it("rejects empty input", () => {
    expect(() => parseSimulationCsv("")).toThrow(/no header/);
    expect(() => parseSimulationCsv(CSV_HEADER + "\n")).toThrow(/no data rows/);
  });
});
