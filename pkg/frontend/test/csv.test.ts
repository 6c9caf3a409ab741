import { describe, expect, it } from "vitest";

import { parseCsv, SchemaError, toNumber } from "../src/csv.js";

const HEADER = "round,mean_regret";

describe("parseCsv", () => {
  it("parses rows into column maps", () => {
    const table = parseCsv(`${HEADER}\n1,0.5\n2,1.25\n`, ["round", "mean_regret"], "t");
    expect(table.rows).toHaveLength(2);
    expect(table.rows[1].mean_regret).toBe("1.25");
  });

  it("names the missing column", () => {
    expect(() => parseCsv(`${HEADER}\n1,2\n`, ["stderr_regret"], "t")).toThrowError(
      /missing column 'stderr_regret'/,
    );
  });

  it("rejects empty files", () => {
    expect(() => parseCsv("", ["round"], "t")).toThrowError(SchemaError);
  });

  it("rejects header-only files", () => {
    expect(() => parseCsv(`${HEADER}\n`, ["round"], "t")).toThrowError(/no data rows/);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv(`${HEADER}\n1,2,3\n`, ["round"], "t")).toThrowError(/row 1 has 3/);
  });
});

describe("toNumber", () => {
  it("parses round-trip floats", () => {
    expect(toNumber("1.5e-3", "c", "t")).toBeCloseTo(0.0015);
  });

  it("rejects garbage", () => {
    expect(() => toNumber("abc", "c", "t")).toThrowError(/non-numeric/);
  });
});
