import { describe, expect, it } from "vitest";

import { RequestSequencer } from "../src/fetchseq.js";

describe("request sequencing", () => {
  it("newer requests invalidate older tokens", () => {
    const seq = new RequestSequencer();
    const first = seq.next("chart");
    const second = seq.next("chart");
    expect(seq.isCurrent("chart", first)).toBe(false);
    expect(seq.isCurrent("chart", second)).toBe(true);
  });

  it("slots are independent", () => {
    const seq = new RequestSequencer();
    const chart = seq.next("chart");
    seq.next("variables");
    expect(seq.isCurrent("chart", chart)).toBe(true);
  });

  it("a stale response arriving late is discarded", async () => {
    const seq = new RequestSequencer();
    const applied: string[] = [];

    async function fetchAndApply(label: string, delayMs: number): Promise<void> {
      const token = seq.next("chart");
      await new Promise((resolve) => setTimeout(resolve, delayMs));
      if (seq.isCurrent("chart", token)) applied.push(label);
    }

    await Promise.all([fetchAndApply("slow-old", 30), fetchAndApply("fast-new", 5)]);
    expect(applied).toEqual(["fast-new"]);
  });
});
