import { describe, expect, it } from "vitest";
import type { ClauseTrace } from "../src/api.js";
import {
  extractPatternBlock,
  failureHighlight,
  listPatternNames,
  sortDisagreements,
  toFilters,
} from "../src/model.js";

const PATTERN_FILE = `tagset: ent1, rel, ent2, cond

# transcription notes
pattern "first" {
  rel: root -> node
}

pattern "second" {
  rel: root -> node
  ent1: root nsubj -> subtree
}
`;

describe("sortDisagreements", () => {
  it("orders ascending by kappa with ties kept stable", () => {
    const input = [
      { sent_id: "a", kappa: 0.9 },
      { sent_id: "b", kappa: 0.1 },
      { sent_id: "c", kappa: 0.5 },
      { sent_id: "d", kappa: 0.5 },
    ];
    const sorted = sortDisagreements(input);
    expect(sorted.map((e) => e.sent_id)).toEqual(["b", "c", "d", "a"]);
  });

  it("does not mutate the server's list", () => {
    const input = [
      { sent_id: "a", kappa: 0.9 },
      { sent_id: "b", kappa: 0.1 },
    ];
    sortDisagreements(input);
    expect(input.map((e) => e.sent_id)).toEqual(["a", "b"]);
  });
});

describe("listPatternNames", () => {
  it("finds block names in file order", () => {
    expect(listPatternNames(PATTERN_FILE)).toEqual(["first", "second"]);
  });

  it("ignores lines that only look similar", () => {
    const text = 'patterns "x" {\n  # pattern "y" {\npattern"z" {\n';
    expect(listPatternNames(text)).toEqual([]);
  });

  it("accepts leading indentation", () => {
    expect(listPatternNames('  pattern "indented" {\n  }\n')).toEqual(["indented"]);
  });
});

describe("extractPatternBlock", () => {
  it("keeps the header and cuts exactly one block", () => {
    expect(extractPatternBlock(PATTERN_FILE, "second")).toBe(
      `tagset: ent1, rel, ent2, cond

# transcription notes

pattern "second" {
  rel: root -> node
  ent1: root nsubj -> subtree
}
`,
    );
  });

  it("extracts the first block too", () => {
    const block = extractPatternBlock(PATTERN_FILE, "first");
    expect(block).toContain('pattern "first" {');
    expect(block).not.toContain("second");
  });

  it("returns null for a name with no block", () => {
    expect(extractPatternBlock(PATTERN_FILE, "third")).toBeNull();
  });

  it("returns null while the block is still unterminated", () => {
    const partial = 'tagset: a\n\npattern "open" {\n  rel: root -> node\n';
    expect(extractPatternBlock(partial, "open")).toBeNull();
  });
});

describe("failureHighlight", () => {
  const failed: ClauseTrace = {
    tag: "ent2",
    steps: ["nsubj", "dobj"],
    sets: [[0], [3]],
    matched: false,
    failed_at: 1,
  };

  it("points at the frontier before the failing step", () => {
    expect(failureHighlight(failed)).toEqual({ nodes: [3], step: "dobj" });
  });

  it("marks the virtual root when the very first step fails", () => {
    const atStart: ClauseTrace = { ...failed, sets: [[0]], failed_at: 0 };
    expect(failureHighlight(atStart)).toEqual({ nodes: [0], step: "nsubj" });
  });

  it("returns null for a matched clause", () => {
    const ok: ClauseTrace = { ...failed, matched: true, failed_at: null };
    expect(failureHighlight(ok)).toBeNull();
  });
});

describe("toFilters", () => {
  it("omits unset filters entirely", () => {
    expect(toFilters({ offset: 0, limit: 25, reqType: "", labeled: "" })).toEqual({
      offset: 0,
      limit: 25,
    });
  });

  it("converts the labeled string to a boolean", () => {
    expect(
      toFilters({ offset: 50, limit: 25, reqType: "functional", labeled: "false" }),
    ).toEqual({ offset: 50, limit: 25, req_type: "functional", labeled: false });
  });
});
