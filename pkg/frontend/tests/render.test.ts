import { describe, expect, it } from "vitest";
import { ApiError } from "../src/api.js";
import {
  escapeHtml,
  renderAgreementTable,
  renderCoverage,
  renderDiagnostics,
  renderDisagreements,
  renderPreviewResults,
  renderSentenceList,
  renderSpans,
  renderTraces,
  renderRetryPrompt,
  renderWarnings,
} from "../src/render.js";

// the bracketed reference rendering of this sentence is
// [NPAC SMS]_ent1 shall [default]_rel [the EDR Indicator]_ent2 [to False]_cond .
const TOKENS = "NPAC SMS shall default the EDR Indicator to False .".split(" ");
const TAGS = "ent1 ent1 O rel ent2 ent2 ent2 cond cond O".split(" ");

describe("renderSpans", () => {
  it("merges each tag run into one colored span", () => {
    const html = renderSpans(TOKENS, TAGS);
    const spans = html.match(/<span class="tag tag-(\w+)"/g) ?? [];
    expect(spans).toHaveLength(4);
    expect(html).toContain('class="tag tag-ent1"');
    expect(html).toContain('class="tag tag-rel"');
    expect(html).toContain('class="tag tag-ent2"');
    expect(html).toContain('class="tag tag-cond"');
    expect(html).toContain("NPAC SMS<sub>ent1</sub>");
    expect(html).toContain("the EDR Indicator<sub>ent2</sub>");
  });

  it("renders an all-O sentence with no highlights", () => {
    const html = renderSpans(["System", "reboots", "."], ["O", "O", "O"]);
    expect(html).toBe("System reboots .");
    expect(html).not.toContain("<span");
  });

  it("renders null tags as plain text", () => {
    expect(renderSpans(["a", "b"], null)).toBe("a b");
  });

  it("escapes markup in tokens", () => {
    const html = renderSpans(["<b>", "x"], ["rel", "O"]);
    expect(html).toContain("&lt;b&gt;");
    expect(html).not.toContain("<b>");
  });
});

describe("escapeHtml", () => {
  it("neutralizes the four risky characters", () => {
    expect(escapeHtml('<a href="x">&')).toBe("&lt;a href=&quot;x&quot;&gt;&amp;");
  });
});

describe("renderSentenceList", () => {
  const items = [
    {
      sent_id: "ex-01",
      text: "The system shall do things.",
      req_type: "functional",
      n_tokens: 6,
      labeled: true,
      pattern: "simple_svo",
    },
    {
      sent_id: "ex-03",
      text: "Nothing matched here.",
      req_type: "unknown",
      n_tokens: 4,
      labeled: false,
      pattern: null,
    },
  ];

  it("marks the selected row and shows label state", () => {
    const html = renderSentenceList(items, "ex-01");
    expect(html).toContain('class="sentence selected" data-sent-id="ex-01"');
    expect(html).toContain("simple_svo");
    expect(html).toContain(">unlabeled<");
  });

  it("says so when nothing matches the filters", () => {
    expect(renderSentenceList([], null)).toContain("no sentences match");
  });
});

describe("renderCoverage", () => {
  it("shows the overall fraction and each stratum", () => {
    const html = renderCoverage({
      overall: 0.875,
      by_req_type: { functional: 1.0, non_functional: 0.5 },
      labeled_count: 7,
      total_count: 8,
    });
    expect(html).toContain("7 / 8");
    expect(html).toContain("87.50%");
    expect(html).toContain("functional");
    expect(html).toContain("100.00%");
    expect(html).toContain("50.00%");
  });
});

describe("renderAgreementTable", () => {
  it("prints both weightings to three decimals", () => {
    const html = renderAgreementTable({
      rows: { all: { sentence_avg: 0.61, overall: 0.6363636363 } },
      per_sentence: [],
      sentences_compared: 8,
      tokens_compared: 70,
    });
    expect(html).toContain("0.610");
    expect(html).toContain("0.636");
    expect(html).toContain("8 sentences");
    expect(html).toContain("70 tokens");
  });
});

describe("renderDisagreements", () => {
  it("lists the worst agreed sentence first", () => {
    const html = renderDisagreements([
      { sent_id: "good", kappa: 0.9 },
      { sent_id: "bad", kappa: 0.1 },
    ]);
    expect(html.indexOf('data-sent-id="bad"')).toBeLessThan(
      html.indexOf('data-sent-id="good"'),
    );
    expect(html).toContain("0.100");
  });
});

describe("renderPreviewResults", () => {
  it("counts matches and renders spans only for matched sentences", () => {
    const html = renderPreviewResults([
      {
        sent_id: "ex-02",
        matched: true,
        tags: TAGS,
        tokens: TOKENS,
        trace: [],
      },
      {
        sent_id: "ex-03",
        matched: false,
        tags: null,
        tokens: ["no", "match"],
        trace: [],
      },
    ]);
    expect(html).toContain("1 / 2 previewed sentences match");
    expect(html).toContain('class="tag tag-ent1"');
    expect(html).toContain('<span class="nomatch">no match</span>');
  });
});

describe("renderTraces", () => {
  it("marks the failing step and reports its index", () => {
    const html = renderTraces([
      {
        tag: "ent2",
        steps: ["nsubj", "dobj"],
        sets: [[0], [3]],
        matched: false,
        failed_at: 1,
      },
    ]);
    expect(html).toContain('<span class="step">nsubj</span>');
    expect(html).toContain('<span class="step failed">dobj</span>');
    expect(html).toContain("no match at step 1");
  });

  it("reports the terminal frontier size for a matched clause", () => {
    const html = renderTraces([
      {
        tag: "rel",
        steps: ["root"],
        sets: [[0], [4]],
        matched: true,
        failed_at: null,
      },
    ]);
    expect(html).toContain("matched 1 node(s)");
    expect(html).not.toContain("failed");
  });
});

describe("diagnostics and prompts", () => {
  it("anchors a save rejection to its editor line", () => {
    const html = renderDiagnostics(new ApiError(422, "unknown tag 'foo'", 4));
    expect(html).toContain("line 4");
    expect(html).toContain("unknown tag 'foo'");
  });

  it("omits the line marker when the service gave none", () => {
    const html = renderDiagnostics(new ApiError(409, "no gold annotations loaded"));
    expect(html).not.toContain('class="line"');
    expect(html).toContain("no gold annotations loaded");
  });

  it("confirms a clean save and lists warnings otherwise", () => {
    expect(renderWarnings([])).toContain("no warnings");
    const html = renderWarnings(["pattern 'x' labels nothing"]);
    expect(html).toContain("pattern 'x' labels nothing");
  });

  it("offers a retry without claiming anything was changed", () => {
    const html = renderRetryPrompt("save");
    expect(html).toContain('data-action="save"');
    expect(html).toContain("nothing was changed");
  });
});
