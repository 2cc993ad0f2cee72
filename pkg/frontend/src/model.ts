/** Pure view-model helpers. Anything that decides WHAT to show lives
 * here so it can be tested without a DOM; render.ts only formats. */

import type { ClauseTrace, SentenceKappa } from "./api.js";

/** Disagreement browser order: worst agreement first; ties keep the
 * server's (corpus) order. */
export function sortDisagreements(perSentence: SentenceKappa[]): SentenceKappa[] {
  return perSentence
    .map((entry, index) => ({ entry, index }))
    .sort((a, b) => a.entry.kappa - b.entry.kappa || a.index - b.index)
    .map((x) => x.entry);
}

const PATTERN_RE = /^[ \t]*pattern[ \t]+"([^"]+)"[ \t]*\{/;

/** Names of the pattern blocks in a pattern-file buffer, in file order.
 * Text-level scan only; the service stays the sole authority on syntax. */
export function listPatternNames(buffer: string): string[] {
  const names: string[] = [];
  for (const line of buffer.split("\n")) {
    const m = PATTERN_RE.exec(line);
    if (m) names.push(m[1]);
  }
  return names;
}

/** Cut one pattern block (plus everything before the first block, i.e.
 * the tagset header and comments) out of the buffer, so the preview
 * endpoint receives exactly one pattern. Returns null when the name has
 * no block. */
export function extractPatternBlock(buffer: string, name: string): string | null {
  const lines = buffer.split("\n");
  let headerEnd = lines.length;
  let start = -1;
  for (let i = 0; i < lines.length; i++) {
    const m = PATTERN_RE.exec(lines[i]);
    if (m) {
      if (headerEnd === lines.length) headerEnd = i;
      if (m[1] === name) {
        start = i;
        break;
      }
    }
  }
  if (start < 0) return null;
  let end = start;
  while (end < lines.length && lines[end].trim() !== "}") end++;
  if (end === lines.length) return null;
  const header = lines.slice(0, headerEnd).join("\n").trimEnd();
  const block = lines.slice(start, end + 1).join("\n");
  return (header ? header + "\n\n" : "") + block + "\n";
}

/** The nodes to flash in the tree for a failed clause: where the walk
 * still stood before the failing step. */
export function failureHighlight(trace: ClauseTrace): {
  nodes: number[];
  step: string;
} | null {
  if (trace.failed_at === null) return null;
  return {
    nodes: trace.sets[trace.failed_at] ?? [],
    step: trace.steps[trace.failed_at] ?? "",
  };
}

export interface SentenceQuery {
  offset: number;
  limit: number;
  reqType: string; // "" = all
  labeled: string; // "" = all, "true", "false"
}

export function toFilters(query: SentenceQuery): {
  offset: number;
  limit: number;
  req_type?: string;
  labeled?: boolean;
} {
  return {
    offset: query.offset,
    limit: query.limit,
    ...(query.reqType ? { req_type: query.reqType } : {}),
    ...(query.labeled ? { labeled: query.labeled === "true" } : {}),
  };
}

export function formatKappa(value: number): string {
  return value.toFixed(3);
}

export function formatPercent(fraction: number): string {
  return (fraction * 100).toFixed(2) + "%";
}
