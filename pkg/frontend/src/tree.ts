/** Dependency tree as an SVG string: tokens on a baseline, labeled arcs
 * from head to child above it. The service sends real tokens only, so a
 * marker for virtual node 0 is synthesized here; clause traces can point
 * at it (every trace starts from the frontier {0}). */

import type { TreeResponse } from "./api.js";
import { escapeHtml } from "./render.js";

export interface TreeOptions {
  /** Node ids to mark, e.g. the frontier a failing clause step started from. */
  highlightNodes?: number[];
  /** The step label that failed to advance, shown as a caption. */
  failLabel?: string;
  /** Tags to color nodes with instead of the tree's own (index i = token
   * id i+1). Pass when the colors must reflect a preview response rather
   * than the active pattern set; null means all O. */
  overrideTags?: string[] | null;
}

const X_STEP = 90;
const X_PAD = 60;
const BASELINE = 180;
const ARC_MIN = 24;

function xOf(slotIndex: number): number {
  return slotIndex * X_STEP + X_PAD;
}

export function renderTreeSVG(tree: TreeResponse, opts: TreeOptions = {}): string {
  const highlight = new Set(opts.highlightNodes ?? []);
  const order = [0, ...tree.tokens.map((t) => t.id)];
  const slot = new Map(order.map((id, i) => [id, i]));

  const width = order.length * X_STEP + X_PAD;
  const parts: string[] = [];

  const rootClasses = highlight.has(0) ? "node root hl" : "node root";
  parts.push(
    `<g class="${rootClasses}" data-node="0">` +
      `<text class="form" x="${xOf(0)}" y="${BASELINE}" text-anchor="middle">ROOT</text></g>`,
  );

  for (const token of tree.tokens) {
    const x = xOf(slot.get(token.id) ?? 0);
    const tag =
      opts.overrideTags !== undefined
        ? (opts.overrideTags?.[token.id - 1] ?? "O")
        : token.tag;
    const classes = ["node"];
    if (highlight.has(token.id)) classes.push("hl");
    if (tag !== "O") classes.push(`tag-${escapeHtml(tag)}`);
    parts.push(
      `<g class="${classes.join(" ")}" data-node="${token.id}">` +
        `<text class="form" x="${x}" y="${BASELINE}" text-anchor="middle">` +
        `${escapeHtml(token.form)}</text>` +
        (token.upos
          ? `<text class="upos" x="${x}" y="${BASELINE + 16}" text-anchor="middle">` +
            `${escapeHtml(token.upos)}</text>`
          : "") +
        `</g>`,
    );
  }

  for (const edge of tree.edges) {
    const headSlot = slot.get(edge.head);
    const childSlot = slot.get(edge.child);
    if (headSlot === undefined || childSlot === undefined) continue;
    const x1 = xOf(headSlot);
    const x2 = xOf(childSlot);
    const span = Math.abs(childSlot - headSlot);
    const peak = BASELINE - 20 - Math.min(ARC_MIN + span * 14, 130);
    const mid = (x1 + x2) / 2;
    const cls = highlight.has(edge.child) ? "arc hl" : "arc";
    parts.push(
      `<path class="${cls}" d="M ${x1} ${BASELINE - 14} Q ${mid} ${peak} ${x2} ${BASELINE - 14}" ` +
        `fill="none"/>` +
        `<text class="deprel" x="${mid}" y="${peak + 4}" text-anchor="middle">` +
        `${escapeHtml(edge.deprel)}</text>`,
    );
  }

  if (opts.failLabel) {
    parts.push(
      `<text class="fail-label" x="${X_PAD}" y="20">` +
        `no ${escapeHtml(opts.failLabel)} from the marked node(s)</text>`,
    );
  }

  const height = BASELINE + 30;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `width="${width}" height="${height}" class="dep-tree" role="img">` +
    parts.join("") +
    `</svg>`
  );
}
