/** HTML string builders. Pure: state in, markup out. The tags rendered
 * here are always the ones the service sent back last. */

import type {
  AgreementReport,
  ApiError,
  ClauseTrace,
  CoverageReport,
  PreviewResult,
  SentenceItem,
  SentenceKappa,
} from "./api.js";
import { formatKappa, formatPercent, sortDisagreements } from "./model.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Tokens with their tags as highlighted spans. Consecutive tokens with
 * the same tag merge into one span; O tokens stay bare, so an all-O
 * sentence renders with no highlights at all. */
export function renderSpans(tokens: string[], tags: string[] | null): string {
  if (tags === null) {
    return escapeHtml(tokens.join(" "));
  }
  const parts: string[] = [];
  let i = 0;
  while (i < tokens.length) {
    const tag = tags[i];
    if (tag === "O") {
      parts.push(escapeHtml(tokens[i]));
      i++;
      continue;
    }
    let j = i;
    while (j < tokens.length && tags[j] === tag) j++;
    const run = tokens.slice(i, j).join(" ");
    parts.push(
      `<span class="tag tag-${escapeHtml(tag)}" data-tag="${escapeHtml(tag)}">` +
        `${escapeHtml(run)}<sub>${escapeHtml(tag)}</sub></span>`,
    );
    i = j;
  }
  return parts.join(" ");
}

export function renderSentenceList(
  items: SentenceItem[],
  selected: string | null,
): string {
  if (items.length === 0) return '<p class="empty">no sentences match</p>';
  const rows = items.map((item) => {
    const cls = item.sent_id === selected ? "sentence selected" : "sentence";
    const badge = item.labeled
      ? `<span class="badge labeled">${escapeHtml(item.pattern ?? "")}</span>`
      : '<span class="badge unlabeled">unlabeled</span>';
    return (
      `<li class="${cls}" data-sent-id="${escapeHtml(item.sent_id)}">` +
      `<span class="sid">${escapeHtml(item.sent_id)}</span> ${badge}` +
      `<span class="snippet">${escapeHtml(item.text)}</span></li>`
    );
  });
  return `<ul class="sentences">${rows.join("")}</ul>`;
}

export function renderCoverage(report: CoverageReport): string {
  const strata = Object.entries(report.by_req_type)
    .map(
      ([name, fraction]) =>
        `<tr><td>${escapeHtml(name)}</td><td>${formatPercent(fraction)}</td></tr>`,
    )
    .join("");
  return (
    `<p class="cov-overall">${report.labeled_count} / ${report.total_count} ` +
    `sentences labeled (${formatPercent(report.overall)})</p>` +
    (strata ? `<table class="cov-table"><tbody>${strata}</tbody></table>` : "")
  );
}

export function renderAgreementTable(report: AgreementReport): string {
  const rows = Object.entries(report.rows)
    .map(
      ([name, pair]) =>
        `<tr><td>${escapeHtml(name)}</td>` +
        `<td>${formatKappa(pair.sentence_avg)}</td>` +
        `<td>${formatKappa(pair.overall)}</td></tr>`,
    )
    .join("");
  return (
    `<table class="kappa-table"><thead>` +
    `<tr><th>labels</th><th>sentence avg</th><th>overall</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    `<p class="compared">${report.sentences_compared} sentences, ` +
    `${report.tokens_compared} tokens compared</p>`
  );
}

/** Worst-agreed sentences first. */
export function renderDisagreements(perSentence: SentenceKappa[]): string {
  const rows = sortDisagreements(perSentence)
    .map(
      (entry) =>
        `<li class="disagreement" data-sent-id="${escapeHtml(entry.sent_id)}">` +
        `<span class="kappa">${formatKappa(entry.kappa)}</span> ` +
        `<span class="sid">${escapeHtml(entry.sent_id)}</span></li>`,
    )
    .join("");
  return `<ol class="disagreements">${rows}</ol>`;
}

export function renderPreviewResults(results: PreviewResult[]): string {
  const rows = results.map((result) => {
    const body = result.matched
      ? renderSpans(result.tokens, result.tags)
      : `<span class="nomatch">${escapeHtml(result.tokens.join(" "))}</span>`;
    return (
      `<li class="preview ${result.matched ? "matched" : "unmatched"}" ` +
      `data-sent-id="${escapeHtml(result.sent_id)}">` +
      `<span class="sid">${escapeHtml(result.sent_id)}</span> ${body}</li>`
    );
  });
  const matched = results.filter((r) => r.matched).length;
  return (
    `<p class="preview-count">${matched} / ${results.length} previewed sentences match</p>` +
    `<ul class="previews">${rows.join("")}</ul>`
  );
}

export function renderTraces(traces: ClauseTrace[]): string {
  const rows = traces.map((trace) => {
    const steps = trace.steps
      .map((step, i) => {
        const cls = trace.failed_at === i ? "step failed" : "step";
        return `<span class="${cls}">${escapeHtml(step)}</span>`;
      })
      .join(" ");
    const state = trace.matched
      ? `<span class="ok">matched ${trace.sets[trace.sets.length - 1].length} node(s)</span>`
      : `<span class="fail">no match at step ${trace.failed_at}</span>`;
    return (
      `<li class="trace ${trace.matched ? "matched" : "unmatched"}">` +
      `<span class="tag tag-${escapeHtml(trace.tag)}">${escapeHtml(trace.tag)}</span> ` +
      `${steps} ${state}</li>`
    );
  });
  return `<ul class="traces">${rows.join("")}</ul>`;
}

/** Editor diagnostics for a rejected pattern file; the buffer itself is
 * never touched. */
export function renderDiagnostics(error: ApiError): string {
  const where = error.line !== null ? `<span class="line">line ${error.line}</span> ` : "";
  return `<p class="diagnostic error">${where}${escapeHtml(error.message)}</p>`;
}

export function renderWarnings(warnings: string[]): string {
  if (warnings.length === 0) {
    return '<p class="diagnostic ok">saved; no warnings</p>';
  }
  const rows = warnings
    .map((w) => `<li class="warning">${escapeHtml(w)}</li>`)
    .join("");
  return `<ul class="warnings">${rows}</ul>`;
}

export function renderRetryPrompt(action: string): string {
  return (
    `<p class="diagnostic error">service unreachable; nothing was changed. ` +
    `<button type="button" class="retry" data-action="${escapeHtml(action)}">retry</button></p>`
  );
}
