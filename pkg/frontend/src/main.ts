/** Entry point: wires the panels to the service. All labeling decisions
 * are made server-side; this file only moves responses onto the page. */

import {
  ApiClient,
  ApiError,
  type PreviewResponse,
  type PreviewResult,
  type SentencesPage,
} from "./api.js";
import { LatestOnly } from "./debounce.js";
import {
  extractPatternBlock,
  failureHighlight,
  listPatternNames,
  toFilters,
  type SentenceQuery,
} from "./model.js";
import {
  renderAgreementTable,
  renderCoverage,
  renderDiagnostics,
  renderDisagreements,
  renderPreviewResults,
  renderRetryPrompt,
  renderSentenceList,
  renderSpans,
  renderTraces,
  renderWarnings,
} from "./render.js";
import { renderTreeSVG } from "./tree.js";

const PAGE_SIZE = 25;
const PREVIEW_WAIT_MS = 300;

const client = new ApiClient();
const previewGate = new LatestOnly(PREVIEW_WAIT_MS);

const query: SentenceQuery = { offset: 0, limit: PAGE_SIZE, reqType: "", labeled: "" };
let lastPage: SentencesPage | null = null;
let lastPreview: PreviewResponse | null = null;
let selected: string | null = null;

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function editor(): HTMLTextAreaElement {
  return byId<HTMLTextAreaElement>("editor");
}

function setStatus(html: string): void {
  byId("editor-status").innerHTML = html;
}

function isNetworkError(err: unknown): err is ApiError {
  return err instanceof ApiError && err.status === 0;
}

async function refreshSentences(): Promise<void> {
  const panel = byId("sentence-list");
  try {
    const page = await client.listSentences(toFilters(query));
    lastPage = page;
    panel.innerHTML = renderSentenceList(page.items, selected);
    const first = page.items.length === 0 ? 0 : query.offset + 1;
    byId("page-info").textContent =
      `${first}-${query.offset + page.items.length} of ${page.total}`;
    byId<HTMLButtonElement>("page-prev").disabled = query.offset === 0;
    byId<HTMLButtonElement>("page-next").disabled = page.next_offset === null;
  } catch (err) {
    if (!isNetworkError(err)) throw err;
    panel.innerHTML = renderRetryPrompt("sentences");
  }
}

async function refreshCoverage(): Promise<void> {
  const panel = byId("coverage");
  try {
    panel.innerHTML = renderCoverage(await client.coverage());
  } catch (err) {
    if (!isNetworkError(err)) throw err;
    panel.innerHTML = renderRetryPrompt("coverage");
  }
}

async function refreshAgreement(): Promise<void> {
  const table = byId("agreement");
  const browser = byId("disagreements");
  try {
    const report = await client.agreement();
    table.innerHTML = renderAgreementTable(report);
    browser.innerHTML = renderDisagreements(report.per_sentence);
  } catch (err) {
    if (isNetworkError(err)) {
      table.innerHTML = renderRetryPrompt("agreement");
      return;
    }
    if (err instanceof ApiError && err.status === 409) {
      table.innerHTML = '<p class="empty">no gold annotations loaded</p>';
      browser.innerHTML = "";
      return;
    }
    throw err;
  }
}

function syncPatternSelect(): void {
  const select = byId<HTMLSelectElement>("pattern-select");
  const names = listPatternNames(editor().value);
  const current = select.value;
  select.innerHTML = names
    .map((n) => `<option value="${n.replace(/"/g, "&quot;")}">${n}</option>`)
    .join("");
  if (names.includes(current)) select.value = current;
}

async function loadPatterns(): Promise<void> {
  try {
    const info = await client.getPatterns();
    editor().value = info.pattern_file_text;
    syncPatternSelect();
  } catch (err) {
    if (!isNetworkError(err)) throw err;
    setStatus(renderRetryPrompt("init"));
  }
}

function schedulePreview(): void {
  previewGate.schedule(runPreview);
}

async function runPreview(signal: AbortSignal, isCurrent: () => boolean): Promise<void> {
  const panel = byId("preview");
  const name = byId<HTMLSelectElement>("pattern-select").value;
  if (!name) {
    panel.innerHTML = '<p class="empty">add a pattern block to preview</p>';
    return;
  }
  const block = extractPatternBlock(editor().value, name);
  if (block === null) {
    panel.innerHTML = '<p class="empty">pattern block is incomplete</p>';
    return;
  }
  try {
    const ids = lastPage?.items.map((item) => item.sent_id);
    const resp = await client.preview(block, ids, signal);
    if (!isCurrent()) return;
    lastPreview = resp;
    panel.innerHTML = renderPreviewResults(resp.results);
    setStatus("");
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") return;
    if (!isCurrent()) return;
    if (isNetworkError(err)) {
      setStatus(renderRetryPrompt("preview"));
    } else if (err instanceof ApiError) {
      setStatus(renderDiagnostics(err));
    } else {
      throw err;
    }
  }
}

async function doSave(): Promise<void> {
  try {
    const result = await client.savePatterns(editor().value);
    setStatus(renderWarnings(result.warnings));
    syncPatternSelect();
    await Promise.all([refreshSentences(), refreshCoverage(), refreshAgreement()]);
    if (selected) await showSentence(selected);
  } catch (err) {
    // the previous pattern set stays active server-side and the buffer is
    // untouched, so rejection costs the annotator nothing
    if (isNetworkError(err)) {
      setStatus(renderRetryPrompt("save"));
    } else if (err instanceof ApiError) {
      setStatus(renderDiagnostics(err));
    } else {
      throw err;
    }
  }
}

/** Detail pane in corpus mode: tags as the active pattern set assigns them. */
async function showSentence(sentId: string): Promise<void> {
  selected = sentId;
  try {
    const tree = await client.getTree(sentId);
    byId("detail-title").textContent = `${tree.sent_id}${tree.pattern ? " (" + tree.pattern + ")" : ""}`;
    byId("detail-spans").innerHTML = renderSpans(
      tree.tokens.map((t) => t.form),
      tree.tokens.map((t) => t.tag),
    );
    byId("tree").innerHTML = renderTreeSVG(tree);
    byId("traces").innerHTML = "";
    if (lastPage) {
      byId("sentence-list").innerHTML = renderSentenceList(lastPage.items, selected);
    }
  } catch (err) {
    if (!isNetworkError(err)) throw err;
    byId("detail-spans").innerHTML = renderRetryPrompt("tree");
  }
}

/** Detail pane in preview mode: tags and traces from the last preview
 * response; a failed clause marks the nodes its walk reached and the
 * step that would not advance. */
async function showPreviewResult(result: PreviewResult): Promise<void> {
  selected = result.sent_id;
  byId("detail-title").textContent = `${result.sent_id} (preview)`;
  byId("detail-spans").innerHTML = renderSpans(result.tokens, result.tags);
  byId("traces").innerHTML = renderTraces(result.trace);
  try {
    const tree = await client.getTree(result.sent_id);
    const failed = result.trace.find((t) => t.failed_at !== null);
    const mark = failed ? failureHighlight(failed) : null;
    byId("tree").innerHTML = renderTreeSVG(tree, {
      overrideTags: result.tags,
      highlightNodes: mark?.nodes,
      failLabel: mark?.step,
    });
  } catch (err) {
    if (!isNetworkError(err)) throw err;
    byId("tree").innerHTML = renderRetryPrompt("tree");
  }
}

const RETRY_ACTIONS: Record<string, () => void> = {
  sentences: () => void refreshSentences(),
  coverage: () => void refreshCoverage(),
  agreement: () => void refreshAgreement(),
  preview: () => previewGate.flush(runPreview),
  save: () => void doSave(),
  tree: () => void (selected && showSentence(selected)),
  init: () => void init(),
};

function onClick(event: Event): void {
  const target = event.target as Element | null;
  if (!target) return;
  const retry = target.closest<HTMLElement>("button.retry");
  if (retry) {
    RETRY_ACTIONS[retry.dataset.action ?? ""]?.();
    return;
  }
  const row = target.closest<HTMLElement>("[data-sent-id]");
  if (!row) return;
  const sentId = row.dataset.sentId ?? "";
  if (row.classList.contains("preview")) {
    const result = lastPreview?.results.find((r) => r.sent_id === sentId);
    if (result) void showPreviewResult(result);
    return;
  }
  void showSentence(sentId);
}

function wire(): void {
  byId("filter-req-type").addEventListener("change", (e) => {
    query.reqType = (e.target as HTMLSelectElement).value;
    query.offset = 0;
    void refreshSentences();
  });
  byId("filter-labeled").addEventListener("change", (e) => {
    query.labeled = (e.target as HTMLSelectElement).value;
    query.offset = 0;
    void refreshSentences();
  });
  byId("page-prev").addEventListener("click", () => {
    query.offset = Math.max(0, query.offset - query.limit);
    void refreshSentences();
  });
  byId("page-next").addEventListener("click", () => {
    if (lastPage?.next_offset != null) {
      query.offset = lastPage.next_offset;
      void refreshSentences();
    }
  });
  editor().addEventListener("input", () => {
    syncPatternSelect();
    schedulePreview();
  });
  byId("pattern-select").addEventListener("change", schedulePreview);
  byId("save").addEventListener("click", () => void doSave());
  document.addEventListener("click", onClick);
}

async function init(): Promise<void> {
  await loadPatterns();
  await Promise.all([refreshSentences(), refreshCoverage(), refreshAgreement()]);
  schedulePreview();
}

function boot(): void {
  wire();
  void init();
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", boot);
} else {
  boot();
}
