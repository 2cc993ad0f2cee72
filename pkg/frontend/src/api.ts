/** Typed client for the labeling service. All data shown in the UI comes
 * from these calls; the client never re-evaluates patterns locally. */

export interface SentenceItem {
  sent_id: string;
  text: string;
  req_type: string;
  n_tokens: number;
  labeled: boolean;
  pattern: string | null;
}

export interface SentencesPage {
  items: SentenceItem[];
  total: number;
  next_offset: number | null;
}

export interface TreeToken {
  id: number;
  form: string;
  lemma: string | null;
  upos: string | null;
  head: number;
  deprel: string;
  tag: string;
}

export interface TreeEdge {
  head: number;
  child: number;
  deprel: string;
}

export interface TreeResponse {
  sent_id: string;
  text: string;
  tokens: TreeToken[];
  edges: TreeEdge[];
  pattern: string | null;
}

export interface ClauseTrace {
  tag: string;
  steps: string[];
  sets: number[][];
  matched: boolean;
  failed_at: number | null;
}

export interface PreviewResult {
  sent_id: string;
  matched: boolean;
  tags: string[] | null;
  tokens: string[];
  trace: ClauseTrace[];
}

export interface PreviewResponse {
  pattern_name: string;
  results: PreviewResult[];
}

export interface PatternsInfo {
  pattern_file_text: string;
  pattern_count: number;
  tagset: string[];
}

export interface SaveResult {
  pattern_count: number;
  warnings: string[];
}

export interface CoverageReport {
  overall: number;
  by_req_type: Record<string, number>;
  labeled_count: number;
  total_count: number;
}

export interface KappaPair {
  sentence_avg: number;
  overall: number;
}

export interface SentenceKappa {
  sent_id: string;
  kappa: number;
}

export interface AgreementReport {
  rows: Record<string, KappaPair>;
  per_sentence: SentenceKappa[];
  sentences_compared: number;
  tokens_compared: number;
}

export interface SentenceFilters {
  offset?: number;
  limit?: number;
  req_type?: string;
  labeled?: boolean;
}

/** status 0 means the request never reached the service (network down);
 * line is set when the service pinpointed a pattern-file line. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
    public readonly line: number | null = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function toApiError(resp: Response): Promise<ApiError> {
  let message = `HTTP ${resp.status}`;
  let line: number | null = null;
  try {
    const body = (await resp.json()) as { detail?: unknown };
    const detail = body.detail;
    if (typeof detail === "string") {
      message = detail;
    } else if (detail && typeof detail === "object") {
      const d = detail as { error?: unknown; line?: unknown };
      if (typeof d.error === "string") message = d.error;
      if (typeof d.line === "number") line = d.line;
    }
  } catch {
    /* non-JSON body: keep the status message */
  }
  return new ApiError(resp.status, message, line);
}

export class ApiClient {
  constructor(
    private readonly base: string = "/api/v1",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.base + path, {
        method,
        headers: body === undefined ? undefined : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
        signal,
      });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new ApiError(0, "service unreachable");
    }
    if (!resp.ok) throw await toApiError(resp);
    return (await resp.json()) as T;
  }

  listSentences(filters: SentenceFilters = {}): Promise<SentencesPage> {
    const params = new URLSearchParams();
    if (filters.offset !== undefined) params.set("offset", String(filters.offset));
    if (filters.limit !== undefined) params.set("limit", String(filters.limit));
    if (filters.req_type !== undefined) params.set("req_type", filters.req_type);
    if (filters.labeled !== undefined) params.set("labeled", String(filters.labeled));
    const query = params.toString();
    return this.request("GET", "/sentences" + (query ? "?" + query : ""));
  }

  getTree(sentId: string): Promise<TreeResponse> {
    return this.request("GET", `/sentences/${encodeURIComponent(sentId)}/tree`);
  }

  preview(
    patternText: string,
    sentenceIds?: string[],
    signal?: AbortSignal,
  ): Promise<PreviewResponse> {
    return this.request(
      "POST",
      "/preview",
      { pattern_text: patternText, sentence_ids: sentenceIds ?? null },
      signal,
    );
  }

  getPatterns(): Promise<PatternsInfo> {
    return this.request("GET", "/patterns");
  }

  savePatterns(patternFileText: string): Promise<SaveResult> {
    return this.request("PUT", "/patterns", { pattern_file_text: patternFileText });
  }

  coverage(): Promise<CoverageReport> {
    return this.request("GET", "/coverage");
  }

  agreement(): Promise<AgreementReport> {
    return this.request("GET", "/agreement");
  }
}
