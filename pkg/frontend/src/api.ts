import type {
  DatasetInfo,
  ErrorBody,
  HistoryEntry,
  QueryResult,
  RuleInfo,
} from "./types";

/** A non-2xx response, carrying the service's {stage, message, position?}. */
export class ApiError extends Error {
  readonly status: number;
  readonly stage: string;
  readonly position: number | undefined;

  constructor(status: number, body: ErrorBody) {
    super(body.message);
    this.status = status;
    this.stage = body.stage;
    this.position = body.position;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/**
 * Typed client for the service endpoints the console uses.
 *
 * `base` is prepended to every path; empty string means same-origin, which is
 * the normal case when the service itself hosts the bundle.
 */
export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base = "", fetchFn?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    // wrap the global so we never call window.fetch with a foreign `this`
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(this.base + path, init);
    const payload = await resp.json().catch(() => null);
    if (!resp.ok) {
      const detail =
        payload && typeof payload === "object" && "stage" in payload
          ? (payload as ErrorBody)
          : { stage: "http", message: `${resp.status} ${resp.statusText}` };
      throw new ApiError(resp.status, detail);
    }
    return payload as T;
  }

  runQuery(sql: string, rules?: string[] | null): Promise<QueryResult> {
    // rules omitted -> the server applies the session rule list
    const body: Record<string, unknown> = { sql };
    if (rules !== undefined && rules !== null) body.rules = rules;
    return this.request<QueryResult>("POST", "/query", body);
  }

  async rules(): Promise<RuleInfo[]> {
    const out = await this.request<{ rules: RuleInfo[] }>("GET", "/rules");
    return out.rules;
  }

  async sessionRules(): Promise<string[]> {
    const out = await this.request<{ rules: string[] }>("GET", "/session/rules");
    return out.rules;
  }

  async setSessionRules(rules: string[]): Promise<string[]> {
    const out = await this.request<{ rules: string[] }>("PUT", "/session/rules", { rules });
    return out.rules;
  }

  async history(): Promise<HistoryEntry[]> {
    const out = await this.request<{ history: HistoryEntry[] }>("GET", "/history");
    return out.history;
  }

  async clearHistory(): Promise<number> {
    const out = await this.request<{ cleared: number }>("DELETE", "/history");
    return out.cleared;
  }

  async datasets(): Promise<DatasetInfo[]> {
    const out = await this.request<{ datasets: DatasetInfo[] }>("GET", "/datasets");
    return out.datasets;
  }

  addDataset(name: string, csv: string): Promise<DatasetInfo> {
    return this.request<DatasetInfo>("POST", "/datasets", { name, csv });
  }

  async dropDataset(name: string): Promise<void> {
    await this.request<{ dropped: string }>("DELETE", `/datasets/${encodeURIComponent(name)}`);
  }
}
