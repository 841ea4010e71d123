/**
 * In-memory stand-in for the HTTP service, exposed as a fetch function.
 *
 * Query payloads are not synthesized: they were captured from the real
 * engine (tests/fixtures.json) and are keyed by the exact rule list, so the
 * UI tests see genuine wire shapes.  Session rules, history and datasets
 * follow the same semantics the server applies.
 */
import type { DatasetInfo, HistoryEntry, QueryResult, RuleInfo } from "../src/types";
import fixtures from "./fixtures.json";

export const FIXTURE_SQL: string = fixtures.sql;
export const CATALOG: RuleInfo[] = fixtures.catalog as RuleInfo[];

const CANNED: Record<string, QueryResult> = fixtures.queries as never;

export interface LoggedRequest {
  method: string;
  path: string;
  body?: unknown;
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export class FakeService {
  sessionRules: string[] = [];
  history: HistoryEntry[] = [];
  datasets: DatasetInfo[] = structuredClone(fixtures.datasets) as DatasetInfo[];
  log: LoggedRequest[] = [];
  private nextId = 1;
  /** set to delay responses, e.g. to observe the busy state */
  gate: Promise<void> | null = null;

  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    if (this.gate) await this.gate;
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(init.body as string) : undefined;
    this.log.push({ method, path, body });
    return this.route(method, path, body);
  };

  count(method: string, path: string): number {
    return this.log.filter((r) => r.method === method && r.path === path).length;
  }

  private route(method: string, path: string, body: any): Response {
    if (method === "POST" && path === "/query") return this.runQuery(body);
    if (method === "GET" && path === "/session/rules") {
      return json(200, { rules: this.sessionRules });
    }
    if (method === "PUT" && path === "/session/rules") return this.putRules(body);
    if (method === "GET" && path === "/rules") return json(200, { rules: CATALOG });
    if (method === "GET" && path === "/history") return json(200, { history: this.history });
    if (method === "DELETE" && path === "/history") {
      const n = this.history.length;
      this.history = [];
      return json(200, { cleared: n });
    }
    if (method === "GET" && path === "/datasets") {
      return json(200, { datasets: this.datasets });
    }
    if (method === "POST" && path === "/datasets") return this.addDataset(body);
    if (method === "DELETE" && path.startsWith("/datasets/")) {
      return this.dropDataset(decodeURIComponent(path.slice("/datasets/".length)));
    }
    return json(404, { stage: "http", message: `no route ${method} ${path}` });
  }

  private runQuery(body: { sql: string; rules?: string[] }): Response {
    const rules = body.rules ?? this.sessionRules;
    if (body.sql !== FIXTURE_SQL) {
      return json(400, {
        stage: "parse",
        message: "unknown statement keyword 'selec'",
        position: 0,
      });
    }
    const canned = CANNED[JSON.stringify(rules)];
    if (!canned) {
      throw new Error(`no fixture for rule list ${JSON.stringify(rules)}`);
    }
    const entry: HistoryEntry = {
      id: this.nextId++,
      sql: body.sql,
      rules: [...rules],
      cost_initial: canned.cost_initial,
      cost_optimized: canned.cost_optimized,
      elapsed_ms: canned.elapsed_ms,
      rows_returned: canned.rows.length,
      issued_at: "2026-08-19T00:00:00.000+00:00",
    };
    this.history.push(entry);
    return json(200, { ...canned, history_id: entry.id });
  }

  private putRules(body: { rules: string[] }): Response {
    const known = new Set(CATALOG.map((r) => r.name));
    const seen = new Set<string>();
    for (const name of body.rules) {
      if (!known.has(name)) {
        return json(400, { stage: "rules", message: `unknown rule '${name}'` });
      }
      if (seen.has(name)) {
        return json(400, { stage: "rules", message: `duplicate rule '${name}'` });
      }
      seen.add(name);
    }
    this.sessionRules = [...body.rules];
    return json(200, { rules: this.sessionRules });
  }

  private addDataset(body: { name: string; csv: string }): Response {
    if (this.datasets.some((d) => d.name === body.name)) {
      return json(409, {
        stage: "catalog",
        message: `table '${body.name}' already exists`,
      });
    }
    const header = body.csv.split("\n")[0] ?? "";
    if (!header.includes(":")) {
      return json(400, { stage: "catalog", message: "header must be name:type pairs" });
    }
    const columns = header.split(",").map((part) => {
      const [name, type] = part.split(":");
      return { name: name.trim(), type: (type ?? "").trim() };
    });
    const rows = body.csv.trim().split("\n").length - 1;
    const info: DatasetInfo = { name: body.name, columns, rows };
    this.datasets.push(info);
    this.datasets.sort((a, b) => (a.name < b.name ? -1 : 1));
    return json(201, info);
  }

  private dropDataset(name: string): Response {
    const before = this.datasets.length;
    this.datasets = this.datasets.filter((d) => d.name !== name);
    if (this.datasets.length === before) {
      return json(404, { stage: "catalog", message: `unknown table '${name}'` });
    }
    return json(200, { dropped: name });
  }
}
