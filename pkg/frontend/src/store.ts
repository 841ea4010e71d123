import { ApiClient, ApiError } from "./api";
import type {
  DatasetInfo,
  ErrorBody,
  HistoryEntry,
  QueryResult,
  RuleInfo,
} from "./types";

export interface UiState {
  /** one request at a time; views disable controls while set */
  busy: boolean;
  sql: string;
  sessionRules: string[];
  catalog: RuleInfo[];
  result: QueryResult | null;
  error: ErrorBody | null;
  warning: string | null;
  history: HistoryEntry[];
  datasets: DatasetInfo[];
  /** last sql that ran successfully; rule changes re-run this one */
  lastSql: string | null;
}

type Listener = (state: UiState) => void;

function initialState(): UiState {
  return {
    busy: false,
    sql: "",
    sessionRules: [],
    catalog: [],
    result: null,
    error: null,
    warning: null,
    history: [],
    datasets: [],
    lastSql: null,
  };
}

/**
 * All console state and the transitions between states.
 *
 * Every number and plan shown in the UI is taken verbatim from a service
 * response; nothing is recomputed here.  The store also enforces the two
 * interaction contracts: a single in-flight request, and rule-list edits
 * that first persist the list to the session and then re-run the last
 * successful query so the panels and history reflect the new list.
 */
export class Store {
  private state: UiState = initialState();
  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  getState(): UiState {
    return this.state;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private set(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  /** Load the rule catalog, session rules, history and datasets. */
  async init(): Promise<void> {
    const [catalog, sessionRules, history, datasets] = await Promise.all([
      this.api.rules(),
      this.api.sessionRules(),
      this.api.history(),
      this.api.datasets(),
    ]);
    this.set({ catalog, sessionRules, history, datasets });
  }

  setSql(sql: string): void {
    this.set({ sql });
  }

  canSubmit(): boolean {
    return !this.state.busy && this.state.sql.trim() !== "";
  }

  async submit(): Promise<void> {
    if (!this.canSubmit()) return;
    await this.runSql(this.state.sql);
  }

  private async runSql(sql: string): Promise<void> {
    this.set({ busy: true, error: null });
    try {
      const result = await this.api.runQuery(sql);
      const history = await this.api.history();
      this.set({
        busy: false,
        result,
        history,
        lastSql: sql,
        warning: result.warning ?? null,
      });
    } catch (err) {
      this.fail(err);
    }
  }

  private fail(err: unknown): void {
    if (err instanceof ApiError) {
      const error: ErrorBody = { stage: err.stage, message: err.message };
      if (err.position !== undefined) error.position = err.position;
      this.set({ busy: false, error });
    } else {
      this.set({
        busy: false,
        error: { stage: "network", message: String(err) },
      });
    }
  }

  // --- rule list edits -------------------------------------------------

  addRule(name: string): Promise<void> {
    return this.mutateRules([...this.state.sessionRules, name]);
  }

  removeRule(index: number): Promise<void> {
    const next = this.state.sessionRules.filter((_, i) => i !== index);
    return this.mutateRules(next);
  }

  moveRule(index: number, delta: -1 | 1): Promise<void> {
    const next = [...this.state.sessionRules];
    const target = index + delta;
    if (target < 0 || target >= next.length) return Promise.resolve();
    [next[index], next[target]] = [next[target], next[index]];
    return this.mutateRules(next);
  }

  /** Persist a new rule list, then re-run the last query under it. */
  private async mutateRules(next: string[]): Promise<void> {
    if (this.state.busy) return;
    this.set({ busy: true, error: null });
    let accepted: string[];
    try {
      accepted = await this.api.setSessionRules(next);
    } catch (err) {
      // rejected lists leave the session untouched server-side, so the
      // rendered list stays as it was
      this.fail(err);
      return;
    }
    this.set({ busy: false, sessionRules: accepted });
    if (this.state.lastSql !== null) {
      await this.runSql(this.state.lastSql);
    }
  }

  // --- history ----------------------------------------------------------

  /** Put a past query's text and rule list back into the console. */
  async restore(entry: HistoryEntry): Promise<void> {
    if (this.state.busy) return;
    this.set({ busy: true, error: null, sql: entry.sql });
    try {
      const accepted = await this.api.setSessionRules(entry.rules);
      this.set({ busy: false, sessionRules: accepted });
    } catch (err) {
      this.fail(err);
    }
  }

  async clearHistory(): Promise<void> {
    if (this.state.busy) return;
    this.set({ busy: true });
    try {
      await this.api.clearHistory();
      const history = await this.api.history();
      this.set({ busy: false, history });
    } catch (err) {
      this.fail(err);
    }
  }

  // --- datasets ---------------------------------------------------------

  async refreshDatasets(): Promise<void> {
    const datasets = await this.api.datasets();
    this.set({ datasets });
  }

  /** Returns the error body on failure so the modal can show it in place. */
  async addDataset(name: string, csv: string): Promise<ErrorBody | null> {
    if (this.state.busy) return { stage: "catalog", message: "busy" };
    this.set({ busy: true });
    try {
      await this.api.addDataset(name, csv);
      const datasets = await this.api.datasets();
      this.set({ busy: false, datasets });
      return null;
    } catch (err) {
      this.set({ busy: false });
      if (err instanceof ApiError) {
        return { stage: err.stage, message: err.message };
      }
      return { stage: "network", message: String(err) };
    }
  }

  async dropDataset(name: string): Promise<ErrorBody | null> {
    if (this.state.busy) return { stage: "catalog", message: "busy" };
    this.set({ busy: true });
    try {
      await this.api.dropDataset(name);
      const datasets = await this.api.datasets();
      this.set({ busy: false, datasets });
      return null;
    } catch (err) {
      this.set({ busy: false });
      if (err instanceof ApiError) {
        return { stage: err.stage, message: err.message };
      }
      return { stage: "network", message: String(err) };
    }
  }
}
