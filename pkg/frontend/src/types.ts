/** Wire types for the qsim service.  Field names match the JSON exactly. */

export interface PlanDoc {
  kind: string;
  label: string;
  attrs: Record<string, unknown>;
  estimated_rows: number | null;
  estimated_cost: number | null;
  children: PlanDoc[];
}

export interface AppliedRule {
  iteration: number;
  rule: string;
  path: string;
  change: string;
}

export interface OperatorStat {
  kind: string;
  rows_emitted: number;
}

export interface ExecStats {
  rows_emitted: number;
  operators: OperatorStat[];
  /* extensions may add counters, e.g. distance_evals */
  [counter: string]: unknown;
}

export interface QueryResult {
  columns: string[];
  rows: unknown[][];
  initial_plan: PlanDoc;
  optimized_plan: PlanDoc;
  cost_initial: number;
  cost_optimized: number;
  elapsed_ms: number;
  applied_rules: AppliedRule[];
  iterations: number;
  stats: ExecStats;
  history_id: number;
  warning?: string;
}

export interface RuleInfo {
  name: string;
  origin: string;
  description: string;
}

export interface HistoryEntry {
  id: number;
  sql: string;
  rules: string[];
  cost_initial: number;
  cost_optimized: number;
  elapsed_ms: number;
  rows_returned: number;
  issued_at: string;
}

export interface ColumnInfo {
  name: string;
  type: string;
}

export interface DatasetInfo {
  name: string;
  columns: ColumnInfo[];
  rows: number;
}

/** Error body the service sends with 4xx responses. */
export interface ErrorBody {
  stage: string;
  message: string;
  position?: number;
}
