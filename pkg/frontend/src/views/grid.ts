import { clear, el } from "../dom";
import { fmtNum } from "../tree";
import type { Store, UiState } from "../store";

/** Result rows plus a one-line summary of what the run reported. */
export function mountGrid(container: HTMLElement, store: Store): void {
  const summary = el("div", { class: "grid-summary", id: "grid-summary" });
  const holder = el("div", { class: "grid-holder", id: "grid-holder" });
  container.append(summary, holder);

  const update = (state: UiState) => {
    clear(holder);
    const res = state.result;
    if (res === null) {
      summary.textContent = "no query run yet";
      return;
    }
    summary.textContent =
      `${res.rows.length} rows in ${fmtNum(res.elapsed_ms)} ms · ` +
      `cost ${fmtNum(res.cost_initial)} → ${fmtNum(res.cost_optimized)} · ` +
      `${res.applied_rules.length} rewrites`;
    if (res.rows.length === 0) {
      holder.append(el("div", { class: "grid-empty", text: "(no rows)" }));
      return;
    }
    const head = el("tr", {}, res.columns.map((c) => el("th", { text: c })));
    const body = res.rows.map((row) =>
      el("tr", {}, row.map((cell) => el("td", { text: String(cell) }))),
    );
    holder.append(
      el("table", { class: "grid" }, [
        el("thead", {}, [head]),
        el("tbody", {}, body),
      ]),
    );
  };

  update(store.getState());
  store.subscribe(update);
}
