import { clear, el } from "../dom";
import { fmtNum } from "../tree";
import type { Store, UiState } from "../store";

/**
 * Past runs, oldest first so the latest sits at the bottom.  Clicking a row
 * puts that query and its rule list back into the console for another go.
 */
export function mountHistory(container: HTMLElement, store: Store): void {
  const header = el("div", { class: "history-header" });
  const clearBtn = el("button", {
    class: "clear-history-btn",
    id: "clear-history-btn",
    text: "clear",
    onClick: () => void store.clearHistory(),
  });
  header.append(el("span", { class: "panel-title", text: "history" }), clearBtn);

  const holder = el("div", { class: "history-holder", id: "history-holder" });
  container.append(header, holder);

  const update = (state: UiState) => {
    clearBtn.disabled = state.busy;
    clear(holder);
    if (state.history.length === 0) {
      holder.append(el("div", { class: "history-empty", text: "(empty)" }));
      return;
    }
    const head = el("tr", {}, [
      el("th", { text: "query" }),
      el("th", { text: "rules" }),
      el("th", { text: "cost before" }),
      el("th", { text: "cost after" }),
      el("th", { text: "ms" }),
    ]);
    const body = state.history.map((entry) => {
      const row = el("tr", { class: "history-row", title: entry.sql }, [
        el("td", { class: "hist-sql", text: entry.sql }),
        el("td", { class: "hist-rules", text: entry.rules.length ? entry.rules.join(", ") : "(none)" }),
        el("td", { text: fmtNum(entry.cost_initial) }),
        el("td", { text: fmtNum(entry.cost_optimized) }),
        el("td", { text: fmtNum(entry.elapsed_ms) }),
      ]);
      row.addEventListener("click", () => void store.restore(entry));
      return row;
    });
    holder.append(
      el("table", { class: "history-table" }, [
        el("thead", {}, [head]),
        el("tbody", {}, body),
      ]),
    );
  };

  update(store.getState());
  store.subscribe(update);
}
