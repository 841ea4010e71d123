import { ApiClient } from "./api";
import { el } from "./dom";
import { Store } from "./store";
import { mountConsole } from "./views/console";
import { mountDatasets } from "./views/datasets";
import { mountGrid } from "./views/grid";
import { mountHistory } from "./views/history";
import { mountPlans } from "./views/plans";
import { mountRules } from "./views/rules";

/**
 * Assemble the console inside `root` and load the initial server state.
 * Returns the store so tests can drive and observe the app.
 */
export function boot(root: HTMLElement, client: ApiClient): { store: Store; ready: Promise<void> } {
  const store = new Store(client);

  const topBar = el("div", { class: "top-bar" }, [
    el("span", { class: "app-title", text: "qsim console" }),
  ]);
  mountDatasets(topBar, store);

  const consoleBox = el("section", { class: "console-box", id: "console-box" });
  const gridBox = el("section", { class: "grid-box", id: "grid-box" });
  const plansBox = el("section", { class: "plans-box", id: "plans-box" });
  const rulesBox = el("aside", { class: "rules-box", id: "rules-box" });
  const historyBox = el("section", { class: "history-box", id: "history-box" });

  const main = el("div", { class: "main-col" }, [consoleBox, gridBox, plansBox]);
  const side = el("div", { class: "side-col" }, [rulesBox, historyBox]);
  root.append(topBar, el("div", { class: "columns" }, [main, side]));

  mountConsole(consoleBox, store);
  mountGrid(gridBox, store);
  mountPlans(plansBox, store);
  mountRules(rulesBox, store);
  mountHistory(historyBox, store);

  const ready = store.init();
  return { store, ready };
}
