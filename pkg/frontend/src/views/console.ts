import { el } from "../dom";
import type { Store, UiState } from "../store";

/**
 * Query input with a run button.  The button stays disabled while the input
 * is blank or a request is in flight; pipeline errors appear right under the
 * input with their stage and, when the server gives one, the character
 * position.
 */
export function mountConsole(container: HTMLElement, store: Store): void {
  const input = el("textarea", { class: "sql-input", id: "sql-input" });
  input.rows = 3;
  input.placeholder = "SELECT ...";
  input.addEventListener("input", () => store.setSql(input.value));
  // ctrl+enter submits, same as the button
  input.addEventListener("keydown", (ev) => {
    if (ev.key === "Enter" && (ev.ctrlKey || ev.metaKey)) {
      ev.preventDefault();
      void store.submit();
    }
  });

  const runBtn = el("button", {
    class: "run-btn",
    id: "run-btn",
    text: "run",
    onClick: () => void store.submit(),
  });
  runBtn.disabled = true;

  const errorLine = el("div", { class: "error-line", id: "error-line" });
  const warnLine = el("div", { class: "warn-line", id: "warn-line" });

  container.append(
    el("div", { class: "console-row" }, [input, runBtn]),
    errorLine,
    warnLine,
  );

  const update = (state: UiState) => {
    // only push the store's text into the box when it changed elsewhere
    // (history restore); otherwise leave the caret alone
    if (input.value !== state.sql) input.value = state.sql;
    input.disabled = state.busy;
    runBtn.disabled = state.busy || state.sql.trim() === "";
    if (state.error) {
      const at = state.error.position !== undefined ? ` (at ${state.error.position})` : "";
      errorLine.textContent = `${state.error.stage} error: ${state.error.message}${at}`;
    } else {
      errorLine.textContent = "";
    }
    warnLine.textContent = state.warning ?? "";
  };

  update(store.getState());
  store.subscribe(update);
}
