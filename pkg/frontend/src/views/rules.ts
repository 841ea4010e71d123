import { clear, el } from "../dom";
import type { Store, UiState } from "../store";

/**
 * The session rule list.  "+" opens a picker over the rules the engine
 * knows that are not yet in the list; each row has remove and reorder
 * buttons.  Every edit round-trips through the server before it shows.
 */
export function mountRules(container: HTMLElement, store: Store): void {
  const header = el("div", { class: "rules-header" });
  const addBtn = el("button", { class: "add-rule-btn", id: "add-rule-btn", text: "+" });
  header.append(el("span", { class: "panel-title", text: "rules" }), addBtn);

  const picker = el("div", { class: "rule-picker hidden", id: "rule-picker" });
  const list = el("ul", { class: "rule-list", id: "rule-list" });
  container.append(header, picker, list);

  let pickerOpen = false;
  addBtn.addEventListener("click", () => {
    pickerOpen = !pickerOpen;
    picker.classList.toggle("hidden", !pickerOpen);
    renderPicker(store.getState());
  });

  const renderPicker = (state: UiState) => {
    clear(picker);
    if (!pickerOpen) return;
    const available = state.catalog.filter(
      (r) => !state.sessionRules.includes(r.name),
    );
    if (available.length === 0) {
      picker.append(el("div", { class: "picker-empty", text: "every rule is in use" }));
      return;
    }
    for (const rule of available) {
      picker.append(
        el("button", {
          class: "picker-item",
          title: rule.description,
          text: `${rule.name} (${rule.origin})`,
          disabled: state.busy,
          onClick: () => {
            pickerOpen = false;
            picker.classList.add("hidden");
            void store.addRule(rule.name);
          },
        }),
      );
    }
  };

  const renderList = (state: UiState) => {
    clear(list);
    if (state.sessionRules.length === 0) {
      list.append(el("li", { class: "rule-none", text: "(none; queries run unoptimized)" }));
      return;
    }
    state.sessionRules.forEach((name, i) => {
      const up = el("button", {
        class: "rule-up",
        text: "↑",
        disabled: state.busy || i === 0,
        onClick: () => void store.moveRule(i, -1),
      });
      const down = el("button", {
        class: "rule-down",
        text: "↓",
        disabled: state.busy || i === state.sessionRules.length - 1,
        onClick: () => void store.moveRule(i, 1),
      });
      const remove = el("button", {
        class: "rule-remove",
        text: "−",
        disabled: state.busy,
        onClick: () => void store.removeRule(i),
      });
      list.append(
        el("li", { class: "rule-item" }, [
          el("span", { class: "rule-name", text: name }),
          up,
          down,
          remove,
        ]),
      );
    });
  };

  const update = (state: UiState) => {
    addBtn.disabled = state.busy;
    renderPicker(state);
    renderList(state);
  };

  update(store.getState());
  store.subscribe(update);
}
