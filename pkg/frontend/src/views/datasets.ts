import { clear, el } from "../dom";
import type { Store, UiState } from "../store";

/**
 * Modal for the loaded tables: list with delete buttons, plus an upload
 * form taking a table name and CSV text (typed, pasted, or read from a
 * chosen file).  Server rejections, duplicate names included, show up in
 * the modal rather than vanishing.
 */
export function mountDatasets(container: HTMLElement, store: Store): void {
  const openBtn = el("button", {
    class: "datasets-btn",
    id: "datasets-btn",
    text: "datasets",
  });
  container.append(openBtn);

  const overlay = el("div", { class: "modal-overlay hidden", id: "datasets-modal" });
  const modal = el("div", { class: "modal" });
  overlay.append(modal);
  document.body.append(overlay);

  const title = el("div", { class: "modal-title", text: "datasets" });
  const closeBtn = el("button", { class: "modal-close", id: "datasets-close", text: "close" });
  const listHolder = el("div", { class: "dataset-list", id: "dataset-list" });

  const nameInput = el("input", { class: "dataset-name", id: "dataset-name" });
  nameInput.placeholder = "table name";
  const csvInput = el("textarea", { class: "dataset-csv", id: "dataset-csv" });
  csvInput.rows = 5;
  csvInput.placeholder = "a:int,b:str\n1,x\n2,y";
  const fileInput = el("input", { class: "dataset-file", id: "dataset-file" });
  fileInput.type = "file";
  fileInput.accept = ".csv,text/csv";
  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    void file.text().then((text) => {
      csvInput.value = text;
      if (nameInput.value.trim() === "") {
        nameInput.value = file.name.replace(/\.csv$/i, "");
      }
    });
  });
  const uploadBtn = el("button", { class: "dataset-upload", id: "dataset-upload", text: "upload" });
  const errorLine = el("div", { class: "modal-error", id: "dataset-error" });

  modal.append(
    el("div", { class: "modal-head" }, [title, closeBtn]),
    listHolder,
    el("div", { class: "upload-form" }, [nameInput, fileInput, csvInput, uploadBtn]),
    errorLine,
  );

  openBtn.addEventListener("click", () => {
    errorLine.textContent = "";
    overlay.classList.remove("hidden");
    void store.refreshDatasets();
  });
  closeBtn.addEventListener("click", () => overlay.classList.add("hidden"));
  overlay.addEventListener("click", (ev) => {
    if (ev.target === overlay) overlay.classList.add("hidden");
  });

  uploadBtn.addEventListener("click", () => {
    const name = nameInput.value.trim();
    const csv = csvInput.value;
    if (name === "" || csv.trim() === "") {
      errorLine.textContent = "name and CSV are both required";
      return;
    }
    void store.addDataset(name, csv).then((err) => {
      if (err) {
        errorLine.textContent = `${err.stage} error: ${err.message}`;
      } else {
        errorLine.textContent = "";
        nameInput.value = "";
        csvInput.value = "";
        fileInput.value = "";
      }
    });
  });

  const renderList = (state: UiState) => {
    clear(listHolder);
    if (state.datasets.length === 0) {
      listHolder.append(el("div", { class: "dataset-none", text: "(no tables loaded)" }));
      return;
    }
    for (const ds of state.datasets) {
      const cols = ds.columns.map((c) => `${c.name}:${c.type}`).join(", ");
      const dropBtn = el("button", {
        class: "dataset-drop",
        text: "delete",
        disabled: state.busy,
        onClick: () => {
          void store.dropDataset(ds.name).then((err) => {
            errorLine.textContent = err ? `${err.stage} error: ${err.message}` : "";
          });
        },
      });
      listHolder.append(
        el("div", { class: "dataset-row" }, [
          el("span", { class: "dataset-title", text: `${ds.name} (${ds.rows} rows)` }),
          el("span", { class: "dataset-cols", text: cols }),
          dropBtn,
        ]),
      );
    }
  };

  const update = (state: UiState) => {
    openBtn.disabled = state.busy;
    uploadBtn.disabled = state.busy;
    renderList(state);
  };

  update(store.getState());
  store.subscribe(update);
}
