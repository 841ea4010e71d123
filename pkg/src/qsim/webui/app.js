"use strict";
(() => {
  // src/api.ts
  var ApiError = class extends Error {
    constructor(status, body) {
      super(body.message);
      this.status = status;
      this.stage = body.stage;
      this.position = body.position;
    }
  };
  var ApiClient = class {
    constructor(base = "", fetchFn) {
      this.base = base.replace(/\/$/, "");
      this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
    }
    async request(method, path, body) {
      const init = { method };
      if (body !== void 0) {
        init.headers = { "content-type": "application/json" };
        init.body = JSON.stringify(body);
      }
      const resp = await this.fetchFn(this.base + path, init);
      const payload = await resp.json().catch(() => null);
      if (!resp.ok) {
        const detail = payload && typeof payload === "object" && "stage" in payload ? payload : { stage: "http", message: `${resp.status} ${resp.statusText}` };
        throw new ApiError(resp.status, detail);
      }
      return payload;
    }
    runQuery(sql, rules) {
      const body = { sql };
      if (rules !== void 0 && rules !== null) body.rules = rules;
      return this.request("POST", "/query", body);
    }
    async rules() {
      const out = await this.request("GET", "/rules");
      return out.rules;
    }
    async sessionRules() {
      const out = await this.request("GET", "/session/rules");
      return out.rules;
    }
    async setSessionRules(rules) {
      const out = await this.request("PUT", "/session/rules", { rules });
      return out.rules;
    }
    async history() {
      const out = await this.request("GET", "/history");
      return out.history;
    }
    async clearHistory() {
      const out = await this.request("DELETE", "/history");
      return out.cleared;
    }
    async datasets() {
      const out = await this.request("GET", "/datasets");
      return out.datasets;
    }
    addDataset(name, csv) {
      return this.request("POST", "/datasets", { name, csv });
    }
    async dropDataset(name) {
      await this.request("DELETE", `/datasets/${encodeURIComponent(name)}`);
    }
  };

  // src/dom.ts
  function el(tag, props = {}, children = []) {
    const node = document.createElement(tag);
    if (props.class) node.className = props.class;
    if (props.text !== void 0) node.textContent = props.text;
    if (props.title !== void 0) node.title = props.title;
    if (props.id) node.id = props.id;
    if (props.disabled && "disabled" in node) {
      node.disabled = true;
    }
    if (props.onClick) {
      node.addEventListener("click", props.onClick);
    }
    for (const child of children) {
      node.append(child);
    }
    return node;
  }
  function clear(node) {
    while (node.firstChild) node.removeChild(node.firstChild);
  }

  // src/store.ts
  function initialState() {
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
      lastSql: null
    };
  }
  var Store = class {
    constructor(api) {
      this.api = api;
      this.state = initialState();
      this.listeners = [];
    }
    getState() {
      return this.state;
    }
    subscribe(fn) {
      this.listeners.push(fn);
      return () => {
        this.listeners = this.listeners.filter((l) => l !== fn);
      };
    }
    set(patch) {
      this.state = { ...this.state, ...patch };
      for (const fn of this.listeners) fn(this.state);
    }
    /** Load the rule catalog, session rules, history and datasets. */
    async init() {
      const [catalog, sessionRules, history, datasets] = await Promise.all([
        this.api.rules(),
        this.api.sessionRules(),
        this.api.history(),
        this.api.datasets()
      ]);
      this.set({ catalog, sessionRules, history, datasets });
    }
    setSql(sql) {
      this.set({ sql });
    }
    canSubmit() {
      return !this.state.busy && this.state.sql.trim() !== "";
    }
    async submit() {
      if (!this.canSubmit()) return;
      await this.runSql(this.state.sql);
    }
    async runSql(sql) {
      this.set({ busy: true, error: null });
      try {
        const result = await this.api.runQuery(sql);
        const history = await this.api.history();
        this.set({
          busy: false,
          result,
          history,
          lastSql: sql,
          warning: result.warning ?? null
        });
      } catch (err) {
        this.fail(err);
      }
    }
    fail(err) {
      if (err instanceof ApiError) {
        const error = { stage: err.stage, message: err.message };
        if (err.position !== void 0) error.position = err.position;
        this.set({ busy: false, error });
      } else {
        this.set({
          busy: false,
          error: { stage: "network", message: String(err) }
        });
      }
    }
    // --- rule list edits -------------------------------------------------
    addRule(name) {
      return this.mutateRules([...this.state.sessionRules, name]);
    }
    removeRule(index) {
      const next = this.state.sessionRules.filter((_, i) => i !== index);
      return this.mutateRules(next);
    }
    moveRule(index, delta) {
      const next = [...this.state.sessionRules];
      const target = index + delta;
      if (target < 0 || target >= next.length) return Promise.resolve();
      [next[index], next[target]] = [next[target], next[index]];
      return this.mutateRules(next);
    }
    /** Persist a new rule list, then re-run the last query under it. */
    async mutateRules(next) {
      if (this.state.busy) return;
      this.set({ busy: true, error: null });
      let accepted;
      try {
        accepted = await this.api.setSessionRules(next);
      } catch (err) {
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
    async restore(entry) {
      if (this.state.busy) return;
      this.set({ busy: true, error: null, sql: entry.sql });
      try {
        const accepted = await this.api.setSessionRules(entry.rules);
        this.set({ busy: false, sessionRules: accepted });
      } catch (err) {
        this.fail(err);
      }
    }
    async clearHistory() {
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
    async refreshDatasets() {
      const datasets = await this.api.datasets();
      this.set({ datasets });
    }
    /** Returns the error body on failure so the modal can show it in place. */
    async addDataset(name, csv) {
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
    async dropDataset(name) {
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
  };

  // src/views/console.ts
  function mountConsole(container, store) {
    const input = el("textarea", { class: "sql-input", id: "sql-input" });
    input.rows = 3;
    input.placeholder = "SELECT ...";
    input.addEventListener("input", () => store.setSql(input.value));
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
      onClick: () => void store.submit()
    });
    runBtn.disabled = true;
    const errorLine = el("div", { class: "error-line", id: "error-line" });
    const warnLine = el("div", { class: "warn-line", id: "warn-line" });
    container.append(
      el("div", { class: "console-row" }, [input, runBtn]),
      errorLine,
      warnLine
    );
    const update = (state) => {
      if (input.value !== state.sql) input.value = state.sql;
      input.disabled = state.busy;
      runBtn.disabled = state.busy || state.sql.trim() === "";
      if (state.error) {
        const at = state.error.position !== void 0 ? ` (at ${state.error.position})` : "";
        errorLine.textContent = `${state.error.stage} error: ${state.error.message}${at}`;
      } else {
        errorLine.textContent = "";
      }
      warnLine.textContent = state.warning ?? "";
    };
    update(store.getState());
    store.subscribe(update);
  }

  // src/views/datasets.ts
  function mountDatasets(container, store) {
    const openBtn = el("button", {
      class: "datasets-btn",
      id: "datasets-btn",
      text: "datasets"
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
      errorLine
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
    const renderList = (state) => {
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
          }
        });
        listHolder.append(
          el("div", { class: "dataset-row" }, [
            el("span", { class: "dataset-title", text: `${ds.name} (${ds.rows} rows)` }),
            el("span", { class: "dataset-cols", text: cols }),
            dropBtn
          ])
        );
      }
    };
    const update = (state) => {
      openBtn.disabled = state.busy;
      uploadBtn.disabled = state.busy;
      renderList(state);
    };
    update(store.getState());
    store.subscribe(update);
  }

  // src/tree.ts
  function layoutTree(root2) {
    const nodes = [];
    const edges = [];
    let nextLeaf = 0;
    let depth = 0;
    const place = (doc, level) => {
      depth = Math.max(depth, level);
      let x;
      const children = [];
      if (doc.children.length === 0) {
        x = nextLeaf++;
      } else {
        for (const child of doc.children) {
          children.push(place(child, level + 1));
        }
        x = (children[0].x + children[children.length - 1].x) / 2;
      }
      const laid = { doc, x, y: level };
      nodes.push(laid);
      for (const child of children) {
        edges.push({ from: laid, to: child });
      }
      return laid;
    };
    place(root2, 0);
    return { nodes, edges, width: Math.max(nextLeaf, 1), depth };
  }
  function fmtNum(n) {
    if (n === null || n === void 0) return "?";
    if (Number.isInteger(n)) return String(n);
    const fixed = n.toFixed(2);
    return fixed.endsWith("00") ? String(Math.trunc(n)) : fixed;
  }
  function attrLines(doc) {
    return Object.entries(doc.attrs).map(([key, value]) => {
      const text = typeof value === "string" ? value : JSON.stringify(value);
      return `${key}: ${text}`;
    });
  }
  function labelDetail(doc) {
    return doc.label.startsWith(doc.kind) ? doc.label.slice(doc.kind.length).trim() : doc.label;
  }
  function samePlan(a, b) {
    return JSON.stringify(a) === JSON.stringify(b);
  }

  // src/views/grid.ts
  function mountGrid(container, store) {
    const summary = el("div", { class: "grid-summary", id: "grid-summary" });
    const holder = el("div", { class: "grid-holder", id: "grid-holder" });
    container.append(summary, holder);
    const update = (state) => {
      clear(holder);
      const res = state.result;
      if (res === null) {
        summary.textContent = "no query run yet";
        return;
      }
      summary.textContent = `${res.rows.length} rows in ${fmtNum(res.elapsed_ms)} ms \xB7 cost ${fmtNum(res.cost_initial)} \u2192 ${fmtNum(res.cost_optimized)} \xB7 ${res.applied_rules.length} rewrites`;
      if (res.rows.length === 0) {
        holder.append(el("div", { class: "grid-empty", text: "(no rows)" }));
        return;
      }
      const head = el("tr", {}, res.columns.map((c) => el("th", { text: c })));
      const body = res.rows.map(
        (row) => el("tr", {}, row.map((cell) => el("td", { text: String(cell) })))
      );
      holder.append(
        el("table", { class: "grid" }, [
          el("thead", {}, [head]),
          el("tbody", {}, body)
        ])
      );
    };
    update(store.getState());
    store.subscribe(update);
  }

  // src/views/history.ts
  function mountHistory(container, store) {
    const header = el("div", { class: "history-header" });
    const clearBtn = el("button", {
      class: "clear-history-btn",
      id: "clear-history-btn",
      text: "clear",
      onClick: () => void store.clearHistory()
    });
    header.append(el("span", { class: "panel-title", text: "history" }), clearBtn);
    const holder = el("div", { class: "history-holder", id: "history-holder" });
    container.append(header, holder);
    const update = (state) => {
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
        el("th", { text: "ms" })
      ]);
      const body = state.history.map((entry) => {
        const row = el("tr", { class: "history-row", title: entry.sql }, [
          el("td", { class: "hist-sql", text: entry.sql }),
          el("td", { class: "hist-rules", text: entry.rules.length ? entry.rules.join(", ") : "(none)" }),
          el("td", { text: fmtNum(entry.cost_initial) }),
          el("td", { text: fmtNum(entry.cost_optimized) }),
          el("td", { text: fmtNum(entry.elapsed_ms) })
        ]);
        row.addEventListener("click", () => void store.restore(entry));
        return row;
      });
      holder.append(
        el("table", { class: "history-table" }, [
          el("thead", {}, [head]),
          el("tbody", {}, body)
        ])
      );
    };
    update(store.getState());
    store.subscribe(update);
  }

  // src/views/plans.ts
  var COL_W = 170;
  var ROW_H = 88;
  var NODE_W = 150;
  var NODE_H = 60;
  var SVG_NS = "http://www.w3.org/2000/svg";
  function renderTree(doc) {
    const layout = layoutTree(doc);
    const width = layout.width * COL_W;
    const height = (layout.depth + 1) * ROW_H;
    const canvas = el("div", { class: "tree-canvas" });
    canvas.style.width = `${width}px`;
    canvas.style.height = `${height}px`;
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(width));
    svg.setAttribute("height", String(height));
    svg.classList.add("tree-edges");
    for (const edge of layout.edges) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(edge.from.x * COL_W + COL_W / 2));
      line.setAttribute("y1", String(edge.from.y * ROW_H + NODE_H / 2));
      line.setAttribute("x2", String(edge.to.x * COL_W + COL_W / 2));
      line.setAttribute("y2", String(edge.to.y * ROW_H + NODE_H / 2));
      svg.append(line);
    }
    canvas.append(svg);
    for (const node of layout.nodes) {
      const detail = labelDetail(node.doc);
      const tooltip = [node.doc.label, ...attrLines(node.doc)].join("\n");
      const box = el("div", { class: "tree-node", title: tooltip }, [
        el("div", { class: "node-kind", text: node.doc.kind }),
        el("div", { class: "node-detail", text: detail }),
        el("div", {
          class: "node-est",
          text: `rows ${fmtNum(node.doc.estimated_rows)} \xB7 cost ${fmtNum(node.doc.estimated_cost)}`
        })
      ]);
      box.style.left = `${node.x * COL_W + (COL_W - NODE_W) / 2}px`;
      box.style.top = `${node.y * ROW_H}px`;
      canvas.append(box);
    }
    return canvas;
  }
  function mountPlans(container, store) {
    const initialPane = el("div", { class: "plan-pane", id: "plan-initial" });
    const optimizedPane = el("div", { class: "plan-pane", id: "plan-optimized" });
    container.append(initialPane, optimizedPane);
    const fill = (pane, title, doc, note = "") => {
      clear(pane);
      pane.append(el("div", { class: "pane-title", text: note ? `${title} ${note}` : title }));
      if (doc === null) {
        pane.append(el("div", { class: "pane-empty", text: "\u2014" }));
        return;
      }
      const scroller = el("div", { class: "tree-scroll" }, [renderTree(doc)]);
      pane.append(scroller);
    };
    const update = (state) => {
      const res = state.result;
      if (res === null) {
        fill(initialPane, "initial plan", null);
        fill(optimizedPane, "optimized plan", null);
        return;
      }
      const identical = samePlan(res.initial_plan, res.optimized_plan);
      fill(initialPane, `initial plan \xB7 cost ${fmtNum(res.cost_initial)}`, res.initial_plan);
      fill(
        optimizedPane,
        `optimized plan \xB7 cost ${fmtNum(res.cost_optimized)}`,
        res.optimized_plan,
        identical ? "(unchanged)" : ""
      );
    };
    update(store.getState());
    store.subscribe(update);
  }

  // src/views/rules.ts
  function mountRules(container, store) {
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
    const renderPicker = (state) => {
      clear(picker);
      if (!pickerOpen) return;
      const available = state.catalog.filter(
        (r) => !state.sessionRules.includes(r.name)
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
            }
          })
        );
      }
    };
    const renderList = (state) => {
      clear(list);
      if (state.sessionRules.length === 0) {
        list.append(el("li", { class: "rule-none", text: "(none; queries run unoptimized)" }));
        return;
      }
      state.sessionRules.forEach((name, i) => {
        const up = el("button", {
          class: "rule-up",
          text: "\u2191",
          disabled: state.busy || i === 0,
          onClick: () => void store.moveRule(i, -1)
        });
        const down = el("button", {
          class: "rule-down",
          text: "\u2193",
          disabled: state.busy || i === state.sessionRules.length - 1,
          onClick: () => void store.moveRule(i, 1)
        });
        const remove = el("button", {
          class: "rule-remove",
          text: "\u2212",
          disabled: state.busy,
          onClick: () => void store.removeRule(i)
        });
        list.append(
          el("li", { class: "rule-item" }, [
            el("span", { class: "rule-name", text: name }),
            up,
            down,
            remove
          ])
        );
      });
    };
    const update = (state) => {
      addBtn.disabled = state.busy;
      renderPicker(state);
      renderList(state);
    };
    update(store.getState());
    store.subscribe(update);
  }

  // src/app.ts
  function boot(root2, client) {
    const store = new Store(client);
    const topBar = el("div", { class: "top-bar" }, [
      el("span", { class: "app-title", text: "qsim console" })
    ]);
    mountDatasets(topBar, store);
    const consoleBox = el("section", { class: "console-box", id: "console-box" });
    const gridBox = el("section", { class: "grid-box", id: "grid-box" });
    const plansBox = el("section", { class: "plans-box", id: "plans-box" });
    const rulesBox = el("aside", { class: "rules-box", id: "rules-box" });
    const historyBox = el("section", { class: "history-box", id: "history-box" });
    const main = el("div", { class: "main-col" }, [consoleBox, gridBox, plansBox]);
    const side = el("div", { class: "side-col" }, [rulesBox, historyBox]);
    root2.append(topBar, el("div", { class: "columns" }, [main, side]));
    mountConsole(consoleBox, store);
    mountGrid(gridBox, store);
    mountPlans(plansBox, store);
    mountRules(rulesBox, store);
    mountHistory(historyBox, store);
    const ready = store.init();
    return { store, ready };
  }

  // src/main.ts
  var root = document.getElementById("app");
  if (root) {
    const { ready } = boot(root, new ApiClient(""));
    ready.catch((err) => {
      const note = document.createElement("div");
      note.className = "boot-error";
      note.textContent = `could not reach the service: ${err}`;
      root.prepend(note);
    });
  }
})();
