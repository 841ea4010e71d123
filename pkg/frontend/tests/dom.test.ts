// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";
import { ApiClient } from "../src/api";
import { boot } from "../src/app";
import type { Store } from "../src/store";
import { FakeService, FIXTURE_SQL, CATALOG } from "./fake-service";

let svc: FakeService;
let store: Store;

async function settle(): Promise<void> {
  // let queued handlers and their follow-up fetches drain
  for (let i = 0; i < 6; i++) {
    await new Promise((res) => setTimeout(res, 0));
  }
}

function $(sel: string): HTMLElement {
  const node = document.querySelector(sel);
  if (!node) throw new Error(`missing element ${sel}`);
  return node as HTMLElement;
}

function typeSql(text: string): void {
  const input = $("#sql-input") as HTMLTextAreaElement;
  input.value = text;
  input.dispatchEvent(new Event("input"));
}

function clickRun(): void {
  $("#run-btn").click();
}

async function runFixtureQuery(): Promise<void> {
  typeSql(FIXTURE_SQL);
  clickRun();
  await settle();
}

beforeEach(async () => {
  document.body.innerHTML = '<div id="app"></div>';
  svc = new FakeService();
  const booted = boot($("#app"), new ApiClient("", svc.fetch));
  store = booted.store;
  await booted.ready;
  await settle();
});

describe("layout", () => {
  it("mounts all six blocks", () => {
    for (const sel of [
      "#console-box", "#grid-box", "#plan-initial", "#plan-optimized",
      "#rule-list", "#history-holder", "#datasets-btn",
    ]) {
      expect(document.querySelector(sel), sel).not.toBeNull();
    }
  });
});

describe("query console", () => {
  it("keeps run disabled until there is text", () => {
    const btn = $("#run-btn") as HTMLButtonElement;
    expect(btn.disabled).toBe(true);
    typeSql("   ");
    expect(btn.disabled).toBe(true);
    typeSql("SELECT a FROM t3");
    expect(btn.disabled).toBe(false);
  });

  it("fills the grid and both plan panes on success", async () => {
    await runFixtureQuery();
    expect($("#grid-summary").textContent).toContain("440 rows");
    expect($("#grid-summary").textContent).toContain("26200");
    const cells = document.querySelectorAll("#grid-holder tbody tr");
    expect(cells).toHaveLength(440);
    const headers = [...document.querySelectorAll("#grid-holder th")].map(
      (th) => th.textContent,
    );
    expect(headers).toEqual(["t1.c", "t1.a", "t1.v", "t2.c", "t2.b", "t2.s"]);
    expect(document.querySelectorAll("#plan-initial .tree-node").length).toBeGreaterThan(3);
    expect(document.querySelectorAll("#plan-optimized .tree-node").length).toBeGreaterThan(3);
  });

  it("renders identical trees and says so when no rules are set", async () => {
    await runFixtureQuery();
    const a = $("#plan-initial").querySelector(".tree-canvas")!.innerHTML;
    const b = $("#plan-optimized").querySelector(".tree-canvas")!.innerHTML;
    expect(a).toBe(b);
    expect($("#plan-optimized .pane-title").textContent).toContain("(unchanged)");
  });

  it("shows stage and position under the input on a parse error", async () => {
    await runFixtureQuery();
    typeSql("SELEC a FROM t3");
    clickRun();
    await settle();
    expect($("#error-line").textContent).toBe(
      "parse error: unknown statement keyword 'selec' (at 0)",
    );
    // previous result stays on screen
    expect(document.querySelectorAll("#grid-holder tbody tr")).toHaveLength(440);
    // a successful run clears the message
    typeSql(FIXTURE_SQL);
    clickRun();
    await settle();
    expect($("#error-line").textContent).toBe("");
  });

  it("labels plan nodes with kind, detail and estimates, full attrs on hover", async () => {
    await runFixtureQuery();
    const boxes = [...document.querySelectorAll("#plan-initial .tree-node")];
    const filterBox = boxes.find(
      (b) => b.querySelector(".node-kind")?.textContent === "Filter",
    ) as HTMLElement;
    expect(filterBox).toBeDefined();
    expect(filterBox.querySelector(".node-detail")?.textContent).toBe("t1.c = t2.c");
    expect(filterBox.title).toContain("predicate: t1.c = t2.c");
    expect(filterBox.querySelector(".node-est")?.textContent).toMatch(/rows .+ · cost .+/);
    const scanBox = boxes.find(
      (b) => b.querySelector(".node-kind")?.textContent === "Scan",
    ) as HTMLElement;
    expect(scanBox.querySelector(".node-est")?.textContent).toBe("rows 100 · cost 100");
  });

  it("disables the controls while a request is in flight", async () => {
    typeSql(FIXTURE_SQL);
    let release!: () => void;
    svc.gate = new Promise((res) => (release = res));
    clickRun();
    await Promise.resolve();
    expect(($("#run-btn") as HTMLButtonElement).disabled).toBe(true);
    expect(($("#sql-input") as HTMLTextAreaElement).disabled).toBe(true);
    expect(($("#add-rule-btn") as HTMLButtonElement).disabled).toBe(true);
    expect(($("#clear-history-btn") as HTMLButtonElement).disabled).toBe(true);
    release();
    svc.gate = null;
    await settle();
    expect(($("#run-btn") as HTMLButtonElement).disabled).toBe(false);
    expect(svc.count("POST", "/query")).toBe(1);
  });
});

describe("rule menu", () => {
  it("lists every catalog rule in the picker and hides ones already chosen", async () => {
    $("#add-rule-btn").click();
    let items = [...document.querySelectorAll(".picker-item")].map((b) => b.textContent);
    expect(items).toEqual(CATALOG.map((r) => `${r.name} (${r.origin})`));

    ([...document.querySelectorAll(".picker-item")] as HTMLButtonElement[])
      .find((b) => b.textContent!.startsWith("MergeFilters"))!
      .click();
    await settle();
    expect(store.getState().sessionRules).toEqual(["MergeFilters"]);

    $("#add-rule-btn").click();
    items = [...document.querySelectorAll(".picker-item")].map((b) => b.textContent);
    expect(items).toHaveLength(CATALOG.length - 1);
    expect(items.some((t) => t!.startsWith("MergeFilters"))).toBe(false);
  });

  it("adding a rule after a run re-runs it and appends exactly one history row", async () => {
    await runFixtureQuery();
    expect(document.querySelectorAll(".history-row")).toHaveLength(1);
    svc.log = [];

    $("#add-rule-btn").click();
    ([...document.querySelectorAll(".picker-item")] as HTMLButtonElement[])
      .find((b) => b.textContent!.startsWith("PushSimFilterIntoCross"))!
      .click();
    await settle();

    expect(svc.count("PUT", "/session/rules")).toBe(1);
    expect(svc.count("POST", "/query")).toBe(1);
    const rows = [...document.querySelectorAll(".history-row")];
    expect(rows).toHaveLength(2);
    expect(rows[1].textContent).toContain("2600");
    // optimized pane now differs from the initial one
    const a = $("#plan-initial").querySelector(".tree-canvas")!.innerHTML;
    const b = $("#plan-optimized").querySelector(".tree-canvas")!.innerHTML;
    expect(a).not.toBe(b);
    expect($("#plan-optimized .pane-title").textContent).not.toContain("(unchanged)");
  });

  it("rule rows remove and reorder, re-running each time", async () => {
    await runFixtureQuery();
    for (const name of ["SplitConjunctiveFilter", "PushFilterIntoCross"]) {
      $("#add-rule-btn").click();
      ([...document.querySelectorAll(".picker-item")] as HTMLButtonElement[])
        .find((b) => b.textContent!.startsWith(name))!
        .click();
      await settle();
    }
    expect(store.getState().sessionRules).toEqual(
      ["SplitConjunctiveFilter", "PushFilterIntoCross"],
    );
    const runsBefore = svc.count("POST", "/query");

    const secondRow = document.querySelectorAll(".rule-item")[1];
    (secondRow.querySelector(".rule-up") as HTMLButtonElement).click();
    await settle();
    expect(store.getState().sessionRules).toEqual(
      ["PushFilterIntoCross", "SplitConjunctiveFilter"],
    );
    expect(svc.count("POST", "/query")).toBe(runsBefore + 1);

    // remove both; list empties and the trees match again
    while (document.querySelector(".rule-remove")) {
      (document.querySelector(".rule-remove") as HTMLButtonElement).click();
      await settle();
    }
    expect(store.getState().sessionRules).toEqual([]);
    expect($("#rule-list").textContent).toContain("(none");
    const a = $("#plan-initial").querySelector(".tree-canvas")!.innerHTML;
    const b = $("#plan-optimized").querySelector(".tree-canvas")!.innerHTML;
    expect(a).toBe(b);
  });
});

describe("history table", () => {
  it("appends newest last and restores on click without running", async () => {
    await runFixtureQuery();
    $("#add-rule-btn").click();
    ([...document.querySelectorAll(".picker-item")] as HTMLButtonElement[])
      .find((b) => b.textContent!.startsWith("PushSimFilterIntoCross"))!
      .click();
    await settle();

    const rows = [...document.querySelectorAll(".history-row")];
    expect(rows).toHaveLength(2);
    // oldest first: the bare run sits on top
    expect(rows[0].textContent).toContain("(none)");
    expect(rows[1].textContent).toContain("PushSimFilterIntoCross");

    svc.log = [];
    (rows[0] as HTMLElement).click();
    await settle();
    expect(($("#sql-input") as HTMLTextAreaElement).value).toBe(FIXTURE_SQL);
    expect(store.getState().sessionRules).toEqual([]);
    expect(svc.count("PUT", "/session/rules")).toBe(1);
    expect(svc.count("POST", "/query")).toBe(0);
    expect($("#rule-list").textContent).toContain("(none");
  });

  it("clear empties the table", async () => {
    await runFixtureQuery();
    $("#clear-history-btn").click();
    await settle();
    expect(document.querySelectorAll(".history-row")).toHaveLength(0);
    expect($("#history-holder").textContent).toContain("(empty)");
  });
});

describe("dataset manager", () => {
  function openModal(): void {
    $("#datasets-btn").click();
  }

  it("lists the loaded tables with their columns", async () => {
    openModal();
    await settle();
    expect($("#datasets-modal").classList.contains("hidden")).toBe(false);
    const rows = [...document.querySelectorAll(".dataset-row")];
    expect(rows).toHaveLength(3);
    expect(rows[0].textContent).toContain("t1 (100 rows)");
    expect(rows[0].textContent).toContain("v:vector(4)");
  });

  it("uploads a table and then surfaces the duplicate conflict", async () => {
    openModal();
    await settle();
    ($("#dataset-name") as HTMLInputElement).value = "pets";
    ($("#dataset-csv") as HTMLTextAreaElement).value = "a:int\n1\n2";
    $("#dataset-upload").click();
    await settle();
    expect($("#dataset-error").textContent).toBe("");
    expect([...document.querySelectorAll(".dataset-row")]).toHaveLength(4);

    ($("#dataset-name") as HTMLInputElement).value = "pets";
    ($("#dataset-csv") as HTMLTextAreaElement).value = "a:int\n9";
    $("#dataset-upload").click();
    await settle();
    expect($("#dataset-error").textContent).toContain("catalog error");
    expect($("#dataset-error").textContent).toContain("already exists");
  });

  it("requires both fields before posting", async () => {
    openModal();
    await settle();
    ($("#dataset-name") as HTMLInputElement).value = "   ";
    ($("#dataset-csv") as HTMLTextAreaElement).value = "";
    $("#dataset-upload").click();
    await settle();
    expect(svc.count("POST", "/datasets")).toBe(0);
    expect($("#dataset-error").textContent).toContain("required");
  });

  it("deletes a table", async () => {
    openModal();
    await settle();
    const t3row = [...document.querySelectorAll(".dataset-row")].find((r) =>
      r.textContent!.includes("t3"),
    )!;
    (t3row.querySelector(".dataset-drop") as HTMLButtonElement).click();
    await settle();
    expect([...document.querySelectorAll(".dataset-row")]).toHaveLength(2);
    expect($("#dataset-list").textContent).not.toContain("t3");
  });
});
