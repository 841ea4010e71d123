// @vitest-environment jsdom
/**
 * End to end: the real service process on a real socket, the real bundle's
 * modules driving the DOM.  No browser binary exists in this environment,
 * so jsdom stands in for the rendering engine; everything else (HTTP,
 * parsing, optimization, execution, session state, history) is live.
 */
import { spawn, type ChildProcess } from "node:child_process";
import { cpSync, mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ApiClient } from "../src/api";
import { boot } from "../src/app";
import type { Store } from "../src/store";

const here = dirname(fileURLToPath(import.meta.url));
const PAPER_QUERY = "SIMSELECT * FROM t1, t2 WHERE t1.c=t2.c AND t1.v TO [1,2,3,4] < 10";

const port = 20000 + Math.floor(Math.random() * 20000);
const base = `http://127.0.0.1:${port}`;
let server: ChildProcess;
let dataDir: string;
let store: Store;

async function waitFor(cond: () => boolean, what: string, ms = 10000): Promise<void> {
  const deadline = Date.now() + ms;
  while (Date.now() < deadline) {
    if (cond()) return;
    await new Promise((res) => setTimeout(res, 25));
  }
  throw new Error(`timed out waiting for ${what}`);
}

async function settle(): Promise<void> {
  await waitFor(() => !store.getState().busy, "request to finish");
  // one extra turn so subscribers have painted
  await new Promise((res) => setTimeout(res, 0));
}

function $(sel: string): HTMLElement {
  const node = document.querySelector(sel);
  if (!node) throw new Error(`missing element ${sel}`);
  return node as HTMLElement;
}

function canvasHtml(paneSel: string): string {
  return $(paneSel).querySelector(".tree-canvas")!.innerHTML;
}

async function addRuleViaPicker(name: string): Promise<void> {
  $("#add-rule-btn").click();
  const item = ([...document.querySelectorAll(".picker-item")] as HTMLButtonElement[]).find(
    (b) => b.textContent!.startsWith(name),
  );
  if (!item) throw new Error(`rule ${name} not offered by the picker`);
  item.click();
  await settle();
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "qsim-e2e-"));
  for (const t of ["t1", "t2", "t3"]) {
    cpSync(join(here, "..", "..", "fixtures", `${t}.csv`), join(dataDir, `${t}.csv`));
  }
  server = spawn(
    "qsim",
    ["--data", dataDir, "serve", "--port", String(port), "--ui", join(here, "..", "dist")],
    { stdio: "ignore" },
  );
  const deadline = Date.now() + 20000;
  for (;;) {
    try {
      const resp = await fetch(`${base}/rules`);
      if (resp.ok) break;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((res) => setTimeout(res, 100));
  }
}, 30000);

afterAll(() => {
  server?.kill();
  if (dataDir) rmSync(dataDir, { recursive: true, force: true });
});

describe("live service", () => {
  it("serves the built UI at / with the API still answering", async () => {
    const page = await (await fetch(`${base}/`)).text();
    expect(page).toContain('<div id="app">');
    expect(page).toContain("app.js");
    const js = await (await fetch(`${base}/app.js`)).text();
    expect(js).toContain("qsim console");
    const rules = await (await fetch(`${base}/rules`)).json();
    expect(rules.rules.length).toBeGreaterThan(5);
  });

  it("runs the whole add-rules-then-strip-them story through the UI", async () => {
    document.body.innerHTML = '<div id="app"></div>';
    const booted = boot($("#app"), new ApiClient(base));
    store = booted.store;
    await booted.ready;

    // the picker offers the engine's actual catalog
    expect(store.getState().catalog.map((r) => r.name)).toContain("PushSimFilterIntoCross");

    // 1. submit the similarity join
    const input = $("#sql-input") as HTMLTextAreaElement;
    input.value = PAPER_QUERY;
    input.dispatchEvent(new Event("input"));
    $("#run-btn").click();
    await settle();

    expect(store.getState().error).toBeNull();
    const gridRows = document.querySelectorAll("#grid-holder tbody tr");
    expect(gridRows.length).toBe(440);
    expect(document.querySelectorAll("#plan-initial .tree-node").length).toBeGreaterThan(3);
    expect(document.querySelectorAll("#plan-optimized .tree-node").length).toBeGreaterThan(3);
    expect(document.querySelectorAll(".history-row")).toHaveLength(1);
    // no rules yet: the two drawings agree
    expect(canvasHtml("#plan-initial")).toBe(canvasHtml("#plan-optimized"));
    const baseCost = store.getState().result!.cost_optimized;
    expect(store.getState().result!.cost_initial).toBe(baseCost);

    // 2. add the similarity rules through "+": each edit re-runs the query
    const beforeTree = canvasHtml("#plan-optimized");
    await addRuleViaPicker("PushSimFilterIntoCross");
    expect(document.querySelectorAll(".history-row")).toHaveLength(2);
    expect(canvasHtml("#plan-optimized")).not.toBe(beforeTree);
    const afterOne = store.getState().result!.cost_optimized;
    expect(afterOne).toBeLessThan(baseCost);

    await addRuleViaPicker("SimFilterAfterCheapFilters");
    expect(document.querySelectorAll(".history-row")).toHaveLength(3);
    const afterTwo = store.getState().result!.cost_optimized;
    expect(afterTwo).toBeLessThan(baseCost);
    const lastRow = [...document.querySelectorAll(".history-row")].at(-1)!;
    expect(lastRow.textContent).toContain("SimFilterAfterCheapFilters");

    // the rendered list mirrors what the server holds
    const serverRules = (await (await fetch(`${base}/session/rules`)).json()).rules;
    expect(store.getState().sessionRules).toEqual(serverRules);
    expect(serverRules).toEqual(["PushSimFilterIntoCross", "SimFilterAfterCheapFilters"]);

    // 3. strip the rules back out; the drawings converge again
    while (document.querySelector(".rule-remove")) {
      (document.querySelector(".rule-remove") as HTMLButtonElement).click();
      await settle();
    }
    expect(store.getState().sessionRules).toEqual([]);
    expect(canvasHtml("#plan-initial")).toBe(canvasHtml("#plan-optimized"));
    expect(store.getState().result!.cost_optimized).toBe(baseCost);
    expect(document.querySelectorAll(".history-row")).toHaveLength(5);
  }, 30000);

  it("surfaces a live parse error with its position", async () => {
    const input = $("#sql-input") as HTMLTextAreaElement;
    input.value = "SELEC a FROM t3";
    input.dispatchEvent(new Event("input"));
    $("#run-btn").click();
    await settle();
    expect($("#error-line").textContent).toContain("parse error");
    expect($("#error-line").textContent).toContain("(at 0)");
  });

  it("manages datasets against the live catalog", async () => {
    $("#datasets-btn").click();
    await waitFor(
      () => document.querySelectorAll(".dataset-row").length === 3,
      "dataset listing",
    );
    ($("#dataset-name") as HTMLInputElement).value = "pets";
    ($("#dataset-csv") as HTMLTextAreaElement).value = "a:int,b:str\n1,x\n2,y";
    $("#dataset-upload").click();
    await waitFor(
      () => document.querySelectorAll(".dataset-row").length === 4,
      "upload to land",
    );

    // duplicate upload: the 409 lands in the modal
    ($("#dataset-name") as HTMLInputElement).value = "pets";
    ($("#dataset-csv") as HTMLTextAreaElement).value = "a:int\n9";
    $("#dataset-upload").click();
    await waitFor(
      () => $("#dataset-error").textContent!.includes("already"),
      "conflict message",
    );

    const petsRow = [...document.querySelectorAll(".dataset-row")].find((r) =>
      r.textContent!.includes("pets"),
    )!;
    (petsRow.querySelector(".dataset-drop") as HTMLButtonElement).click();
    await waitFor(
      () => document.querySelectorAll(".dataset-row").length === 3,
      "delete to land",
    );
  });
});
