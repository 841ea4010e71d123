import { clear, el } from "../dom";
import { attrLines, fmtNum, labelDetail, layoutTree, samePlan } from "../tree";
import type { PlanDoc } from "../types";
import type { Store, UiState } from "../store";

const COL_W = 170;
const ROW_H = 88;
const NODE_W = 150;
const NODE_H = 60;

const SVG_NS = "http://www.w3.org/2000/svg";

/** Draw one plan as a layered top-down tree of labelled boxes. */
export function renderTree(doc: PlanDoc): HTMLElement {
  const layout = layoutTree(doc);
  const width = layout.width * COL_W;
  const height = (layout.depth + 1) * ROW_H;

  const canvas = el("div", { class: "tree-canvas" });
  canvas.style.width = `${width}px`;
  canvas.style.height = `${height}px`;

  // edge lines sit behind the boxes
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
        text: `rows ${fmtNum(node.doc.estimated_rows)} · cost ${fmtNum(node.doc.estimated_cost)}`,
      }),
    ]);
    box.style.left = `${node.x * COL_W + (COL_W - NODE_W) / 2}px`;
    box.style.top = `${node.y * ROW_H}px`;
    canvas.append(box);
  }
  return canvas;
}

/** Two panes: the plan as parsed on the left, after rewriting on the right. */
export function mountPlans(container: HTMLElement, store: Store): void {
  const initialPane = el("div", { class: "plan-pane", id: "plan-initial" });
  const optimizedPane = el("div", { class: "plan-pane", id: "plan-optimized" });
  container.append(initialPane, optimizedPane);

  const fill = (pane: HTMLElement, title: string, doc: PlanDoc | null, note = "") => {
    clear(pane);
    pane.append(el("div", { class: "pane-title", text: note ? `${title} ${note}` : title }));
    if (doc === null) {
      pane.append(el("div", { class: "pane-empty", text: "—" }));
      return;
    }
    const scroller = el("div", { class: "tree-scroll" }, [renderTree(doc)]);
    pane.append(scroller);
  };

  const update = (state: UiState) => {
    const res = state.result;
    if (res === null) {
      fill(initialPane, "initial plan", null);
      fill(optimizedPane, "optimized plan", null);
      return;
    }
    const identical = samePlan(res.initial_plan, res.optimized_plan);
    fill(initialPane, `initial plan · cost ${fmtNum(res.cost_initial)}`, res.initial_plan);
    fill(
      optimizedPane,
      `optimized plan · cost ${fmtNum(res.cost_optimized)}`,
      res.optimized_plan,
      identical ? "(unchanged)" : "",
    );
  };

  update(store.getState());
  store.subscribe(update);
}
