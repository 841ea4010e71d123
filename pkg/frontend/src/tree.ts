import type { PlanDoc } from "./types";

export interface LaidNode {
  doc: PlanDoc;
  /** column in leaf-width units; leaves land on integers */
  x: number;
  /** depth from the root */
  y: number;
}

export interface Edge {
  from: LaidNode;
  to: LaidNode;
}

export interface TreeLayout {
  nodes: LaidNode[];
  edges: Edge[];
  /** number of leaf columns */
  width: number;
  /** deepest level, zero-based */
  depth: number;
}

/**
 * Top-down layered placement.  Each leaf takes the next free column and a
 * parent sits midway over its children, so the same document always yields
 * the same drawing.  Children keep their document order.
 */
export function layoutTree(root: PlanDoc): TreeLayout {
  const nodes: LaidNode[] = [];
  const edges: Edge[] = [];
  let nextLeaf = 0;
  let depth = 0;

  const place = (doc: PlanDoc, level: number): LaidNode => {
    depth = Math.max(depth, level);
    let x: number;
    const children: LaidNode[] = [];
    if (doc.children.length === 0) {
      x = nextLeaf++;
    } else {
      for (const child of doc.children) {
        children.push(place(child, level + 1));
      }
      x = (children[0].x + children[children.length - 1].x) / 2;
    }
    const laid: LaidNode = { doc, x, y: level };
    nodes.push(laid);
    for (const child of children) {
      edges.push({ from: laid, to: child });
    }
    return laid;
  };

  place(root, 0);
  return { nodes, edges, width: Math.max(nextLeaf, 1), depth };
}

/** Compact display for a server-supplied estimate; never derives anything. */
export function fmtNum(n: number | null | undefined): string {
  if (n === null || n === undefined) return "?";
  if (Number.isInteger(n)) return String(n);
  const fixed = n.toFixed(2);
  return fixed.endsWith("00") ? String(Math.trunc(n)) : fixed;
}

/** One line per attribute, used for the hover tooltip. */
export function attrLines(doc: PlanDoc): string[] {
  return Object.entries(doc.attrs).map(([key, value]) => {
    const text = typeof value === "string" ? value : JSON.stringify(value);
    return `${key}: ${text}`;
  });
}

/** The part of the label after the node kind, e.g. "t1.c = t2.c". */
export function labelDetail(doc: PlanDoc): string {
  return doc.label.startsWith(doc.kind)
    ? doc.label.slice(doc.kind.length).trim()
    : doc.label;
}

/** Structural equality of two plan documents, estimates included. */
export function samePlan(a: PlanDoc, b: PlanDoc): boolean {
  return JSON.stringify(a) === JSON.stringify(b);
}
