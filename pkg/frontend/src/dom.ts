/** Tiny element builder; enough DOM sugar for this app, nothing more. */

export interface ElProps {
  class?: string;
  text?: string;
  title?: string;
  id?: string;
  disabled?: boolean;
  onClick?: (ev: MouseEvent) => void;
}

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  props: ElProps = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (props.class) node.className = props.class;
  if (props.text !== undefined) node.textContent = props.text;
  if (props.title !== undefined) node.title = props.title;
  if (props.id) node.id = props.id;
  if (props.disabled && "disabled" in node) {
    (node as HTMLButtonElement).disabled = true;
  }
  if (props.onClick) {
    node.addEventListener("click", props.onClick as EventListener);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}
