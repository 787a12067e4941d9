/** Scene nodes: plain-data descriptions of SVG subtrees.
 *
 * Views are pure functions from payloads to scene nodes, so interaction
 * contracts (edge counts, drop-lines, alignment) are testable without a
 * browser; `renderInto` is the only code touching the DOM.
 */

export interface SceneNode {
  tag: string;
  attrs: Record<string, string | number>;
  children?: SceneNode[];
  text?: string;
}

export function el(
  tag: string,
  attrs: Record<string, string | number> = {},
  children?: SceneNode[],
  text?: string,
): SceneNode {
  const node: SceneNode = { tag, attrs };
  if (children && children.length) node.children = children;
  if (text !== undefined) node.text = text;
  return node;
}

/** Depth-first search over a scene; `pred` may match tag, class, or both. */
export function findAll(
  root: SceneNode | SceneNode[],
  pred: { tag?: string; className?: string },
): SceneNode[] {
  const out: SceneNode[] = [];
  const visit = (node: SceneNode) => {
    const classAttr = String(node.attrs["class"] ?? "");
    const tagOk = pred.tag === undefined || node.tag === pred.tag;
    const classOk =
      pred.className === undefined || classAttr.split(/\s+/).includes(pred.className);
    if (tagOk && classOk) out.push(node);
    for (const child of node.children ?? []) visit(child);
  };
  for (const node of Array.isArray(root) ? root : [root]) visit(node);
  return out;
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function toDom(node: SceneNode, doc: Document): Element {
  const dom = doc.createElementNS(SVG_NS, node.tag);
  for (const [key, value] of Object.entries(node.attrs)) {
    dom.setAttribute(key, String(value));
  }
  if (node.text !== undefined) dom.textContent = node.text;
  for (const child of node.children ?? []) dom.appendChild(toDom(child, doc));
  return dom;
}

/** Replace `container`'s children with the rendered scene. */
export function renderInto(container: Element, nodes: SceneNode[]): void {
  container.replaceChildren(...nodes.map((n) => toDom(n, container.ownerDocument)));
}
