/** The interactive explorer: SVG quiver on the left, cluster panel on the
 * right. Every displayed seed is a server response; clicks await the server
 * before re-rendering, so the view can never drift from the session. */

import { ApiClient, ApiError, SessionState } from "./api.js";
import { computeLayout, truncateText } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 520;
const HEIGHT = 340;
const PAD = 50;

export class Explorer {
  state: SessionState | null = null;
  private busy = false;
  private readonly notice: HTMLElement;
  private readonly graph: HTMLElement;
  private readonly panel: HTMLElement;
  private readonly historyLine: HTMLElement;
  private readonly exportBox: HTMLTextAreaElement;

  constructor(
    readonly client: ApiClient,
    readonly root: HTMLElement,
  ) {
    root.innerHTML = "";
    this.notice = el("div", "notice");
    this.graph = el("div", "graph");
    this.panel = el("ul", "variables");
    this.historyLine = el("div", "history");
    this.exportBox = el("textarea", "export") as HTMLTextAreaElement;
    this.exportBox.rows = 4;
    const undoButton = el("button", "undo", "undo");
    undoButton.addEventListener("click", () => void this.undo());
    root.append(this.notice, undoButton, this.graph, this.panel, this.historyLine, this.exportBox);
  }

  async loadPreset(name: string): Promise<void> {
    this.state = await this.client.createSession({ preset: name });
    this.render();
  }

  async importSeed(seedJson: string): Promise<void> {
    this.state = await this.client.createSession({ seed: JSON.parse(seedJson) });
    this.render();
  }

  exportSeed(): string {
    if (!this.state) throw new Error("no session");
    return JSON.stringify(this.state.seed);
  }

  async clickVertex(vertex: number): Promise<void> {
    if (!this.state || this.busy) return;
    this.busy = true;
    try {
      this.state = await this.client.mutate(this.state.id, vertex);
      this.notice.textContent = "";
    } catch (err) {
      this.notice.textContent = err instanceof ApiError ? err.message : String(err);
    } finally {
      this.busy = false;
    }
    this.render();
  }

  async undo(): Promise<void> {
    if (!this.state || this.busy) return;
    this.busy = true;
    try {
      this.state = await this.client.undo(this.state.id);
      this.notice.textContent = "";
    } catch (err) {
      this.notice.textContent = err instanceof ApiError ? err.message : String(err);
    } finally {
      this.busy = false;
    }
    this.render();
  }

  render(): void {
    if (!this.state) return;
    this.renderGraph();
    this.renderPanel();
    this.historyLine.textContent = `history: [${this.state.history.join(", ")}]`;
    this.exportBox.value = this.exportSeed();
  }

  private renderGraph(): void {
    const state = this.state!;
    const layout = computeLayout(state.quiver, state.rows);
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
    svg.appendChild(arrowMarker());
    const px = (k: number) => PAD + layout.get(k)!.x * (WIDTH - 2 * PAD);
    const py = (k: number) => PAD + layout.get(k)!.y * (HEIGHT - 2 * PAD);
    for (const [src, dst, mult] of state.quiver.arrows) {
      const line = document.createElementNS(SVG_NS, "line");
      const [x1, y1, x2, y2] = shrink(px(src), py(src), px(dst), py(dst), 22);
      line.setAttribute("x1", String(x1));
      line.setAttribute("y1", String(y1));
      line.setAttribute("x2", String(x2));
      line.setAttribute("y2", String(y2));
      line.setAttribute("class", "arrow");
      line.setAttribute("marker-end", "url(#head)");
      svg.appendChild(line);
      if (mult > 1) {
        const badge = document.createElementNS(SVG_NS, "text");
        badge.setAttribute("x", String((x1 + x2) / 2));
        badge.setAttribute("y", String((y1 + y2) / 2 - 4));
        badge.setAttribute("class", "badge");
        badge.textContent = String(mult);
        svg.appendChild(badge);
      }
    }
    for (const variable of state.variables) {
      const k = variable.vertex;
      const group = document.createElementNS(SVG_NS, "g");
      group.setAttribute("data-vertex", String(k));
      group.setAttribute("data-frozen", String(variable.frozen));
      group.setAttribute("class", variable.frozen ? "vertex frozen" : "vertex mutable");
      const shape = document.createElementNS(SVG_NS, variable.frozen ? "rect" : "circle");
      if (variable.frozen) {
        shape.setAttribute("x", String(px(k) - 18));
        shape.setAttribute("y", String(py(k) - 18));
        shape.setAttribute("width", "36");
        shape.setAttribute("height", "36");
      } else {
        shape.setAttribute("cx", String(px(k)));
        shape.setAttribute("cy", String(py(k)));
        shape.setAttribute("r", "20");
      }
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(px(k)));
      label.setAttribute("y", String(py(k) + 4));
      label.setAttribute("text-anchor", "middle");
      label.textContent = truncateText(variable.alias ?? variable.text, 12);
      group.append(shape, label);
      if (!variable.frozen) {
        group.addEventListener("click", () => void this.clickVertex(k));
      }
      svg.appendChild(group);
    }
    this.graph.innerHTML = "";
    this.graph.appendChild(svg);
  }

  private renderPanel(): void {
    const state = this.state!;
    this.panel.innerHTML = "";
    for (const variable of state.variables) {
      const item = document.createElement("li");
      item.setAttribute("data-vertex", String(variable.vertex));
      item.className = variable.frozen ? "frozen" : "mutable";
      const alias = variable.alias ? ` = ${variable.alias}` : "";
      item.textContent = `${variable.vertex}: ${variable.text}${alias}`;
      this.panel.appendChild(item);
    }
  }
}

function el(tag: string, className: string, text = ""): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text) node.textContent = text;
  return node as HTMLElement;
}

function arrowMarker(): SVGElement {
  const defs = document.createElementNS(SVG_NS, "defs");
  const marker = document.createElementNS(SVG_NS, "marker");
  marker.setAttribute("id", "head");
  marker.setAttribute("markerWidth", "8");
  marker.setAttribute("markerHeight", "8");
  marker.setAttribute("refX", "6");
  marker.setAttribute("refY", "3");
  marker.setAttribute("orient", "auto");
  const path = document.createElementNS(SVG_NS, "path");
  path.setAttribute("d", "M0,0 L6,3 L0,6 z");
  marker.appendChild(path);
  defs.appendChild(marker);
  return defs;
}

/** Pull both endpoints towards each other so arrows start and stop at the
 * vertex boundary instead of its center. */
function shrink(x1: number, y1: number, x2: number, y2: number, by: number): [number, number, number, number] {
  const dx = x2 - x1;
  const dy = y2 - y1;
  const len = Math.hypot(dx, dy) || 1;
  const ux = dx / len;
  const uy = dy / len;
  return [x1 + ux * by, y1 + uy * by, x2 - ux * by, y2 - uy * by];
}
