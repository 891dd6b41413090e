/**
 * DOM materialization of the explorer: one SVG circle per view circle,
 * toolbar for highlighting, tooltip on hover, legend, and an error banner
 * for invalid documents (which are never partially rendered).
 */
import { legendStops } from "./color.js";
import { computeScene } from "./layout.js";
import type { Scene } from "./layout.js";
import { PatternModel } from "./model.js";
import { ExplorerState } from "./state.js";
import { isLibrary } from "./types.js";
import { validateDocument } from "./validate.js";
import { computeView, tooltipFor } from "./view.js";
import type { ViewBox } from "./view.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ExplorerOptions {
  animate?: boolean;
  openUrl?: (url: string) => void;
}

export class Explorer {
  readonly container: HTMLElement;
  private readonly opts: Required<ExplorerOptions>;

  model: PatternModel | null = null;
  state: ExplorerState | null = null;
  scene: Scene | null = null;

  private svg: SVGSVGElement;
  private circleLayer: SVGGElement;
  private banner: HTMLDivElement;
  private tooltip: HTMLDivElement;
  private notFoundBox: HTMLSpanElement;
  private input: HTMLInputElement;
  private animationFrame: number | null = null;

  constructor(container: HTMLElement, opts: ExplorerOptions = {}) {
    this.container = container;
    this.opts = {
      animate: opts.animate ?? typeof requestAnimationFrame !== "undefined",
      openUrl: opts.openUrl ?? ((url) => window.open(url, "_blank", "noopener")),
    };
    container.classList.add("cousage-explorer");
    container.innerHTML = `
      <div class="toolbar">
        <input class="highlight-input" type="text"
               placeholder="libraries you already use, comma-separated" />
        <button type="button" class="highlight-btn">Highlight</button>
        <button type="button" class="clear-btn">Clear</button>
        <button type="button" class="zoom-out-btn">Zoom out</button>
        <span class="not-found" hidden></span>
      </div>
      <div class="banner" role="alert" hidden></div>
      <div class="stage"></div>
      <div class="legend"><span class="legend-label">cohesion (PUC)</span></div>
      <div class="tooltip" hidden></div>
    `;
    this.banner = container.querySelector(".banner") as HTMLDivElement;
    this.tooltip = container.querySelector(".tooltip") as HTMLDivElement;
    this.notFoundBox = container.querySelector(".not-found") as HTMLSpanElement;
    this.input = container.querySelector(".highlight-input") as HTMLInputElement;

    this.svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
    this.svg.setAttribute("role", "img");
    this.circleLayer = document.createElementNS(SVG_NS, "g") as SVGGElement;
    this.svg.appendChild(this.circleLayer);
    (container.querySelector(".stage") as HTMLDivElement).appendChild(this.svg);

    const legend = container.querySelector(".legend") as HTMLDivElement;
    for (const stop of legendStops(6)) {
      const chip = document.createElement("span");
      chip.className = "legend-chip";
      chip.style.backgroundColor = stop.fill;
      chip.title = `PUC ${stop.puc.toFixed(1)}`;
      legend.appendChild(chip);
    }

    (container.querySelector(".highlight-btn") as HTMLButtonElement)
      .addEventListener("click", () => this.setHighlight(this.input.value));
    this.input.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") this.setHighlight(this.input.value);
    });
    (container.querySelector(".clear-btn") as HTMLButtonElement)
      .addEventListener("click", () => this.clearHighlight());
    (container.querySelector(".zoom-out-btn") as HTMLButtonElement)
      .addEventListener("click", () => {
        this.state?.clickRegion(null);
        this.refresh();
      });

    this.svg.addEventListener("click", (event) => this.onClick(event));
    this.svg.addEventListener("mousemove", (event) => this.onHover(event));
    this.svg.addEventListener("mouseleave", () => this.hideTooltip());
  }

  /** Validate and render a document; on failure show the banner only. */
  load(raw: unknown): void {
    try {
      const doc = validateDocument(raw);
      this.model = new PatternModel(doc);
      this.state = new ExplorerState(this.model);
      this.scene = computeScene(this.model);
      this.banner.hidden = true;
      this.banner.textContent = "";
      this.refresh(false);
    } catch (error) {
      this.model = null;
      this.state = null;
      this.scene = null;
      this.circleLayer.replaceChildren();
      this.banner.textContent = `could not load pattern document - ${String(
        error instanceof Error ? error.message : error)}`;
      this.banner.hidden = false;
    }
  }

  setHighlight(input: string): void {
    if (!this.state) return;
    this.input.value = input;
    const match = this.state.setHighlight(input);
    this.notFoundBox.hidden = match.notFound.length === 0;
    this.notFoundBox.textContent = match.notFound.length
      ? `not found: ${match.notFound.join(", ")}`
      : "";
    this.refresh(false);
  }

  clearHighlight(): void {
    if (!this.state) return;
    this.input.value = "";
    this.state.clearHighlight();
    this.notFoundBox.hidden = true;
    this.notFoundBox.textContent = "";
    this.refresh(false);
  }

  /** Re-derive the view from the current state and sync the DOM to it. */
  refresh(animate = this.opts.animate): void {
    if (!this.model || !this.state || !this.scene) return;
    const view = computeView(this.scene, this.model, this.state);

    const existing = new Map<string, SVGCircleElement>();
    for (const el of Array.from(this.circleLayer.children)) {
      existing.set((el as SVGCircleElement).dataset.id as string, el as SVGCircleElement);
    }
    this.circleLayer.replaceChildren();
    for (const circle of view.circles) {
      const el = existing.get(circle.id)
        ?? (document.createElementNS(SVG_NS, "circle") as SVGCircleElement);
      el.dataset.id = circle.id;
      el.dataset.kind = circle.kind;
      if (circle.noise) el.dataset.noise = "true";
      el.setAttribute("cx", String(circle.x));
      el.setAttribute("cy", String(circle.y));
      el.setAttribute("r", String(circle.r));
      el.setAttribute("fill", circle.fill);
      el.setAttribute("stroke", circle.stroke);
      el.setAttribute("stroke-width", circle.kind === "layer" ? "1.5" : "1");
      el.classList.toggle("highlighted", circle.highlighted);
      if (circle.kind === "library") {
        el.classList.toggle("has-artifact", circle.href !== null);
        if (circle.href !== null) {
          el.setAttribute("data-href", circle.href);
        } else {
          el.removeAttribute("data-href");
          el.setAttribute("aria-disabled", "true");
        }
      }
      this.circleLayer.appendChild(el);
    }
    this.applyViewBox(view.viewBox, animate);
  }

  private applyViewBox(box: ViewBox, animate: boolean): void {
    const target = `${box.x} ${box.y} ${box.width} ${box.height}`;
    if (!animate) {
      this.svg.setAttribute("viewBox", target);
      return;
    }
    const current = (this.svg.getAttribute("viewBox") ?? target)
      .split(" ")
      .map(Number);
    const goal = [box.x, box.y, box.width, box.height];
    if (this.animationFrame !== null) cancelAnimationFrame(this.animationFrame);
    const start = performance.now();
    const duration = 450;
    const step = (now: number) => {
      const t = Math.min(1, (now - start) / duration);
      const eased = t * (2 - t);
      const frame = current.map((value, i) =>
        value + ((goal[i] as number) - value) * eased);
      this.svg.setAttribute("viewBox", frame.join(" "));
      if (t < 1) {
        this.animationFrame = requestAnimationFrame(step);
      } else {
        this.animationFrame = null;
      }
    };
    this.animationFrame = requestAnimationFrame(step);
  }

  private onClick(event: MouseEvent): void {
    if (!this.state || !this.model) return;
    const target = event.target as Element;
    const id = (target as SVGElement).dataset?.id;
    if (id === undefined) {
      this.state.clickRegion(null);
      this.refresh();
      return;
    }
    const entry = this.model.get(id);
    if (isLibrary(entry.node)) {
      if (entry.node.artifactUrl) this.opts.openUrl(entry.node.artifactUrl);
      return;
    }
    this.state.clickRegion(id);
    this.refresh();
  }

  private onHover(event: MouseEvent): void {
    if (!this.model || !this.state) return;
    const id = (event.target as SVGElement).dataset?.id;
    if (id === undefined) {
      this.hideTooltip();
      return;
    }
    this.state.hoverId = id;
    const content = tooltipFor(this.model, id);
    this.tooltip.innerHTML = "";
    const title = document.createElement("strong");
    title.textContent = content.title;
    this.tooltip.appendChild(title);
    for (const line of content.lines) {
      const row = document.createElement("div");
      row.textContent = line;
      this.tooltip.appendChild(row);
    }
    this.tooltip.hidden = false;
    this.tooltip.style.left = `${event.pageX + 12}px`;
    this.tooltip.style.top = `${event.pageY - 10}px`;
  }

  private hideTooltip(): void {
    if (this.state) this.state.hoverId = null;
    this.tooltip.hidden = true;
  }
}
