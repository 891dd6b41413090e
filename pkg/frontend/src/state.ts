/**
 * Explorer interaction state: zoom focus, highlight set, hover target.
 *
 * The focus is always a node inside the loaded forest (or the overview
 * sentinel ""). Zooming out steps one enclosing layer at a time and is a
 * no-op at the overview. Highlighting is a pure view concern: it never
 * touches the model, and clearing it restores the initial state exactly.
 */
import { isLayer } from "./types.js";
import type { HighlightMatch, PatternModel } from "./model.js";

export const OVERVIEW = "";

export class ExplorerState {
  readonly model: PatternModel;
  private focus: string = OVERVIEW;
  private highlightInput = "";
  private highlight: HighlightMatch = { matchedLeafIds: new Set(), notFound: [] };
  hoverId: string | null = null;

  constructor(model: PatternModel) {
    this.model = model;
  }

  get focusId(): string {
    return this.focus;
  }

  get highlightedIds(): ReadonlySet<string> {
    return this.highlight.matchedLeafIds;
  }

  get notFound(): readonly string[] {
    return this.highlight.notFound;
  }

  get highlightText(): string {
    return this.highlightInput;
  }

  /** Focus a layer region. Library dots and unknown ids are not zoom targets. */
  zoomIn(id: string): boolean {
    if (!this.model.has(id) || !isLayer(this.model.get(id).node)) return false;
    this.focus = id;
    return true;
  }

  /** Step out to the enclosing layer; no-op at the overview. */
  zoomOut(): boolean {
    if (this.focus === OVERVIEW) return false;
    const parent = this.model.parentOf(this.focus);
    this.focus = parent === null ? OVERVIEW : parent.id;
    return true;
  }

  /**
   * Click dispatch per the interaction contract: a non-focused descendant
   * region zooms in, the focused region itself or any of its ancestors
   * (the area around it) zooms out one level, the background zooms out.
   */
  clickRegion(id: string | null): void {
    if (id === null) {
      this.zoomOut();
      return;
    }
    if (id === this.focus || this.isAncestorOfFocus(id)) {
      this.zoomOut();
      return;
    }
    this.zoomIn(id);
  }

  private isAncestorOfFocus(id: string): boolean {
    let cursor = this.focus === OVERVIEW ? null : this.model.parentOf(this.focus);
    while (cursor !== null) {
      if (cursor.id === id) return true;
      cursor = cursor.parentId === null ? null : this.model.get(cursor.parentId);
    }
    return false;
  }

  setHighlight(input: string): HighlightMatch {
    this.highlightInput = input;
    this.highlight = this.model.matchHighlight(input);
    return this.highlight;
  }

  clearHighlight(): void {
    this.highlightInput = "";
    this.highlight = { matchedLeafIds: new Set(), notFound: [] };
  }
}
