/**
 * Indexed view of a validated pattern document: stable node ids, parent
 * links, leaf bookkeeping, and case-insensitive highlight matching.
 *
 * Ids are structural paths: "p0" is the first pattern root, "p0.1" its
 * second child, "n3" the fourth noise library.
 */
import { isLayer, isLibrary } from "./types.js";
import type { LayerNode, LibraryNode, PatternDocument, VizNode } from "./types.js";

export interface IndexedNode {
  id: string;
  node: VizNode;
  parentId: string | null;
  /** Number of enclosing layer regions, the node's own region included
   *  for layers; equals the exporter's layer-path depth for leaves. */
  layerDepth: number;
  isNoise: boolean;
}

export interface HighlightMatch {
  matchedLeafIds: ReadonlySet<string>;
  notFound: readonly string[];
}

export class PatternModel {
  readonly doc: PatternDocument;
  private readonly byId = new Map<string, IndexedNode>();
  readonly patternRootIds: string[] = [];
  readonly noiseIds: string[] = [];

  constructor(doc: PatternDocument) {
    this.doc = doc;
    doc.patterns.forEach((pattern, i) => {
      const id = `p${i}`;
      this.patternRootIds.push(id);
      this.indexNode(pattern, id, null, 1, false);
    });
    doc.noise.forEach((lib, i) => {
      const id = `n${i}`;
      this.noiseIds.push(id);
      this.byId.set(id, { id, node: lib, parentId: null, layerDepth: 0, isNoise: true });
    });
  }

  private indexNode(node: VizNode, id: string, parentId: string | null,
                    layerDepth: number, isNoise: boolean): void {
    this.byId.set(id, { id, node, parentId, layerDepth, isNoise });
    if (isLayer(node)) {
      node.children.forEach((child, i) => {
        const childDepth = isLayer(child) ? layerDepth + 1 : layerDepth;
        this.indexNode(child, `${id}.${i}`, id, childDepth, isNoise);
      });
    }
  }

  get(id: string): IndexedNode {
    const entry = this.byId.get(id);
    if (!entry) throw new Error(`unknown node id: ${id}`);
    return entry;
  }

  has(id: string): boolean {
    return this.byId.has(id);
  }

  all(): IndexedNode[] {
    return [...this.byId.values()];
  }

  parentOf(id: string): IndexedNode | null {
    const parentId = this.get(id).parentId;
    return parentId === null ? null : this.get(parentId);
  }

  /** Library leaves inside pattern trees, in document order. */
  patternLeaves(): IndexedNode[] {
    return this.all().filter((e) => !e.isNoise && isLibrary(e.node));
  }

  /** All rendered dots: pattern leaves plus the noise band. */
  libraryDots(): IndexedNode[] {
    return this.all().filter((e) => isLibrary(e.node));
  }

  layerRegions(): IndexedNode[] {
    return this.all().filter((e) => isLayer(e.node));
  }

  /** Deepest layer nesting of a pattern tree (a flat pattern has depth 1). */
  nestingDepth(rootId: string): number {
    const entry = this.get(rootId);
    if (!isLayer(entry.node)) return 0;
    const walk = (node: LayerNode): number =>
      1 + Math.max(0, ...node.children.filter(isLayer).map(walk));
    return walk(entry.node);
  }

  /**
   * Match a comma-separated library list against leaf names,
   * case-insensitively. Unmatched inputs are reported, not dropped.
   */
  matchHighlight(input: string): HighlightMatch {
    const wanted = input
      .split(",")
      .map((part) => part.trim())
      .filter((part) => part.length > 0);
    const matched = new Set<string>();
    const notFound: string[] = [];
    const byName = new Map<string, string[]>();
    for (const dot of this.libraryDots()) {
      const key = (dot.node as LibraryNode).name.toLowerCase();
      const ids = byName.get(key) ?? [];
      ids.push(dot.id);
      byName.set(key, ids);
    }
    for (const name of wanted) {
      const ids = byName.get(name.toLowerCase());
      if (ids === undefined) {
        notFound.push(name);
      } else {
        for (const id of ids) matched.add(id);
      }
    }
    return { matchedLeafIds: matched, notFound };
  }
}
