/** Document shape produced by the miner's explorer export. */

export interface LibraryNode {
  kind: "library";
  name: string;
  clientCount: number;
  artifactUrl?: string;
}

export interface LayerNode {
  kind: "pattern-layer";
  name: string;
  epsilon: number;
  puc: number | null;
  clientCount: number;
  children: VizNode[];
}

export type VizNode = LayerNode | LibraryNode;

export interface PatternDocument {
  patterns: LayerNode[];
  noise: LibraryNode[];
}

export function isLayer(node: VizNode): node is LayerNode {
  return node.kind === "pattern-layer";
}

export function isLibrary(node: VizNode): node is LibraryNode {
  return node.kind === "library";
}
