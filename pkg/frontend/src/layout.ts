/**
 * Geometry: circle packing for the pattern forest plus a separate noise
 * band underneath. Pure data in, pure data out; the DOM layer just
 * materializes the scene.
 */
import { hierarchy, pack } from "d3-hierarchy";
import type { HierarchyCircularNode } from "d3-hierarchy";
import { isLayer, isLibrary } from "./types.js";
import type { LibraryNode, VizNode } from "./types.js";
import type { PatternModel } from "./model.js";

export interface SceneCircle {
  id: string;
  kind: "layer" | "library";
  noise: boolean;
  x: number;
  y: number;
  r: number;
  layerDepth: number;
}

export interface Scene {
  width: number;
  height: number;
  bandTop: number;
  circles: SceneCircle[];
}

interface PackDatum {
  id: string;
  node: VizNode | null; // null for the synthetic forest root
}

export function computeScene(model: PatternModel, width = 760, height = 560,
                             bandHeight = 96): Scene {
  const circles: SceneCircle[] = [];

  if (model.patternRootIds.length > 0) {
    const datum = (id: string, node: VizNode | null): PackDatum => ({ id, node });
    const root = hierarchy<PackDatum>(datum("", null), (d) => {
      if (d.node === null) {
        return model.patternRootIds.map((id) => datum(id, model.get(id).node));
      }
      if (isLayer(d.node)) {
        return d.node.children.map((child, i) => datum(`${d.id}.${i}`, child));
      }
      return undefined;
    });
    // dot area tracks library popularity; +1 keeps zero-client dots visible
    root.sum((d) => (d.node !== null && isLibrary(d.node) ? d.node.clientCount + 1 : 0));
    const packed = pack<PackDatum>().size([width, height]).padding(6)(root);
    packed.each((node: HierarchyCircularNode<PackDatum>) => {
      if (node.data.node === null) return; // synthetic root is not drawn
      circles.push({
        id: node.data.id,
        kind: isLayer(node.data.node) ? "layer" : "library",
        noise: false,
        x: node.x,
        y: node.y,
        r: node.r,
        layerDepth: model.get(node.data.id).layerDepth,
      });
    });
  }

  const bandTop = height + 8;
  const noise = model.noiseIds.map((id) => model.get(id));
  if (noise.length > 0) {
    const maxCount = Math.max(...noise.map((e) => (e.node as LibraryNode).clientCount), 1);
    const maxR = bandHeight / 2 - 6;
    const slot = width / noise.length;
    noise.forEach((entry, i) => {
      const count = (entry.node as LibraryNode).clientCount;
      const r = Math.max(5, maxR * Math.sqrt((count + 1) / (maxCount + 1)));
      circles.push({
        id: entry.id,
        kind: "library",
        noise: true,
        x: slot * (i + 0.5),
        y: bandTop + bandHeight / 2,
        r: Math.min(r, slot / 2 - 2, maxR),
        layerDepth: 0,
      });
    });
  }

  return { width, height: bandTop + bandHeight, bandTop, circles };
}
