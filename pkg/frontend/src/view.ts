/**
 * The rendered scene as data: scene geometry plus the colors and viewport
 * implied by the current interaction state. Recomputed from scratch on
 * every change, so highlight and zoom are pure view transforms.
 */
import { HIGHLIGHT_FILL, LIBRARY_FILL, pucFill } from "./color.js";
import { isLayer } from "./types.js";
import type { LayerNode } from "./types.js";
import type { Scene, SceneCircle } from "./layout.js";
import type { PatternModel } from "./model.js";
import { ExplorerState, OVERVIEW } from "./state.js";

export interface ViewCircle extends SceneCircle {
  fill: string;
  stroke: string;
  highlighted: boolean;
  /** Library leaves with an artifact page open it on activation. */
  href: string | null;
}

export interface ViewBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface View {
  circles: ViewCircle[];
  viewBox: ViewBox;
  focusId: string;
  notFound: readonly string[];
}

const LAYER_STROKE = "hsl(211, 45%, 35%)";
const LIBRARY_STROKE = "hsl(211, 20%, 55%)";

export function computeView(scene: Scene, model: PatternModel,
                            state: ExplorerState): View {
  const highlighted = state.highlightedIds;
  const circles = scene.circles.map((circle): ViewCircle => {
    const entry = model.get(circle.id);
    if (isLayer(entry.node)) {
      return {
        ...circle,
        fill: pucFill((entry.node as LayerNode).puc),
        stroke: LAYER_STROKE,
        highlighted: false,
        href: null,
      };
    }
    const isHighlighted = highlighted.has(circle.id);
    return {
      ...circle,
      fill: isHighlighted ? HIGHLIGHT_FILL : LIBRARY_FILL,
      stroke: LIBRARY_STROKE,
      highlighted: isHighlighted,
      href: entry.node.artifactUrl ?? null,
    };
  });

  return {
    circles,
    viewBox: focusViewBox(scene, state),
    focusId: state.focusId,
    notFound: state.notFound,
  };
}

function focusViewBox(scene: Scene, state: ExplorerState): ViewBox {
  if (state.focusId === OVERVIEW) {
    return { x: 0, y: 0, width: scene.width, height: scene.height };
  }
  const target = scene.circles.find((c) => c.id === state.focusId);
  if (!target) {
    return { x: 0, y: 0, width: scene.width, height: scene.height };
  }
  const margin = target.r * 0.15;
  const side = 2 * (target.r + margin);
  return { x: target.x - side / 2, y: target.y - side / 2, width: side, height: side };
}

export interface TooltipContent {
  title: string;
  lines: string[];
}

export function tooltipFor(model: PatternModel, id: string): TooltipContent {
  const entry = model.get(id);
  if (isLayer(entry.node)) {
    const layer = entry.node as LayerNode;
    const cohesion = layer.puc === null ? "undefined" : layer.puc.toFixed(3);
    return {
      title: layer.name,
      lines: [
        `clients: ${layer.clientCount}`,
        `epsilon: ${layer.epsilon}`,
        `cohesion (PUC): ${cohesion}`,
      ],
    };
  }
  return {
    title: entry.node.name,
    lines: [`clients: ${entry.node.clientCount}`].concat(
      entry.isNoise ? ["unclustered (noise)"] : [],
    ),
  };
}
