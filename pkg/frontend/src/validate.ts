/**
 * Structural validation of a pattern document, mirroring the miner's
 * shipped JSON schema. A document that fails here is never partially
 * rendered; the app shows an error banner instead.
 */
import type { LayerNode, LibraryNode, PatternDocument, VizNode } from "./types.js";

export class DocumentValidationError extends Error {
  constructor(public readonly path: string, message: string) {
    super(`${path}: ${message}`);
    this.name = "DocumentValidationError";
  }
}

function fail(path: string, message: string): never {
  throw new DocumentValidationError(path, message);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function checkCount(value: unknown, path: string): number {
  if (typeof value !== "number" || !Number.isInteger(value) || value < 0) {
    fail(path, `clientCount must be a non-negative integer, got ${JSON.stringify(value)}`);
  }
  return value;
}

function checkLibrary(value: unknown, path: string): LibraryNode {
  if (!isRecord(value)) fail(path, "library node must be an object");
  if (value.kind !== "library") fail(path, `expected kind "library", got ${JSON.stringify(value.kind)}`);
  if (typeof value.name !== "string" || value.name.length === 0) {
    fail(path, "library name must be a non-empty string");
  }
  const node: LibraryNode = {
    kind: "library",
    name: value.name,
    clientCount: checkCount(value.clientCount, `${path}.clientCount`),
  };
  if (value.artifactUrl !== undefined) {
    if (typeof value.artifactUrl !== "string" || !value.artifactUrl.startsWith("https://")) {
      fail(`${path}.artifactUrl`, "artifactUrl must be an https:// URL");
    }
    node.artifactUrl = value.artifactUrl;
  }
  const known = new Set(["kind", "name", "clientCount", "artifactUrl"]);
  for (const key of Object.keys(value)) {
    if (!known.has(key)) fail(path, `unexpected property ${JSON.stringify(key)}`);
  }
  return node;
}

function checkLayer(value: unknown, path: string): LayerNode {
  if (!isRecord(value)) fail(path, "layer node must be an object");
  if (value.kind !== "pattern-layer") {
    fail(path, `expected kind "pattern-layer", got ${JSON.stringify(value.kind)}`);
  }
  if (typeof value.name !== "string" || value.name.length === 0) {
    fail(path, "layer name must be a non-empty string");
  }
  if (typeof value.epsilon !== "number" || value.epsilon < 0 || value.epsilon > 1) {
    fail(`${path}.epsilon`, "epsilon must be a number in [0, 1]");
  }
  if (value.puc !== null && (typeof value.puc !== "number" || value.puc < 0 || value.puc > 1)) {
    fail(`${path}.puc`, "puc must be null or a number in [0, 1]");
  }
  if (!Array.isArray(value.children) || value.children.length < 2) {
    fail(`${path}.children`, "a layer needs at least two children");
  }
  const children: VizNode[] = value.children.map((child, i) =>
    checkNode(child, `${path}.children[${i}]`),
  );
  const known = new Set(["kind", "name", "epsilon", "puc", "clientCount", "children"]);
  for (const key of Object.keys(value)) {
    if (!known.has(key)) fail(path, `unexpected property ${JSON.stringify(key)}`);
  }
  return {
    kind: "pattern-layer",
    name: value.name,
    epsilon: value.epsilon,
    puc: value.puc as number | null,
    clientCount: checkCount(value.clientCount, `${path}.clientCount`),
    children,
  };
}

function checkNode(value: unknown, path: string): VizNode {
  if (!isRecord(value)) fail(path, "node must be an object");
  if (value.kind === "library") return checkLibrary(value, path);
  if (value.kind === "pattern-layer") return checkLayer(value, path);
  fail(path, `unknown node kind ${JSON.stringify(value.kind)}`);
}

/** Parse and validate a raw document (object or JSON text). */
export function validateDocument(raw: unknown): PatternDocument {
  const value = typeof raw === "string" ? JSON.parse(raw) : raw;
  if (!isRecord(value)) fail("$", "document must be an object");
  if (!Array.isArray(value.patterns)) fail("$.patterns", "missing patterns array");
  if (!Array.isArray(value.noise)) fail("$.noise", "missing noise array");
  for (const key of Object.keys(value)) {
    if (key !== "patterns" && key !== "noise") fail("$", `unexpected property ${JSON.stringify(key)}`);
  }
  return {
    patterns: value.patterns.map((p, i) => checkLayer(p, `$.patterns[${i}]`)),
    noise: value.noise.map((n, i) => checkLibrary(n, `$.noise[${i}]`)),
  };
}
