/** Sequential blue ramp mapping layer cohesion to region shade. */

const HUE = 211;
const SATURATION = 60;
const LIGHT_MIN = 42;  // cohesive: deep blue
const LIGHT_MAX = 90;  // loose: pale blue

export const LIBRARY_FILL = "#ffffff";
export const HIGHLIGHT_FILL = "#ff8800";
export const UNDEFINED_PUC_FILL = "hsl(0, 0%, 82%)";

export function pucFill(puc: number | null): string {
  if (puc === null) return UNDEFINED_PUC_FILL;
  const clamped = Math.max(0, Math.min(1, puc));
  const light = LIGHT_MAX - (LIGHT_MAX - LIGHT_MIN) * clamped;
  return `hsl(${HUE}, ${SATURATION}%, ${light}%)`;
}

/** Evenly spaced stops for a legend bar, low cohesion first. */
export function legendStops(count = 6): { puc: number; fill: string }[] {
  const stops = [];
  for (let i = 0; i < count; i++) {
    const puc = count === 1 ? 0 : i / (count - 1);
    stops.push({ puc, fill: pucFill(puc) });
  }
  return stops;
}
