/** Color scales: a viridis-like sequential map and a blue-white-red diverging map. */

import type { Color } from "./raster.js";

const VIRIDIS_STOPS: Color[] = [
  [68, 1, 84], [71, 44, 122], [59, 81, 139], [44, 113, 142], [33, 144, 141],
  [39, 173, 129], [92, 200, 99], [170, 220, 50], [253, 231, 37],
];

const DIVERGING_STOPS: Color[] = [
  [33, 102, 172], [103, 169, 207], [209, 229, 240], [255, 255, 255],
  [253, 219, 199], [239, 138, 98], [178, 24, 43],
];

function sample(stops: Color[], t: number): Color {
  const u = Math.min(1, Math.max(0, t)) * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(u));
  const f = u - i;
  const a = stops[i];
  const b = stops[i + 1];
  return [
    Math.round(a[0] + f * (b[0] - a[0])),
    Math.round(a[1] + f * (b[1] - a[1])),
    Math.round(a[2] + f * (b[2] - a[2])),
  ];
}

export function sequential(t: number): Color {
  return sample(VIRIDIS_STOPS, t);
}

export function diverging(t: number): Color {
  return sample(DIVERGING_STOPS, t);
}

export const SERIES_COLORS: Color[] = [
  [0, 0, 0], [214, 39, 40], [31, 119, 180], [44, 160, 44], [255, 127, 14],
  [148, 103, 189], [140, 86, 75], [23, 190, 207],
];
