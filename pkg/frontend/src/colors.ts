/**
 * Fixed action palettes.
 *
 * Cluster actions keep the blue/orange/red/green/purple order used by the
 * reference phase diagrams; the order matches the runner's action indices:
 * x_alternating, cluster_plus, all_plus, cluster_minus, all_one.
 */

export const CLUSTER_PALETTE: readonly string[] = [
  "#1f77b4", // blue   - x_alternating
  "#ff7f0e", // orange - cluster_plus
  "#d62728", // red    - all_plus
  "#2ca02c", // green  - cluster_minus
  "#9467bd", // purple - all_one
];

export const CLUSTER_LABELS: readonly string[] = [
  "x_alternating",
  "cluster_plus",
  "all_plus",
  "cluster_minus",
  "all_one",
];

export const ISING_PALETTE: readonly string[] = [
  "#1f77b4", // blue   - all_plus
  "#2ca02c", // green  - neel_z
  "#ffcc00", // yellow - all_minus
];

export const ISING_LABELS: readonly string[] = ["all_plus", "neel_z", "all_minus"];

export type Family = "ising" | "cluster";

export function paletteFor(family: Family): readonly string[] {
  return family === "ising" ? ISING_PALETTE : CLUSTER_PALETTE;
}

export function labelsFor(family: Family): readonly string[] {
  return family === "ising" ? ISING_LABELS : CLUSTER_LABELS;
}
