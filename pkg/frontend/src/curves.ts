/**
 * Curve extraction and diagnostics on parsed sweep data.
 *
 * "Curve" means one big_gamma value's concurrence time series (plus branch
 * traces). Death times and branch-dominance switches are read off the data
 * by interpolation, never recomputed from the model.
 */

import { SimData } from "./csv.js";

export interface Curve {
  bigGamma: number;
  t: number[];
  concurrence: number[];
  branchZ: number[];
  branchW: number[];
}

export function groupByBigGamma(data: SimData): Curve[] {
  const byGamma = new Map<number, Curve>();
  for (const row of data.rows) {
    let curve = byGamma.get(row.bigGamma);
    if (!curve) {
      curve = { bigGamma: row.bigGamma, t: [], concurrence: [], branchZ: [], branchW: [] };
      byGamma.set(row.bigGamma, curve);
    }
    curve.t.push(row.t);
    curve.concurrence.push(row.concurrence);
    curve.branchZ.push(row.branchZ);
    curve.branchW.push(row.branchW);
  }
  const curves = [...byGamma.values()].sort((a, b) => a.bigGamma - b.bigGamma);
  for (const c of curves) {
    for (let i = 1; i < c.t.length; i++) {
      if (c.t[i] <= c.t[i - 1]) {
        throw new Error(`curve big_gamma=${c.bigGamma}: times not increasing`);
      }
    }
    if (c.t.length !== curves[0].t.length) {
      throw new Error("curves do not share one time grid");
    }
  }
  return curves;
}

/**
 * First time the concurrence falls to zero; null if it never dies.
 *
 * The curve is clamped at zero, so the crossing sits strictly between the
 * last positive sample and the first zero one.  Extrapolating the slope of
 * the last two positive samples locates the kink to sub-grid accuracy; the
 * result is clipped to that bracketing interval.
 */
export function deathTime(curve: Curve): number | null {
  const { t, concurrence: c } = curve;
  for (let i = 0; i + 1 < t.length; i++) {
    if (c[i] > 0 && c[i + 1] <= 0) {
      let cross = t[i + 1];
      if (i > 0 && c[i - 1] > c[i]) {
        cross = t[i] + (c[i] * (t[i] - t[i - 1])) / (c[i - 1] - c[i]);
      }
      return Math.min(Math.max(cross, t[i]), t[i + 1]);
    }
  }
  return null;
}

export interface DominanceSwitch {
  t: number;
  from: "z" | "w";
  to: "z" | "w";
}

/**
 * Times where the larger branch changes, while the concurrence is positive on
 * at least one side. Exact ties resolve to the z branch, matching the
 * producer's convention, so a tied start followed by w-dominance counts.
 */
export function dominanceSwitches(curve: Curve): DominanceSwitch[] {
  const out: DominanceSwitch[] = [];
  const { t, branchZ: bz, branchW: bw, concurrence: c } = curve;
  let prev: "z" | "w" = bz[0] >= bw[0] ? "z" : "w";
  for (let i = 1; i < t.length; i++) {
    const diff = bz[i] - bw[i];
    const dom: "z" | "w" = diff === 0 ? prev : diff > 0 ? "z" : "w";
    if (dom !== prev && (c[i] > 0 || c[i - 1] > 0)) {
      out.push({ t: t[i], from: prev, to: dom });
    }
    if (diff !== 0) prev = dom;
  }
  return out;
}

/** max over the grid of curveA - curveB (concurrence), restricted to a window. */
export function maxGap(a: Curve, b: Curve, tMin = -Infinity, tMax = Infinity): number {
  let worst = -Infinity;
  for (let i = 0; i < a.t.length; i++) {
    if (a.t[i] < tMin || a.t[i] > tMax) continue;
    worst = Math.max(worst, a.concurrence[i] - b.concurrence[i]);
  }
  return worst;
}
