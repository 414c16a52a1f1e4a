/**
 * Deterministic SVG rendering: same curves in, byte-identical markup out.
 * Concurrence (0..1) against gamma*t, one polyline per big_gamma, legend
 * listing big_gamma/gamma ratios.
 */

import { Curve } from "./curves.js";

export interface FigureOptions {
  title?: string;
  width?: number;
  height?: number;
}

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                 "#8c564b", "#17becf"];

const MARGIN = { left: 64, right: 150, top: 40, bottom: 52 };

function fmt(x: number): string {
  // fixed short decimal keeps the output stable across runs
  return x.toFixed(3).replace(/\.?0+$/, "") || "0";
}

export function renderFigureSvg(curves: Curve[], gamma: number,
                                opts: FigureOptions = {}): string {
  if (curves.length === 0) {
    throw new Error("nothing to plot: no curves");
  }
  const width = opts.width ?? 720;
  const height = opts.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const tMax = Math.max(...curves.map((c) => c.t[c.t.length - 1]));
  const x = (t: number) => MARGIN.left + (t * gamma / (tMax * gamma)) * plotW;
  const y = (c: number) => MARGIN.top + (1 - c) * plotH;

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
             `height="${height}" viewBox="0 0 ${width} ${height}">`);
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  if (opts.title) {
    parts.push(`<text x="${width / 2}" y="24" text-anchor="middle" ` +
               `font-family="sans-serif" font-size="16">${opts.title}</text>`);
  }
  // axes
  parts.push(`<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" ` +
             `height="${plotH}" fill="none" stroke="black"/>`);
  for (let i = 0; i <= 5; i++) {
    const cv = i / 5;
    const yy = y(cv);
    parts.push(`<line x1="${MARGIN.left - 4}" y1="${fmt(yy)}" ` +
               `x2="${MARGIN.left}" y2="${fmt(yy)}" stroke="black"/>`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${fmt(yy + 4)}" ` +
               `text-anchor="end" font-family="sans-serif" font-size="11">` +
               `${fmt(cv)}</text>`);
    const tv = (i / 5) * tMax * gamma;
    const xx = MARGIN.left + (i / 5) * plotW;
    parts.push(`<line x1="${fmt(xx)}" y1="${MARGIN.top + plotH}" ` +
               `x2="${fmt(xx)}" y2="${MARGIN.top + plotH + 4}" stroke="black"/>`);
    parts.push(`<text x="${fmt(xx)}" y="${MARGIN.top + plotH + 18}" ` +
               `text-anchor="middle" font-family="sans-serif" font-size="11">` +
               `${fmt(tv)}</text>`);
  }
  parts.push(`<text x="${MARGIN.left + plotW / 2}" ` +
             `y="${height - 12}" text-anchor="middle" ` +
             `font-family="sans-serif" font-size="13">&#947;t</text>`);
  parts.push(`<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
             `font-family="sans-serif" font-size="13" ` +
             `transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">` +
             `concurrence</text>`);
  // curves
  curves.forEach((curve, k) => {
    const color = PALETTE[k % PALETTE.length];
    const pts = curve.t
      .map((t, i) => `${fmt(x(t))},${fmt(y(Math.max(0, Math.min(1, curve.concurrence[i]))))}`)
      .join(" ");
    parts.push(`<polyline fill="none" stroke="${color}" stroke-width="1.5" ` +
               `points="${pts}"/>`);
    const ly = MARGIN.top + 16 + 18 * k;
    const lx = MARGIN.left + plotW + 12;
    parts.push(`<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" ` +
               `stroke="${color}" stroke-width="1.5"/>`);
    parts.push(`<text x="${lx + 28}" y="${ly}" font-family="sans-serif" ` +
               `font-size="12">&#915;/&#947; = ${fmt(curve.bigGamma / gamma)}</text>`);
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
