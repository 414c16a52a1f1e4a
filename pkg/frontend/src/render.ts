/**
 * File-level rendering: CSV in, image out, format chosen by the output
 * extension. Physics correctness lives entirely in the producer; this layer
 * is a strict consumer of the documented CSV format.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { extname } from "node:path";

import { parseSimulationCsv } from "./csv.js";
import { groupByBigGamma } from "./curves.js";
import { renderFigureSvg } from "./svg.js";

export interface FigureSpec {
  figureId?: number;
  input: string;
  output: string;
  title?: string;
}

const SUPPORTED = [".svg"];

export function renderToString(spec: FigureSpec): string {
  const data = parseSimulationCsv(readFileSync(spec.input, "utf8"));
  const curves = groupByBigGamma(data);
  const gamma = Number(data.meta["gamma"] ?? data.rows[0].gamma);
  const title = spec.title
    ?? (spec.figureId !== undefined ? `figure ${spec.figureId}` : undefined);
  return renderFigureSvg(curves, gamma, { title });
}

export function render(spec: FigureSpec): void {
  const ext = extname(spec.output).toLowerCase();
  if (!SUPPORTED.includes(ext)) {
    throw new Error(
      `unsupported output format '${ext}'; supported: ${SUPPORTED.join(", ")}`);
  }
  writeFileSync(spec.output, renderToString(spec));
}
