/**
 * Parser for the corrqubits simulation CSV format.
 *
 * Files carry '#'-prefixed `key = value` metadata lines, then the fixed
 * 16-column header, then one row per (t, big_gamma). This module never
 * recomputes physics; it only types the file contents.
 */

export const CSV_HEADER =
  "t,gamma,big_gamma,omega,method,concurrence,branch_z,branch_w," +
  "rho11,rho22,rho33,rho44,rho23_re,rho23_im,rho14_re,rho14_im";

const COLUMNS = CSV_HEADER.split(",");

export interface SimRow {
  t: number;
  gamma: number;
  bigGamma: number;
  omega: number;
  method: string;
  concurrence: number;
  branchZ: number;
  branchW: number;
  rho11: number;
  rho22: number;
  rho33: number;
  rho44: number;
  rho23Re: number;
  rho23Im: number;
  rho14Re: number;
  rho14Im: number;
}

export interface SimData {
  meta: Record<string, string>;
  rows: SimRow[];
}

function parseNumber(raw: string, lineNo: number, column: string): number {
  const v = Number(raw);
  if (raw.trim() === "" || Number.isNaN(v)) {
    throw new Error(`line ${lineNo}: column '${column}' is not a number: '${raw}'`);
  }
  return v;
}

export function parseSimulationCsv(text: string): SimData {
  const meta: Record<string, string> = {};
  const rows: SimRow[] = [];
  let sawHeader = false;
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i];
    const lineNo = i + 1;
    if (line === "" && i === lines.length - 1) continue; // trailing newline
    if (line.startsWith("#")) {
      const body = line.slice(1).trim();
      const eq = body.indexOf("=");
      if (eq >= 0) {
        meta[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
      }
      continue;
    }
    if (!sawHeader) {
      if (line !== CSV_HEADER) {
        throw new Error(`line ${lineNo}: unexpected header '${line}'`);
      }
      sawHeader = true;
      continue;
    }
    const parts = line.split(",");
    if (parts.length !== COLUMNS.length) {
      throw new Error(
        `line ${lineNo}: expected ${COLUMNS.length} fields, got ${parts.length}`);
    }
    rows.push({
      t: parseNumber(parts[0], lineNo, "t"),
      gamma: parseNumber(parts[1], lineNo, "gamma"),
      bigGamma: parseNumber(parts[2], lineNo, "big_gamma"),
      omega: parseNumber(parts[3], lineNo, "omega"),
      method: parts[4],
      concurrence: parseNumber(parts[5], lineNo, "concurrence"),
      branchZ: parseNumber(parts[6], lineNo, "branch_z"),
      branchW: parseNumber(parts[7], lineNo, "branch_w"),
      rho11: parseNumber(parts[8], lineNo, "rho11"),
      rho22: parseNumber(parts[9], lineNo, "rho22"),
      rho33: parseNumber(parts[10], lineNo, "rho33"),
      rho44: parseNumber(parts[11], lineNo, "rho44"),
      rho23Re: parseNumber(parts[12], lineNo, "rho23_re"),
      rho23Im: parseNumber(parts[13], lineNo, "rho23_im"),
      rho14Re: parseNumber(parts[14], lineNo, "rho14_re"),
      rho14Im: parseNumber(parts[15], lineNo, "rho14_im"),
    });
  }
  if (!sawHeader) {
    throw new Error("CSV contains no header line");
  }
  if (rows.length === 0) {
    throw new Error("CSV contains no data rows");
  }
  return { meta, rows };
}
