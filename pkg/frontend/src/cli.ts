/**
 * Usage: node dist/cli.js --input fig2.csv --output fig2.svg [--figure 2] [--title T]
 */

import { render } from "./render.js";

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      throw new Error(`bad arguments near '${key}'`);
    }
    out.set(key.slice(2), argv[i + 1]);
  }
  return out;
}

try {
  const args = parseArgs(process.argv.slice(2));
  const input = args.get("input");
  const output = args.get("output");
  if (!input || !output) {
    throw new Error("--input and --output are required");
  }
  render({
    input,
    output,
    figureId: args.has("figure") ? Number(args.get("figure")) : undefined,
    title: args.get("title"),
  });
  console.log(`wrote ${output}`);
} catch (err) {
  console.error(`error: ${(err as Error).message}`);
  process.exitCode = 2;
}
