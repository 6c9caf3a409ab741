#!/usr/bin/env node
/**
 * Plot CLI over the runner's CSV output.
 *
 *   qcbandit-plot regret --in regret.csv --out regret.svg [--inset 50]
 *   qcbandit-plot phase  --in phase.csv  --out phase.svg  --family ising|cluster
 *
 * Output is a standalone SVG document regardless of the chosen extension.
 * Input files are only ever read.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { Family } from "./colors.js";
import { SchemaError } from "./csv.js";
import { DEFAULT_INSET_END, parseRegretCsv, renderRegret } from "./regret.js";
import { parsePhaseCsv, renderPhase } from "./phase.js";

const USAGE = `usage:
  qcbandit-plot regret --in <regret.csv> --out <image.svg> [--inset <round>]
  qcbandit-plot phase  --in <phase.csv>  --out <image.svg> --family <ising|cluster>`;

class UsageError extends Error {}

interface Options {
  input: string;
  output: string;
  inset: number;
  family: Family | null;
}

function parseOptions(argv: string[]): Options {
  const options: Options = { input: "", output: "", inset: DEFAULT_INSET_END, family: null };
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new UsageError(`flag ${flag} needs a value`);
    }
    switch (flag) {
      case "--in":
        options.input = value;
        break;
      case "--out":
        options.output = value;
        break;
      case "--inset": {
        const parsed = Number(value);
        if (!Number.isFinite(parsed) || parsed <= 0) {
          throw new UsageError(`--inset expects a positive round count, got '${value}'`);
        }
        options.inset = parsed;
        break;
      }
      case "--family":
        if (value !== "ising" && value !== "cluster") {
          throw new UsageError(`--family must be ising or cluster, got '${value}'`);
        }
        options.family = value;
        break;
      default:
        throw new UsageError(`unknown flag ${flag}`);
    }
  }
  if (!options.input || !options.output) {
    throw new UsageError("--in and --out are required");
  }
  return options;
}

export function main(argv: string[]): number {
  try {
    const [kind, ...rest] = argv;
    if (kind !== "regret" && kind !== "phase") {
      throw new UsageError(`first argument must be 'regret' or 'phase'`);
    }
    const options = parseOptions(rest);
    const text = readFileSync(options.input, "utf8");
    let svg: string;
    if (kind === "regret") {
      svg = renderRegret(parseRegretCsv(text), options.inset);
    } else {
      if (options.family === null) {
        throw new UsageError("phase plots need --family ising|cluster");
      }
      svg = renderPhase(parsePhaseCsv(text), options.family);
    }
    writeFileSync(options.output, svg);
    console.log(`wrote ${options.output}`);
    return 0;
  } catch (error) {
    if (error instanceof UsageError) {
      console.error(`error: ${error.message}`);
      console.error(USAGE);
      return 1;
    }
    if (error instanceof SchemaError) {
      console.error(`error: ${error.message}`);
      return 1;
    }
    if (error instanceof Error && "code" in error) {
      console.error(`error: ${error.message}`);
      return 1;
    }
    throw error;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
