/**
 * report <figure-kind> --in <csv> [--in <csv> ...] --out <file> [filters]
 *
 * Figure kinds: effort-vs-n, quantile-scaling, speedup, scatter, effort-vs-ta.
 * Output files are written atomically (tmp file + rename) and identical
 * inputs render identical bytes.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { readTables } from "./csv";
import {
  FigureOptions,
  renderEffortVsN,
  renderEffortVsTa,
  renderQuantileScaling,
  renderScatter,
  renderSpeedup,
} from "./figures";

const KINDS: Record<string, { schema: string; render: (t: any, p: string, o: FigureOptions) => string }> = {
  "effort-vs-n": { schema: "annealbench-curves-v1", render: renderEffortVsN },
  "quantile-scaling": { schema: "annealbench-tts-v1", render: renderQuantileScaling },
  speedup: { schema: "annealbench-speedup-v1", render: renderSpeedup },
  scatter: { schema: "annealbench-pairs-v1", render: renderScatter },
  "effort-vs-ta": { schema: "annealbench-curves-v1", render: renderEffortVsTa },
};

const USAGE = `usage: report <kind> --in <csv> [--in <csv> ...] --out <file.svg>
       [--solver sa|sqa] [--q 50,90] [--r 1] [--n 128] [--statistic RofQ|QofR]
       [--title <text>]
kinds: ${Object.keys(KINDS).join(", ")}`;

interface Args {
  kind: string;
  inputs: string[];
  out: string;
  opts: FigureOptions;
}

export function parseArgs(argv: string[]): Args {
  if (argv.length === 0) throw new Error(USAGE);
  const kind = argv[0];
  if (!(kind in KINDS)) {
    throw new Error(`unknown figure kind '${kind}'\n${USAGE}`);
  }
  const inputs: string[] = [];
  let out = "";
  const opts: FigureOptions = {};
  for (let i = 1; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) throw new Error(`missing value for ${flag}`);
      return argv[i];
    };
    switch (flag) {
      case "--in":
        inputs.push(next());
        break;
      case "--out":
        out = next();
        break;
      case "--solver":
        opts.solver = next();
        break;
      case "--q":
        opts.quantiles = next().split(",").map(Number);
        break;
      case "--r":
        opts.range = Number(next());
        break;
      case "--n":
        opts.nSpins = Number(next());
        break;
      case "--statistic":
        opts.statistic = next();
        break;
      case "--title":
        opts.title = next();
        break;
      default:
        throw new Error(`unknown flag '${flag}'\n${USAGE}`);
    }
  }
  if (inputs.length === 0) throw new Error(`no --in files given\n${USAGE}`);
  if (!out) throw new Error(`no --out file given\n${USAGE}`);
  return { kind, inputs, out, opts };
}

export function run(argv: string[]): void {
  const args = parseArgs(argv);
  const entry = KINDS[args.kind];
  const table = readTables(args.inputs, entry.schema);
  const svg = entry.render(table, args.inputs.join(","), args.opts);
  const tmp = args.out + ".tmp";
  fs.mkdirSync(path.dirname(path.resolve(args.out)), { recursive: true });
  fs.writeFileSync(tmp, svg);
  fs.renameSync(tmp, args.out);
}

if (require.main === module) {
  try {
    run(process.argv.slice(2));
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    process.exit(2);
  }
}
