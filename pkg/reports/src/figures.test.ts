import assert from "node:assert/strict";
import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { test } from "node:test";

const FIXTURES = path.join(__dirname, "..", "fixtures");
const CLI = path.join(__dirname, "cli.js");

function tmpFile(name: string): string {
  return path.join(fs.mkdtempSync(path.join(os.tmpdir(), "reports-")), name);
}

function render(args: string[]): string {
  execFileSync("node", [CLI, ...args], { encoding: "utf8" });
  const outIdx = args.indexOf("--out");
  return fs.readFileSync(args[outIdx + 1], "utf8");
}

test("effort-vs-n renders one curve per t_a plus the envelope overlay", () => {
  const out = tmpFile("fig1.svg");
  const svg = render([
    "effort-vs-n", "--in", path.join(FIXTURES, "curves.csv"),
    "--out", out, "--solver", "sa", "--q", "50",
  ]);
  assert.match(svg, /<svg /);
  assert.match(svg, /class="envelope"/);
  const curves = svg.match(/class="ta-\d+"/g) ?? [];
  assert.ok(curves.length >= 2, `expected multiple t_a curves, got ${curves.length}`);
});

test("quantile-scaling renders and terminates censored curves", () => {
  const svg = render([
    "quantile-scaling", "--in", path.join(FIXTURES, "tts.csv"),
    "--out", tmpFile("fig3.svg"), "--solver", "sqa",
  ]);
  assert.match(svg, /class="q-50"/);

  // synthetic table whose 90th quantile censors at the second size
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "cens-"));
  const csv = path.join(dir, "tts.csv");
  fs.writeFileSync(csv, [
    "# annealbench-tts-v1",
    "solver,r,N,q,t_a_opt,effort,ci_lo,ci_hi,censored,units,mode,boundary",
    "sa,1,8,50.0,4,10.0,9.0,11.0,false,MCS,envelope,false",
    "sa,1,32,50.0,8,40.0,35.0,45.0,false,MCS,envelope,false",
    "sa,1,72,50.0,8,90.0,80.0,99.0,false,MCS,envelope,false",
    "sa,1,8,90.0,4,20.0,18.0,22.0,false,MCS,envelope,false",
    "sa,1,32,90.0,8,,,,true,MCS,envelope,false",
    "sa,1,72,90.0,8,,,,true,MCS,envelope,false",
    "",
  ].join("\n"));
  const svg2 = render(["quantile-scaling", "--in", csv, "--out", tmpFile("t.svg")]);
  const q50 = svg2.match(/class="q-50" points="([^"]*)"/);
  const q90 = svg2.match(/class="q-90" points="([^"]*)"/);
  assert.ok(q50 && q90);
  assert.equal(q50![1].split(" ").length, 3);
  assert.equal(q90![1].split(" ").length, 1); // terminated after the first size
});

test("speedup renders RofQ and QofR with a unity line", () => {
  for (const stat of ["RofQ", "QofR"]) {
    const svg = render([
      "speedup", "--in", path.join(FIXTURES, "speedup.csv"),
      "--out", tmpFile("fig2.svg"), "--statistic", stat,
    ]);
    assert.match(svg, /class="unity"/);
    assert.match(svg, /class="q-50"/);
  }
});

test("scatter renders density cells and a parity diagonal", () => {
  const svg = render([
    "scatter", "--in", path.join(FIXTURES, "pairs.csv"), "--out", tmpFile("fig6.svg"),
  ]);
  assert.match(svg, /class="parity"/);
  assert.match(svg, /class="density"/);
});

test("scatter pins never-solved instances to the top row", () => {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "cens-"));
  const csv = path.join(dir, "pairs.csv");
  fs.writeFileSync(csv, [
    "# annealbench-pairs-v1",
    "instance_id,N,r,q,T_num,T_den,censored_num,censored_den,numerator,denominator",
    "i0,8,1,50.0,10.0,12.0,false,false,sa,sqa",
    "i1,8,1,50.0,30.0,20.0,false,false,sa,sqa",
    "i2,8,1,50.0,55.0,inf,false,true,sa,sqa",
    "",
  ].join("\n"));
  const svg = render(["scatter", "--in", csv, "--out", tmpFile("fig6c.svg")]);
  const marker = svg.match(/<circle class="censored" cx="[\d.]+" cy="([\d.]+)"/);
  assert.ok(marker, "censored marker missing");
  const cy = Number(marker![1]);
  const margins = 28; // canvas top margin
  assert.ok(cy <= margins + 10, `censored marker not at top row (cy=${cy})`);
  assert.match(svg, /1 unsolved/);
});

test("effort-vs-ta marks per-quantile optima", () => {
  const svg = render([
    "effort-vs-ta", "--in", path.join(FIXTURES, "curves.csv"),
    "--out", tmpFile("fig8.svg"), "--solver", "sa", "--n", "32",
  ]);
  assert.match(svg, /class="optimum"/);
  assert.match(svg, /annealing time/);
});

test("repeated rendering is byte-identical", () => {
  for (const [kind, extra] of [
    ["effort-vs-n", ["--solver", "sa"]],
    ["quantile-scaling", ["--solver", "sa"]],
    ["speedup", []],
    ["scatter", []],
    ["effort-vs-ta", ["--solver", "sqa", "--n", "8"]],
  ] as Array<[string, string[]]>) {
    const input = {
      "effort-vs-n": "curves.csv",
      "quantile-scaling": "tts.csv",
      speedup: "speedup.csv",
      scatter: "pairs.csv",
      "effort-vs-ta": "curves.csv",
    }[kind]!;
    const a = tmpFile("a.svg");
    const b = tmpFile("b.svg");
    render([kind, "--in", path.join(FIXTURES, input), "--out", a, ...extra]);
    render([kind, "--in", path.join(FIXTURES, input), "--out", b, ...extra]);
    assert.deepEqual(fs.readFileSync(a), fs.readFileSync(b), `${kind} not deterministic`);
  }
});

test("missing columns and wrong schema are rejected", () => {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "bad-"));
  const bad = path.join(dir, "bad.csv");
  fs.writeFileSync(bad, "# annealbench-curves-v1\nsolver,r\nsa,1\n");
  assert.throws(() => {
    execFileSync("node", [CLI, "effort-vs-n", "--in", bad, "--out", path.join(dir, "x.svg")],
                 { encoding: "utf8", stdio: "pipe" });
  }, /missing column/);
  assert.throws(() => {
    execFileSync("node", [CLI, "speedup", "--in", path.join(FIXTURES, "curves.csv"),
                          "--out", path.join(dir, "y.svg")],
                 { encoding: "utf8", stdio: "pipe" });
  }, /expected schema/);
});

test("empty selection is rejected", () => {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "empty-"));
  assert.throws(() => {
    execFileSync("node", [CLI, "effort-vs-n", "--in", path.join(FIXTURES, "curves.csv"),
                          "--out", path.join(dir, "z.svg"), "--solver", "nosuch"],
                 { encoding: "utf8", stdio: "pipe" });
  }, /no rows left/);
});

test("unknown kind and missing flags are usage errors", () => {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "use-"));
  for (const args of [["histogram"], ["speedup"], ["speedup", "--in", "x.csv"]]) {
    assert.throws(() => {
      execFileSync("node", [CLI, ...args], { encoding: "utf8", stdio: "pipe" });
    });
  }
  void dir;
});
