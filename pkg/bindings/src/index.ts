/**
 * Thin TypeScript client for the `ocelf` command-line tool.
 *
 * Every operation shells out to the CLI and parses its file output; no
 * algorithm is reimplemented here, so values are identical to what the CLI
 * writes to disk. Handles are plain frozen data and safe to share.
 */

import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import Papa from "papaparse";

/** Raised when the CLI rejects the input file (exit code 2). */
export class InputError extends Error {}

/** Raised for domain failures: bad specs, unknown types, findings (exit 1). */
export class DomainError extends Error {}

export type Strategy = "components" | "leading";
export type Encoding = "tabular" | "sequential" | "graph";

export interface LogHandle {
  readonly path: string;
  readonly events: number;
  readonly objects: number;
  readonly objectTypes: readonly string[];
  readonly activities: readonly string[];
}

export interface ExecutionInfo {
  readonly execId: number;
  readonly objects: readonly string[];
  readonly events: readonly string[];
  readonly leadingObject: string | null;
}

export interface ExecutionsHandle {
  readonly log: LogHandle;
  readonly strategy: Strategy;
  readonly leadType?: string;
  readonly executions: readonly ExecutionInfo[];
}

/** Columnar feature table: one entry per (event, execution) row. */
export interface FeatureTable {
  readonly columns: readonly string[];
  readonly eventId: readonly string[];
  readonly execId: readonly number[];
  readonly features: Readonly<Record<string, readonly (number | null)[]>>;
}

export interface SequenceStep {
  readonly event: string;
  readonly activity: string;
  readonly objects: readonly string[];
  readonly features: Readonly<Record<string, number | null>>;
}

export interface ExecutionSequence {
  readonly execId: number;
  readonly steps: readonly SequenceStep[];
}

export interface GraphNodeRow {
  readonly id: string;
  readonly activity: string;
  readonly objects: readonly string[];
  readonly features: Readonly<Record<string, number | null>>;
}

export interface ExecutionGraphData {
  readonly execId: number;
  readonly nodes: readonly GraphNodeRow[];
  readonly edges: readonly [string, string][];
}

const CLI = process.env.OCELF_BIN ?? "ocelf";

function runCli(args: string[]): string {
  try {
    return execFileSync(CLI, args, { encoding: "utf-8" });
  } catch (err) {
    const e = err as { status?: number | null; stderr?: string; message: string };
    const detail = (e.stderr ?? e.message).trim();
    if (e.status === 2) throw new InputError(detail);
    throw new DomainError(detail);
  }
}

/** Run a CLI subcommand that writes a file; return the file's content. */
function runCliToFile(args: string[], filename: string): string {
  const dir = mkdtempSync(join(tmpdir(), "ocelf-"));
  try {
    const out = join(dir, filename);
    runCli([...args, "--out", out]);
    return readFileSync(out, "utf-8");
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function strategyArgs(execs: ExecutionsHandle): string[] {
  const args = ["--strategy", execs.strategy];
  if (execs.leadType !== undefined) args.push("--lead-type", execs.leadType);
  return args;
}

/** Open a log file and summarize it; throws InputError if unreadable. */
export function load(path: string): LogHandle {
  const stats = JSON.parse(runCli(["stats", path, "--json"]));
  return Object.freeze({
    path,
    events: stats.events as number,
    objects: stats.objects as number,
    objectTypes: stats.object_types as string[],
    activities: stats.activities as string[],
  });
}

/** Split a log into process executions. */
export function extract(
  handle: LogHandle,
  strategy: Strategy,
  leadType?: string,
): ExecutionsHandle {
  const args = ["extract", handle.path, "--strategy", strategy, "--json"];
  if (leadType !== undefined) args.push("--lead-type", leadType);
  const report = JSON.parse(runCli(args));
  const executions = (report.executions as Array<Record<string, unknown>>).map(
    (e) =>
      Object.freeze({
        execId: e.exec_id as number,
        objects: e.objects as string[],
        events: e.events as string[],
        leadingObject: e.leading_object as string | null,
      }),
  );
  return Object.freeze({ log: handle, strategy, leadType, executions });
}

function featurizeArgs(
  execs: ExecutionsHandle,
  specs: string[],
  encoding: Encoding,
): string[] {
  return [
    "featurize",
    execs.log.path,
    ...strategyArgs(execs),
    ...specs.flatMap((s) => ["--feature", s]),
    "--encoding",
    encoding,
  ];
}

/** Compute features and return them as a columnar table. */
export function featurize(execs: ExecutionsHandle, specs: string[]): FeatureTable {
  const csv = runCliToFile(featurizeArgs(execs, specs, "tabular"), "features.csv");
  const parsed = Papa.parse<string[]>(csv.trimEnd(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new DomainError(`unparseable CLI output: ${parsed.errors[0].message}`);
  }
  const [header, ...rows] = parsed.data;
  const columns = header.slice(2);
  const features: Record<string, (number | null)[]> = {};
  for (const col of columns) features[col] = [];
  const eventId: string[] = [];
  const execId: number[] = [];
  for (const row of rows) {
    eventId.push(row[0]);
    execId.push(Number(row[1]));
    columns.forEach((col, i) => {
      const cell = row[i + 2];
      features[col].push(cell === "" ? null : Number(cell));
    });
  }
  return Object.freeze({ columns, eventId, execId, features });
}

function parseJsonl(text: string): Array<Record<string, unknown>> {
  return text
    .split("\n")
    .filter((line) => line.length > 0)
    .map((line) => JSON.parse(line));
}

/** Compute features and return one ordered step list per execution. */
export function sequences(
  execs: ExecutionsHandle,
  specs: string[],
): ExecutionSequence[] {
  const text = runCliToFile(featurizeArgs(execs, specs, "sequential"), "seq.jsonl");
  return parseJsonl(text).map((obj) => ({
    execId: obj.exec_id as number,
    steps: (obj.steps as Array<Record<string, unknown>>).map((s) => ({
      event: s.event as string,
      activity: s.activity as string,
      objects: s.objects as string[],
      features: s.features as Record<string, number | null>,
    })),
  }));
}

/** Compute features and return one (node table, edge list) per execution. */
export function graphs(
  execs: ExecutionsHandle,
  specs: string[],
): ExecutionGraphData[] {
  const text = runCliToFile(featurizeArgs(execs, specs, "graph"), "graphs.jsonl");
  return parseJsonl(text).map((obj) => ({
    execId: obj.exec_id as number,
    nodes: (obj.nodes as Array<Record<string, unknown>>).map((n) => ({
      id: n.id as string,
      activity: n.activity as string,
      objects: n.objects as string[],
      features: n.features as Record<string, number | null>,
    })),
    edges: (obj.edges as [string, string][]).map(
      ([src, dst]) => [src, dst] as [string, string],
    ),
  }));
}
