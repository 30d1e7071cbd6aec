#!/usr/bin/env node
/**
 * Command-line entry point.
 *
 *   scikg-adapters annotate <abstracts.jsonl> <out.jsonl> [--topics <labels.txt>]
 *   scikg-adapters export-ontology <dump.csv> <out.tsv> --seed <label>
 *   scikg-adapters export-taxonomy <synsets.json> <out.tsv>
 *
 * Per-document annotation failures go to stderr and do not stop the run;
 * usage errors and unreadable files exit with status 1.
 */

import * as fs from "fs";
import { annotateCorpus, serializeRecords } from "./annotate";
import { exportTaxonomy, exportTopicOntology } from "./ontologyExport";
import { normalizeLabel } from "./schema";

const USAGE = [
  "usage: scikg-adapters <command> ...",
  "  annotate <abstracts.jsonl> <out.jsonl> [--topics <labels.txt>]",
  "  export-ontology <dump.csv> <out.tsv> --seed <label>",
  "  export-taxonomy <synsets.json> <out.tsv>",
].join("\n");

function fail(message: string): never {
  console.error(message);
  process.exit(1);
}

function readFileOrFail(path: string): string {
  try {
    return fs.readFileSync(path, "utf8");
  } catch (err) {
    fail(`cannot read ${path}: ${(err as Error).message}`);
  }
}

function runAnnotate(args: string[]): void {
  const positional: string[] = [];
  let topicsPath: string | undefined;
  for (let i = 0; i < args.length; i++) {
    if (args[i] === "--topics") {
      topicsPath = args[++i];
      if (topicsPath === undefined) fail("--topics requires a file path");
    } else {
      positional.push(args[i]);
    }
  }
  if (positional.length !== 2) fail(USAGE);
  const [inputPath, outputPath] = positional;

  let topics: Set<string> | undefined;
  if (topicsPath !== undefined) {
    topics = new Set(
      readFileOrFail(topicsPath)
        .split(/\r?\n/)
        .map((line) => normalizeLabel(line))
        .filter((label) => label.length > 0)
    );
  }

  const lines = readFileOrFail(inputPath).split(/\r?\n/);
  const { records, errors } = annotateCorpus(lines, { topics });
  for (const error of errors) console.error(`skipped: ${error}`);
  fs.writeFileSync(outputPath, serializeRecords(records));
  console.log(`wrote ${records.length} records to ${outputPath}`);
}

function runExportOntology(args: string[]): void {
  const positional: string[] = [];
  let seed: string | undefined;
  for (let i = 0; i < args.length; i++) {
    if (args[i] === "--seed") {
      seed = args[++i];
      if (seed === undefined) fail("--seed requires a topic label");
    } else {
      positional.push(args[i]);
    }
  }
  if (positional.length !== 2 || seed === undefined) fail(USAGE);
  const tsv = exportTopicOntology(readFileOrFail(positional[0]), seed);
  fs.writeFileSync(positional[1], tsv);
  console.log(`wrote ${tsv.split("\n").filter((l) => l).length} rows to ${positional[1]}`);
}

function runExportTaxonomy(args: string[]): void {
  if (args.length !== 2) fail(USAGE);
  let tsv: string;
  try {
    tsv = exportTaxonomy(readFileOrFail(args[0]));
  } catch (err) {
    fail(`cannot parse ${args[0]}: ${(err as Error).message}`);
  }
  fs.writeFileSync(args[1], tsv);
  console.log(`wrote ${tsv.split("\n").filter((l) => l).length} rows to ${args[1]}`);
}

function main(): void {
  const [command, ...rest] = process.argv.slice(2);
  if (command === "annotate") runAnnotate(rest);
  else if (command === "export-ontology") runExportOntology(rest);
  else if (command === "export-taxonomy") runExportTaxonomy(rest);
  else fail(USAGE);
}

if (require.main === module) {
  main();
}
