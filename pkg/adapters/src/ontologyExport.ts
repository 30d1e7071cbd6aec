/**
 * Exports from upstream vocabulary distributions into the TSV grammars the
 * pipeline ingests.
 *
 * The topic-ontology export reads URI-triple CSV rows, where
 * `A superTopicOf B` states that A is the broader topic; the emitted rows
 * use the ingestion direction `child<TAB>superTopicOf<TAB>parent`. The
 * taxonomy export reads a synset table and emits hypernym and sense rows.
 */

import { normalizeLabel } from "./schema";

const ROW_RE = /^<([^>]*)>\s*,\s*<([^>]*)>\s*,\s*<([^>]*)>$/;

function uriLabel(uri: string): string {
  const segment = uri.split(/[/#]/).filter((s) => s.length > 0).pop() ?? "";
  let decoded = segment;
  try {
    decoded = decodeURIComponent(segment);
  } catch {
    // keep the raw segment when percent-decoding fails
  }
  return normalizeLabel(decoded.replace(/[_+]/g, " "));
}

function parseRow(line: string): [string, string, string] | null {
  const bracketed = line.match(ROW_RE);
  if (bracketed) return [bracketed[1], bracketed[2], bracketed[3]];
  const parts = line.split(",");
  if (parts.length === 3) return [parts[0].trim(), parts[1].trim(), parts[2].trim()];
  return null;
}

/**
 * Select the sub-hierarchy rooted at `seed` from an upstream CSV dump and
 * render it as ontology TSV rows. An unknown seed yields an empty string,
 * which the downstream loader rejects as a file with no rows.
 */
export function exportTopicOntology(csv: string, seed: string): string {
  const narrower = new Map<string, Set<string>>(); // parent -> children
  const altPairs: [string, string][] = [];
  for (const line of csv.split(/\r?\n/)) {
    if (!line.trim()) continue;
    const row = parseRow(line.trim());
    if (row === null) continue;
    const [left, predicate, right] = row;
    const a = uriLabel(left);
    const b = uriLabel(right);
    if (!a || !b || a === b) continue;
    if (predicate.endsWith("superTopicOf")) {
      if (!narrower.has(a)) narrower.set(a, new Set());
      narrower.get(a)!.add(b);
    } else if (predicate.endsWith("relatedEquivalent") || predicate.endsWith("preferentialEquivalent")) {
      altPairs.push([a, b]);
    }
  }

  const seedLabel = normalizeLabel(seed);
  const selected = new Set<string>();
  if (narrower.has(seedLabel) || [...narrower.values()].some((s) => s.has(seedLabel))) {
    selected.add(seedLabel);
    const frontier = [seedLabel];
    while (frontier.length > 0) {
      const parent = frontier.pop()!;
      for (const child of narrower.get(parent) ?? []) {
        if (!selected.has(child)) {
          selected.add(child);
          frontier.push(child);
        }
      }
    }
  }

  const rows = new Set<string>();
  for (const [parent, children] of narrower) {
    if (!selected.has(parent)) continue;
    for (const child of children) {
      if (selected.has(child)) rows.add(`${child}\tsuperTopicOf\t${parent}`);
    }
  }
  for (const [a, b] of altPairs) {
    if (selected.has(a) || selected.has(b)) rows.add(`${a}\taltLabel\t${b}`);
  }
  const sorted = [...rows].sort();
  return sorted.length > 0 ? sorted.join("\n") + "\n" : "";
}

export type SynsetTable = Record<string, { lemmas: string[]; hypernyms: string[] }>;

/**
 * Render a synset table as taxonomy TSV rows: one hypernym row per edge and
 * one sense row per lemma. Structural validity (single root, acyclicity) is
 * the downstream loader's check.
 */
export function exportTaxonomy(json: string): string {
  const table = JSON.parse(json) as SynsetTable;
  const rows = new Set<string>();
  for (const [synset, entry] of Object.entries(table)) {
    for (const parent of entry.hypernyms ?? []) {
      rows.add(`${synset}\thypernym\t${parent}`);
    }
    for (const lemma of entry.lemmas ?? []) {
      const label = normalizeLabel(lemma);
      if (label) rows.add(`${label}\tsense\t${synset}`);
    }
  }
  const sorted = [...rows].sort();
  return sorted.length > 0 ? sorted.join("\n") + "\n" : "";
}
