/**
 * Open-information triple extraction: a chunk, a verb group, and a chunk.
 *
 * The relation label keeps the surface verb phrase (auxiliaries and a
 * trailing particle included, modals and adverbs skipped) so downstream
 * consumers can reduce it to a head verb themselves. Arguments must be
 * chunk spans; pronoun subjects never produce a triple.
 */

import { Span, SpanIndex } from "./spans";

export type OpenTriple = { subj: Span; obj: Span; label: string };

const CORE_VERB = new Set(["VB", "VBD", "VBG", "VBN", "VBP", "VBZ"]);
const RUN_EXTRA = new Set(["MD", "RB"]);

export function extractOpenTriples(
  surfaces: string[],
  tags: string[],
  lemmas: string[],
  chunks: Span[]
): OpenTriple[] {
  const lower = surfaces.map((s) => s.toLowerCase());
  const index = new SpanIndex(chunks, lower, tags);
  const out: OpenTriple[] = [];
  const seen = new Set<string>();

  let i = 0;
  while (i < tags.length) {
    if (!CORE_VERB.has(tags[i]) && tags[i] !== "MD") {
      i++;
      continue;
    }
    let j = i;
    while (j < tags.length && (CORE_VERB.has(tags[j]) || RUN_EXTRA.has(tags[j]))) j++;

    const labelParts: string[] = [];
    let lastCoreLemma = "";
    for (let p = i; p < j; p++) {
      if (CORE_VERB.has(tags[p])) {
        labelParts.push(lower[p]);
        lastCoreLemma = lemmas[p];
      }
    }
    if (labelParts.length === 0) {
      i = j;
      continue;
    }

    const subj = index.endingAt(i, { paren: true });
    let objAt = j;
    if (lastCoreLemma === "be" && (lower[j] === "a" || lower[j] === "an")) {
      labelParts.push(lower[j]);
      objAt = j + 1;
    } else if (tags[j] === "IN" || tags[j] === "TO" || tags[j] === "RP") {
      if (index.startingNear(j + 1) !== undefined) {
        labelParts.push(lower[j]);
        objAt = j + 1;
      }
    }
    const obj = index.startingNear(objAt);

    if (subj && obj && !(subj.start === obj.start && subj.end === obj.end)) {
      const label = labelParts.join(" ");
      const key = `${subj.start}:${subj.end}|${label}|${obj.start}:${obj.end}`;
      if (!seen.has(key)) {
        seen.add(key);
        out.push({ subj, obj, label });
      }
    }
    i = j;
  }
  return out;
}
