/**
 * Corpus annotation: abstracts in, one schema-valid sentence record per
 * line out.
 *
 * Input is line-delimited JSON objects {"doc_id", "text"}. A document that
 * cannot be processed is skipped with an error line and processing
 * continues; an empty abstract simply yields no records. Output records are
 * sorted by (doc_id, sent_idx) before serialization.
 */

import { lemmatize } from "./lemmatizer";
import { extractOpenTriples } from "./openie";
import {
  EntityMention,
  RawRelation,
  SentenceRecord,
  normalizeLabel,
  recordToJson,
  validateRecord,
} from "./schema";
import {
  Span,
  chunkSentence,
  extractEfRelations,
  typeOfChunk,
} from "./spans";
import { splitSentences, tokenizeSentence } from "./text";
import { tagTokens } from "./tagger";
import { matchTopics } from "./topics";

export type AnnotateOptions = {
  /** Normalized topic labels; when given, matches become Topic mentions. */
  topics?: Set<string>;
};

const SOURCE_RANK: Record<string, number> = { EF: 0, CSO: 1, OIE: 2 };

function spanKey(s: Span): string {
  return `${s.start}:${s.end}`;
}

/** Annotate one sentence; `sentIdx` is its position within the document. */
export function annotateSentence(
  docId: string,
  sentIdx: number,
  sentence: string,
  options: AnnotateOptions = {}
): SentenceRecord {
  const surfaces = tokenizeSentence(sentence);
  const tags = tagTokens(surfaces);
  const lemmas = surfaces.map((s, i) => lemmatize(s, tags[i]));
  const labelOf = (span: Span) =>
    normalizeLabel(surfaces.slice(span.start, span.end).join(" "));

  const chunks = chunkSentence(surfaces, tags, lemmas);
  const mentions: EntityMention[] = chunks.map((c) => ({
    start: c.start,
    end: c.end,
    label: labelOf(c),
    type: typeOfChunk(labelOf(c), lemmas[c.end - 1], c.end - c.start === 1),
    source: "EF",
  }));

  if (options.topics !== undefined) {
    for (const match of matchTopics(surfaces, options.topics)) {
      mentions.push({
        start: match.start,
        end: match.end,
        label: match.label,
        type: "Topic",
        source: "CSO",
      });
    }
  }

  const efRelations = extractEfRelations(surfaces, tags, lemmas, chunks);
  const openTriples = extractOpenTriples(surfaces, tags, lemmas, chunks);

  const mentionSpans = new Set(mentions.map(spanKey));
  for (const triple of openTriples) {
    for (const span of [triple.subj, triple.obj]) {
      if (!mentionSpans.has(spanKey(span))) {
        mentionSpans.add(spanKey(span));
        mentions.push({
          start: span.start,
          end: span.end,
          label: labelOf(span),
          type: "Other-Scientific-Term",
          source: "OIE",
        });
      }
    }
  }

  const unique = new Map<string, EntityMention>();
  for (const m of mentions) {
    unique.set(`${m.start}:${m.end}:${m.label}:${m.type}:${m.source}`, m);
  }
  const entities = [...unique.values()].sort(
    (a, b) =>
      a.start - b.start ||
      a.end - b.end ||
      SOURCE_RANK[a.source] - SOURCE_RANK[b.source] ||
      (a.label < b.label ? -1 : a.label > b.label ? 1 : 0)
  );

  const firstIndexBySpan = new Map<string, number>();
  entities.forEach((m, idx) => {
    const key = spanKey(m);
    if (!firstIndexBySpan.has(key)) firstIndexBySpan.set(key, idx);
  });

  const relations: RawRelation[] = [];
  const seen = new Set<string>();
  const push = (subj: Span, obj: Span, label: string, source: string) => {
    const si = firstIndexBySpan.get(spanKey(subj));
    const oi = firstIndexBySpan.get(spanKey(obj));
    if (si === undefined || oi === undefined || si === oi) return;
    const key = `${si}|${oi}|${label}|${source}`;
    if (seen.has(key)) return;
    seen.add(key);
    relations.push({ subj: si, obj: oi, label, source });
  };
  for (const rel of efRelations) push(rel.subj, rel.obj, rel.label, "EF");
  for (const triple of openTriples) push(triple.subj, triple.obj, triple.label, "OIE");
  relations.sort(
    (a, b) =>
      a.subj - b.subj ||
      a.obj - b.obj ||
      (a.label < b.label ? -1 : a.label > b.label ? 1 : 0) ||
      (a.source < b.source ? -1 : a.source > b.source ? 1 : 0)
  );

  return {
    doc_id: docId,
    sent_idx: sentIdx,
    text: surfaces.join(" "),
    tokens: surfaces.map((t, i) => ({ t, lemma: lemmas[i], pos: tags[i] })),
    entities,
    relations,
  };
}

export type CorpusResult = {
  records: SentenceRecord[];
  /** One line per skipped document or record, in input order. */
  errors: string[];
};

/** Annotate one abstract; an empty or blank text yields no records. */
export function annotateAbstract(
  docId: string,
  text: string,
  options: AnnotateOptions = {}
): SentenceRecord[] {
  return splitSentences(text).map((sentence, idx) =>
    annotateSentence(docId, idx, sentence, options)
  );
}

/**
 * Annotate a whole corpus of {"doc_id", "text"} lines. Malformed documents
 * are reported in `errors` and skipped; valid ones are annotated, and any
 * records failing self-validation are likewise reported and dropped.
 */
export function annotateCorpus(lines: string[], options: AnnotateOptions = {}): CorpusResult {
  const records: SentenceRecord[] = [];
  const errors: string[] = [];
  const seenDocs = new Set<string>();

  lines.forEach((line, lineIdx) => {
    if (!line.trim()) return;
    let doc: unknown;
    try {
      doc = JSON.parse(line);
    } catch (err) {
      errors.push(`line ${lineIdx + 1}: invalid JSON: ${(err as Error).message}`);
      return;
    }
    const docId = (doc as { doc_id?: unknown }).doc_id;
    const text = (doc as { text?: unknown }).text;
    if (typeof docId !== "string" || docId.length === 0) {
      errors.push(`line ${lineIdx + 1}: missing or empty doc_id`);
      return;
    }
    if (typeof text !== "string") {
      errors.push(`line ${lineIdx + 1}: document ${docId}: text must be a string`);
      return;
    }
    if (seenDocs.has(docId)) {
      errors.push(`line ${lineIdx + 1}: duplicate document ${docId}`);
      return;
    }
    seenDocs.add(docId);
    for (const record of annotateAbstract(docId, text, options)) {
      const problems = validateRecord(record);
      if (problems.length > 0) {
        errors.push(`document ${docId} sentence ${record.sent_idx}: ${problems[0]}`);
        continue;
      }
      records.push(record);
    }
  });

  records.sort((a, b) =>
    a.doc_id < b.doc_id ? -1 : a.doc_id > b.doc_id ? 1 : a.sent_idx - b.sent_idx
  );
  return { records, errors };
}

/** One JSON object per line, trailing newline included when non-empty. */
export function serializeRecords(records: SentenceRecord[]): string {
  if (records.length === 0) return "";
  return records.map(recordToJson).join("\n") + "\n";
}
