/**
 * The sentence-annotation record format consumed by the downstream pipeline,
 * plus the closed vocabularies its loader enforces. Everything the adapters
 * emit is validated against this module before it is written, so a schema
 * drift shows up here rather than as a loader error in another process.
 */

export type Token = {
  t: string;
  lemma: string;
  pos: string;
};

export type EntityMention = {
  start: number;
  end: number;
  label: string;
  type: string;
  source: string;
};

export type RawRelation = {
  subj: number;
  obj: number;
  label: string;
  source: string;
};

export type SentenceRecord = {
  doc_id: string;
  sent_idx: number;
  text: string;
  tokens: Token[];
  entities: EntityMention[];
  relations: RawRelation[];
};

export const ENTITY_TYPES = new Set([
  "Task",
  "Method",
  "Metric",
  "Material",
  "Other-Scientific-Term",
  "Generic",
  "Topic",
]);

export const MENTION_SOURCES = new Set(["EF", "CSO", "OIE"]);

export const RELATION_SOURCES = new Set(["EF", "OIE"]);

// Span-extractor relation labels, with the generic conjunction type already
// discarded; the emitter never produces anything outside this set.
export const EF_RELATION_LABELS = new Set([
  "used-for",
  "hyponym-of",
  "part-of",
  "feature-of",
  "evaluate-for",
  "compare",
]);

// Penn Treebank inventory, including the punctuation and bracket tags.
export const PENN_TAGS = new Set([
  "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
  "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
  "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP",
  "VBZ", "WDT", "WP", "WP$", "WRB",
  "#", "$", "''", "``", "(", ")", ",", ".", ":", "-LRB-", "-RRB-",
]);

/** Canonical label form: lowercased, single-spaced, trimmed. */
export function normalizeLabel(raw: string): string {
  return raw.toLowerCase().replace(/\s+/g, " ").trim();
}

/**
 * Check one record against the loader's rules. Returns a list of problems,
 * empty when the record is valid.
 */
export function validateRecord(record: SentenceRecord): string[] {
  const problems: string[] = [];
  if (!record.doc_id) problems.push("doc_id must be a non-empty string");
  if (!Number.isInteger(record.sent_idx) || record.sent_idx < 0) {
    problems.push("sent_idx must be a non-negative integer");
  }
  record.tokens.forEach((tok, i) => {
    if (!tok.t) problems.push(`tokens[${i}].t is empty`);
    if (!tok.lemma) problems.push(`tokens[${i}].lemma is empty`);
    if (!PENN_TAGS.has(tok.pos)) problems.push(`tokens[${i}].pos ${tok.pos} is not a Penn tag`);
  });
  record.entities.forEach((ent, i) => {
    if (!(0 <= ent.start && ent.start < ent.end && ent.end <= record.tokens.length)) {
      problems.push(`entities[${i}] span [${ent.start}, ${ent.end}) out of range`);
    }
    if (normalizeLabel(ent.label) !== ent.label || !ent.label) {
      problems.push(`entities[${i}].label ${JSON.stringify(ent.label)} is not normalized`);
    }
    if (!ENTITY_TYPES.has(ent.type)) problems.push(`entities[${i}].type ${ent.type} unknown`);
    if (!MENTION_SOURCES.has(ent.source)) problems.push(`entities[${i}].source ${ent.source} unknown`);
  });
  record.relations.forEach((rel, i) => {
    const n = record.entities.length;
    if (!(0 <= rel.subj && rel.subj < n) || !(0 <= rel.obj && rel.obj < n)) {
      problems.push(`relations[${i}] references a missing mention`);
    }
    if (!rel.label || normalizeLabel(rel.label) !== rel.label) {
      problems.push(`relations[${i}].label ${JSON.stringify(rel.label)} is not normalized`);
    }
    if (!RELATION_SOURCES.has(rel.source)) problems.push(`relations[${i}].source ${rel.source} unknown`);
    if (rel.source === "EF" && !EF_RELATION_LABELS.has(rel.label)) {
      problems.push(`relations[${i}].label ${rel.label} is not a span-extractor relation`);
    }
  });
  return problems;
}

/** Serialize a record with the stable key order used across the tool chain. */
export function recordToJson(record: SentenceRecord): string {
  return JSON.stringify({
    doc_id: record.doc_id,
    entities: record.entities.map((e) => ({
      end: e.end,
      label: e.label,
      source: e.source,
      start: e.start,
      type: e.type,
    })),
    relations: record.relations.map((r) => ({
      label: r.label,
      obj: r.obj,
      source: r.source,
      subj: r.subj,
    })),
    sent_idx: record.sent_idx,
    text: record.text,
    tokens: record.tokens.map((t) => ({ lemma: t.lemma, pos: t.pos, t: t.t })),
  });
}
