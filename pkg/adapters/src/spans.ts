/**
 * Span extraction: typed entity mentions from noun-phrase chunks, and the
 * six span-extractor relations read off lexical patterns between them.
 *
 * Chunks trim leading generic modifiers and counts, merge title-case
 * conjuncts into a single span (the downstream splitter undoes these), and
 * drop single-token containers such as "part" or "component" that only serve
 * the relation patterns.
 */

export type Span = { start: number; end: number };

export type EfRelation = { subj: Span; obj: Span; label: string };

const NP_INNER = new Set(["JJ", "NN", "NNS", "NNP", "NNPS", "VBG", "VBN", "CD", "FW"]);
const NOUN = new Set(["NN", "NNS", "NNP", "NNPS"]);

// Modifiers with no entity content; trimmed from the front of a chunk.
const DROP_MODIFIERS = new Set([
  "new", "novel", "different", "several", "various", "numerous", "many",
  "multiple", "other", "such", "proposed", "presented", "given", "certain",
  "important", "significant", "recent", "previous", "existing", "further",
  "first", "second", "third", "main", "key", "major", "potential",
  "possible", "current", "original", "final", "initial", "additional",
  "more", "most", "less", "least", "own", "same", "so-called",
]);

// Single-token chunks with these head lemmas are pattern scaffolding, not
// entities ("is a component of", "a set of").
const CHUNK_DISCARD = new Set([
  "part", "component", "module", "subtask", "submodule", "feature",
  "property", "characteristic", "variant", "combination", "number",
  "variety", "range", "kind", "type", "sort", "example", "instance",
  "case", "use", "set", "group", "amount", "lot", "term", "one", "way",
  "detail", "time", "million", "billion", "thousand",
]);

const TYPE_OVERRIDES: [string, string][] = [
  ["recommendation system", "Task"],
  ["recommender system", "Task"],
  ["question answering", "Task"],
  ["entity linking", "Task"],
  ["named entity recognition", "Task"],
  ["information extraction", "Task"],
  ["knowledge graph construction", "Task"],
  ["machine translation", "Task"],
  ["word sense disambiguation", "Task"],
  ["entity resolution", "Task"],
  ["knowledge base", "Material"],
];

const TASK_HEADS = new Set([
  "task", "problem", "classification", "recognition", "extraction",
  "detection", "disambiguation", "linking", "search", "retrieval",
  "recommendation", "translation", "parsing", "alignment", "matching",
  "clustering", "segmentation", "summarization", "construction",
  "population", "prediction", "identification", "annotation", "labeling",
  "answering", "resolution", "mining", "analysis", "generation",
]);

const METHOD_HEADS = new Set([
  "system", "approach", "method", "algorithm", "model", "technique",
  "framework", "architecture", "pipeline", "network", "classifier",
  "extractor", "parser", "tagger", "embedding", "learning", "reasoner",
  "tool", "toolkit", "procedure", "strategy", "mechanism", "scheme",
  "heuristic", "graph", "base", "ontology", "representation",
]);

const METRIC_HEADS = new Set([
  "accuracy", "precision", "recall", "f-measure", "f-score", "f1",
  "score", "rate", "metric", "measure", "percentage", "bleu",
]);

const MATERIAL_HEADS = new Set([
  "dataset", "corpus", "benchmark", "collection", "wordnet", "dbpedia",
  "wikipedia", "freebase", "yago", "abstract", "paper", "publication",
  "document", "text", "article", "repository", "database", "thesaurus",
  "resource", "data",
]);

// Unmodified head nouns standing in for something named elsewhere.
const GENERIC_BARE = new Set([
  "approach", "method", "system", "task", "technique", "framework",
  "model", "solution", "tool",
]);

function isTitleCase(surfaces: string[], span: Span): boolean {
  for (let k = span.start; k < span.end; k++) {
    const s = surfaces[k];
    if (/[A-Za-z]/.test(s) && !/^[A-Z]/.test(s)) return false;
  }
  return true;
}

/** Noun-phrase spans for one tagged sentence, in left-to-right order. */
export function chunkSentence(
  surfaces: string[],
  tags: string[],
  lemmas: string[]
): Span[] {
  const lower = surfaces.map((s) => s.toLowerCase());
  const raw: Span[] = [];
  let i = 0;
  while (i < tags.length) {
    if (!NP_INNER.has(tags[i])) {
      i++;
      continue;
    }
    let j = i;
    while (j < tags.length && NP_INNER.has(tags[j])) j++;
    let end = j;
    while (end > i && !NOUN.has(tags[end - 1])) end--;
    let start = i;
    while (start < end && (tags[start] === "CD" || DROP_MODIFIERS.has(lower[start]))) {
      start++;
    }
    if (start < end) raw.push({ start, end });
    i = j;
  }

  // merge "Machine Learning and Data Mining"-style title conjuncts
  const merged: Span[] = [];
  let k = 0;
  while (k < raw.length) {
    const cur = raw[k];
    const nxt = raw[k + 1];
    if (
      nxt !== undefined &&
      nxt.start === cur.end + 1 &&
      lower[cur.end] === "and" &&
      isTitleCase(surfaces, cur) &&
      isTitleCase(surfaces, nxt)
    ) {
      merged.push({ start: cur.start, end: nxt.end });
      k += 2;
      continue;
    }
    merged.push(cur);
    k++;
  }

  return merged.filter(
    (c) => !(c.end - c.start === 1 && CHUNK_DISCARD.has(lemmas[c.start]))
  );
}

/** Entity type for a chunk, from a phrase override or its head lemma. */
export function typeOfChunk(label: string, headLemma: string, single: boolean): string {
  for (const [suffix, type] of TYPE_OVERRIDES) {
    if (label === suffix || label.endsWith(" " + suffix)) return type;
  }
  if (single && GENERIC_BARE.has(headLemma)) return "Generic";
  if (TASK_HEADS.has(headLemma)) return "Task";
  if (METHOD_HEADS.has(headLemma)) return "Method";
  if (METRIC_HEADS.has(headLemma)) return "Metric";
  if (MATERIAL_HEADS.has(headLemma)) return "Material";
  return "Other-Scientific-Term";
}

const SKIPPABLE_GAP = new Set(["DT", "PRP$", "RB", "JJ", "CD", "JJR", "JJS", "VBG", "VBN"]);
const PART_NOUNS = new Set(["part", "component", "module", "subtask", "submodule"]);
const FEATURE_NOUNS = new Set(["feature", "property", "characteristic"]);

class SpanIndex {
  private byEnd = new Map<number, Span>();
  private byStart = new Map<number, Span>();

  constructor(
    chunks: Span[],
    private lower: string[],
    private tags: string[]
  ) {
    for (const c of chunks) {
      this.byEnd.set(c.end, c);
      this.byStart.set(c.start, c);
    }
  }

  /** Chunk whose end abuts `idx`, optionally looking past "," or "( ... )". */
  endingAt(idx: number, opts: { comma?: boolean; paren?: boolean } = {}): Span | undefined {
    let k = idx;
    if (opts.comma && this.lower[k - 1] === ",") k--;
    if (opts.paren && this.lower[k - 1] === ")") {
      let depth = 1;
      let p = k - 2;
      while (p >= 0 && depth > 0) {
        if (this.lower[p] === ")") depth++;
        if (this.lower[p] === "(") depth--;
        p--;
      }
      if (depth === 0) k = p + 1;
    }
    if (opts.comma && this.lower[k - 1] === ",") k--;
    return this.byEnd.get(k);
  }

  /** First chunk at or shortly after `idx`, skipping determiner-like gaps. */
  startingNear(idx: number, maxGap = 3): Span | undefined {
    for (let k = idx; k <= idx + maxGap && k < this.tags.length; k++) {
      const hit = this.byStart.get(k);
      if (hit !== undefined) return hit;
      if (!SKIPPABLE_GAP.has(this.tags[k])) return undefined;
    }
    return undefined;
  }

  /** Chunks after `idx` forming a comma/and list, first one included. */
  listAfter(idx: number): Span[] {
    const out: Span[] = [];
    let cur = this.startingNear(idx);
    while (cur !== undefined) {
      out.push(cur);
      let p = cur.end;
      if (this.lower[p] === ",") p++;
      if (this.lower[p] === "and" || this.lower[p] === "or") p++;
      if (p === cur.end) break;
      cur = this.startingNear(p, 2);
    }
    return out;
  }
}

function verbGroupStart(k: number, tags: string[], lemmas: string[]): number {
  let p = k;
  while (
    p > 0 &&
    (tags[p - 1] === "RB" ||
      tags[p - 1] === "MD" ||
      ((tags[p - 1].startsWith("VB") || tags[p - 1] === "VB") &&
        (lemmas[p - 1] === "be" || lemmas[p - 1] === "have")))
  ) {
    p--;
  }
  return p;
}

/**
 * Span-extractor relations for one sentence. Labels come from the fixed
 * six-relation set; endpoints are chunk spans produced by chunkSentence.
 */
export function extractEfRelations(
  surfaces: string[],
  tags: string[],
  lemmas: string[],
  chunks: Span[]
): EfRelation[] {
  const lower = surfaces.map((s) => s.toLowerCase());
  const index = new SpanIndex(chunks, lower, tags);
  const found: EfRelation[] = [];
  const seen = new Set<string>();

  const add = (subj: Span | undefined, label: string, obj: Span | undefined) => {
    if (!subj || !obj) return;
    if (subj.start === obj.start && subj.end === obj.end) return;
    const key = `${subj.start}:${subj.end}|${label}|${obj.start}:${obj.end}`;
    if (seen.has(key)) return;
    seen.add(key);
    found.push({ subj, obj, label });
  };

  for (let k = 0; k < lower.length; k++) {
    const next = lower[k + 1] ?? "";

    // "X is used for Y" -> (X, used-for, Y)
    if (lower[k] === "used" && tags[k] === "VBN" && (next === "for" || next === "in")) {
      const x = index.endingAt(verbGroupStart(k, tags, lemmas), { paren: true });
      add(x, "used-for", index.startingNear(k + 2));
    }

    // "X based on Y" / "X relies on Y" -> (Y, used-for, X)
    if (
      ((lower[k] === "based" || lower[k] === "built") && (next === "on" || next === "upon")) ||
      ((lemmas[k] === "rely" || lemmas[k] === "build") && next === "on")
    ) {
      const x = index.endingAt(verbGroupStart(k, tags, lemmas), { paren: true, comma: true });
      add(index.startingNear(k + 2), "used-for", x);
    }

    // "X such as Y, Z" -> (Y, hyponym-of, X) for each listed item
    if (lower[k] === "such" && next === "as") {
      const x = index.endingAt(k, { comma: true });
      for (const y of index.listAfter(k + 2)) add(y, "hyponym-of", x);
    }

    // "X is a Y"
    if (lemmas[k] === "be" && (tags[k] === "VBZ" || tags[k] === "VBP") && (next === "a" || next === "an")) {
      const x = index.endingAt(k, { paren: true });
      const y = index.startingNear(k + 2);
      add(x, "hyponym-of", y);
    }

    // "X is a component of Y" / "X is a key feature of Y"
    if ((PART_NOUNS.has(lemmas[k]) || FEATURE_NOUNS.has(lemmas[k])) && next === "of") {
      let p = k - 1;
      while (p > 0 && SKIPPABLE_GAP.has(tags[p])) p--;
      if (lemmas[p] === "be") {
        const x = index.endingAt(verbGroupStart(p, tags, lemmas), { paren: true });
        const label = PART_NOUNS.has(lemmas[k]) ? "part-of" : "feature-of";
        add(x, label, index.startingNear(k + 2));
      }
    }

    // "Y consists of X1 and X2" -> (Xi, part-of, Y)
    if (lemmas[k] === "consist" && next === "of") {
      const y = index.endingAt(verbGroupStart(k, tags, lemmas), { paren: true });
      for (const x of index.listAfter(k + 2)) add(x, "part-of", y);
    }
    if (lemmas[k] === "comprise" && tags[k].startsWith("VB")) {
      const y = index.endingAt(verbGroupStart(k, tags, lemmas), { paren: true });
      for (const x of index.listAfter(k + 1)) add(x, "part-of", y);
    }

    // "X is evaluated on Y" / "we evaluate X on Y" -> (Y, evaluate-for, X)
    if (lemmas[k] === "evaluate" || lemmas[k] === "assess" || lemmas[k] === "test") {
      if (tags[k] === "VBN" && (next === "on" || next === "against" || next === "over")) {
        const x = index.endingAt(verbGroupStart(k, tags, lemmas), { paren: true });
        add(index.startingNear(k + 2), "evaluate-for", x);
      } else if (tags[k] === "VBP" || tags[k] === "VBZ" || tags[k] === "VBD") {
        const x = index.startingNear(k + 1);
        if (x !== undefined && (lower[x.end] === "on" || lower[x.end] === "against")) {
          add(index.startingNear(x.end + 1), "evaluate-for", x);
        }
      }
    }

    // "X compared with Y" / "we compare X to Y" / "X versus Y"
    if (lemmas[k] === "compare") {
      if (tags[k] === "VBN" && (next === "with" || next === "to" || next === "against")) {
        const x = index.endingAt(verbGroupStart(k, tags, lemmas), { paren: true, comma: true });
        add(x, "compare", index.startingNear(k + 2));
      } else if (tags[k] === "VBP" || tags[k] === "VBZ" || tags[k] === "VBD") {
        const x = index.startingNear(k + 1);
        if (x !== undefined) {
          const prep = lower[x.end];
          if (prep === "with" || prep === "to" || prep === "against") {
            add(x, "compare", index.startingNear(x.end + 1));
          }
        }
      }
    }
    if (lower[k] === "versus" || lower[k] === "vs") {
      add(index.endingAt(k, { comma: true }), "compare", index.startingNear(k + 1));
    }
  }
  return found;
}

export { SpanIndex, verbGroupStart };
