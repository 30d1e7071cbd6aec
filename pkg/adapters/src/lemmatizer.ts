/**
 * Rule-based English lemmatizer tuned for scholarly prose.
 *
 * Verb lemmas are the ones downstream relation handling depends on, so verb
 * inflection gets an explicit base-form lexicon with e-restoration and
 * consonant undoubling; noun plurals use suffix rules plus an irregular
 * table. Every lemma is lowercased and non-empty.
 */

// Base forms of verbs common in abstracts; used for tagging verb reads and
// for restoring a dropped final "e" when stripping -ing / -ed.
export const VERB_BASES = new Set([
  "propose", "present", "introduce", "describe", "use", "exploit", "apply",
  "employ", "adopt", "utilize", "leverage", "develop", "build", "construct",
  "create", "design", "implement", "evaluate", "assess", "compare", "combine",
  "integrate", "merge", "extract", "detect", "identify", "classify",
  "cluster", "map", "link", "annotate", "parse", "train", "learn", "improve",
  "enhance", "outperform", "achieve", "obtain", "yield", "produce", "provide",
  "support", "enable", "demonstrate", "show", "report", "investigate",
  "analyze", "analyse", "study", "explore", "consider", "address", "tackle",
  "solve", "reduce", "increase", "require", "rely", "base", "focus",
  "perform", "conduct", "measure", "test", "validate", "verify", "generate",
  "infer", "derive", "select", "filter", "rank", "retrieve", "search",
  "mine", "process", "organize", "represent", "model", "capture", "encode",
  "embed", "align", "match", "normalize", "resolve", "disambiguate",
  "summarize", "translate", "recognize", "define", "contain", "consist",
  "include", "comprise", "involve", "allow", "remain", "suggest", "indicate",
  "reveal", "confirm", "observe", "note", "discuss", "compute", "calculate",
  "estimate", "predict", "expect", "aim", "seek", "attempt", "try", "help",
  "make", "take", "give", "find", "hold", "lead", "leave", "bring", "think",
  "get", "set", "run", "work", "form", "follow", "return", "result", "occur",
  "exist", "depend", "differ", "vary", "extend", "adapt", "refine",
  "collect", "gather", "label", "split", "divide", "group", "sort", "order",
  "store", "publish", "release", "share", "access", "query", "answer",
  "respond", "scale", "handle", "manage", "ensure", "guarantee", "preserve",
  "maintain", "avoid", "prevent", "limit", "restrict", "overcome",
  "mitigate", "facilitate", "accelerate", "simplify", "unify", "connect",
  "relate", "assign", "serve", "cover", "offer", "deliver", "operate",
  "formalize", "discover", "populate", "curate", "index", "crawl",
  "control", "distribute", "automate", "structure",
]);

const VERB_IRREGULARS: Record<string, string> = {
  is: "be", are: "be", was: "be", were: "be",
  am: "be", been: "be", being: "be", be: "be",
  has: "have", have: "have", had: "have", having: "have",
  does: "do", do: "do", did: "do", done: "do",
  made: "make", built: "build", shown: "show", showed: "show",
  given: "give", gave: "give", taken: "take", took: "take",
  found: "find", held: "hold", led: "lead", left: "leave",
  brought: "bring", thought: "think", sought: "seek",
  drawn: "draw", drew: "draw", grown: "grow", grew: "grow",
  known: "know", knew: "know", seen: "see", saw: "see",
  got: "get", gotten: "get", kept: "keep", met: "meet",
  became: "become", came: "come", chose: "choose", chosen: "choose",
  rose: "rise", risen: "rise", arose: "arise", arisen: "arise",
  wrote: "write", written: "write", understood: "understand",
  proved: "prove", proven: "prove", dealt: "deal", meant: "mean",
  began: "begin", begun: "begin", ran: "run", underwent: "undergo",
};

const NOUN_IRREGULARS: Record<string, string> = {
  analyses: "analysis", corpora: "corpus", criteria: "criterion",
  phenomena: "phenomenon", theses: "thesis", hypotheses: "hypothesis",
  indices: "index", matrices: "matrix", vertices: "vertex",
  children: "child", schemata: "schema", thesauri: "thesaurus",
  taxa: "taxon", media: "medium", data: "data", people: "people",
};

const SPECIAL: Record<string, string> = { "n't": "not", "'ll": "will" };

function restore(stem: string): string {
  if (VERB_BASES.has(stem)) return stem;
  if (VERB_BASES.has(stem + "e")) return stem + "e";
  const n = stem.length;
  if (n >= 3 && stem[n - 1] === stem[n - 2] && VERB_BASES.has(stem.slice(0, -1))) {
    return stem.slice(0, -1);
  }
  return stem;
}

function stripPlural(lower: string): string {
  if (lower.length > 4 && lower.endsWith("ies")) return lower.slice(0, -3) + "y";
  if (/(ss|x|z|ch|sh)es$/.test(lower)) return lower.slice(0, -2);
  if (lower.length > 2 && lower.endsWith("s") && !/(ss|us|is)$/.test(lower)) {
    return lower.slice(0, -1);
  }
  return lower;
}

/** Lemma of one token given its Penn tag; always lowercase, never empty. */
export function lemmatize(surface: string, pos: string): string {
  const lower = surface.toLowerCase();
  if (SPECIAL[lower]) return SPECIAL[lower];
  if (!/[a-z]/.test(lower)) return lower; // punctuation, numbers, symbols

  if (pos.startsWith("V") || pos === "MD") {
    if (VERB_IRREGULARS[lower]) return VERB_IRREGULARS[lower];
    if (pos === "VBZ") return stripPlural(lower);
    if (pos === "VBG" && lower.length >= 5 && lower.endsWith("ing")) {
      return restore(lower.slice(0, -3));
    }
    if ((pos === "VBD" || pos === "VBN") && lower.endsWith("ed") && lower.length >= 4) {
      if (lower.endsWith("ied")) return lower.slice(0, -3) + "y";
      return restore(lower.slice(0, -2));
    }
    return lower;
  }
  if (pos === "NNS" || pos === "NNPS") {
    return NOUN_IRREGULARS[lower] ?? stripPlural(lower);
  }
  if (pos === "JJR" || pos === "RBR") {
    if (lower === "better") return "good";
    if (lower === "worse") return "bad";
    if (lower.endsWith("er") && lower.length > 4) return lower.slice(0, -2);
    return lower;
  }
  if (pos === "JJS" || pos === "RBS") {
    if (lower === "best") return "good";
    if (lower === "worst") return "bad";
    if (lower.endsWith("est") && lower.length > 5) return lower.slice(0, -3);
    return lower;
  }
  return NOUN_IRREGULARS[lower] ?? lower;
}
