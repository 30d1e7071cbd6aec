/**
 * Lexicon-and-rules Penn Treebank tagger.
 *
 * One pass assigns an initial tag from closed-class lexicons and word shape;
 * a second pass repairs tags from local context (infinitives after TO/MD,
 * past vs participle for -ed forms, relative vs complementizer "that").
 * Every output tag belongs to the Penn inventory.
 */

import { VERB_BASES } from "./lemmatizer";
import { PENN_TAGS } from "./schema";

const PUNCT: Record<string, string> = {
  ".": ".", "!": ".", "?": ".", ",": ",", ";": ":", ":": ":", "...": ":",
  "(": "(", ")": ")", "[": "-LRB-", "]": "-RRB-", "{": "-LRB-", "}": "-RRB-",
  "``": "``", "''": "''", '"': "''", "`": "``", "'": "''",
  "%": "SYM", "&": "CC", "#": "#", "$": "$", "=": "SYM", "+": "SYM",
  "*": "SYM", "/": "SYM", "<": "SYM", ">": "SYM", "~": "SYM", "-": ":",
};

const CLOSED: Record<string, string> = {
  the: "DT", a: "DT", an: "DT", this: "DT", these: "DT", those: "DT",
  each: "DT", every: "DT", either: "DT", neither: "DT", some: "DT",
  any: "DT", no: "DT", all: "DT", both: "DT", another: "DT",
  of: "IN", in: "IN", on: "IN", for: "IN", with: "IN", by: "IN",
  from: "IN", at: "IN", as: "IN", into: "IN", over: "IN", under: "IN",
  between: "IN", within: "IN", through: "IN", during: "IN", against: "IN",
  about: "IN", across: "IN", after: "IN", before: "IN", without: "IN",
  via: "IN", per: "IN", toward: "IN", towards: "IN", upon: "IN",
  among: "IN", amongst: "IN", besides: "IN", beyond: "IN", like: "IN",
  unlike: "IN", despite: "IN", while: "IN", although: "IN", though: "IN",
  whereas: "IN", because: "IN", if: "IN", whether: "IN", since: "IN",
  unless: "IN", until: "IN", versus: "IN", vs: "IN",
  to: "TO",
  and: "CC", or: "CC", but: "CC", nor: "CC", plus: "CC", yet: "CC",
  can: "MD", could: "MD", may: "MD", might: "MD", must: "MD",
  shall: "MD", should: "MD", will: "MD", would: "MD",
  we: "PRP", i: "PRP", you: "PRP", he: "PRP", she: "PRP", it: "PRP",
  they: "PRP", them: "PRP", us: "PRP", him: "PRP", itself: "PRP",
  themselves: "PRP", ourselves: "PRP", ours: "PRP",
  our: "PRP$", its: "PRP$", their: "PRP$", his: "PRP$", her: "PRP$",
  my: "PRP$", your: "PRP$",
  there: "EX",
  which: "WDT", what: "WDT",
  who: "WP", whom: "WP", whose: "WP$",
  when: "WRB", where: "WRB", how: "WRB", why: "WRB",
  is: "VBZ", are: "VBP", was: "VBD", were: "VBD", am: "VBP", be: "VB",
  been: "VBN", being: "VBG", has: "VBZ", have: "VBP", had: "VBD",
  does: "VBZ", did: "VBD",
  not: "RB", also: "RB", however: "RB", often: "RB", highly: "RB",
  moreover: "RB", furthermore: "RB", thus: "RB", therefore: "RB",
  hence: "RB", typically: "RB", usually: "RB", generally: "RB",
  respectively: "RB", recently: "RB", previously: "RB", currently: "RB",
  finally: "RB", then: "RB", well: "RB", instead: "RB", rather: "RB",
  quite: "RB", very: "RB", too: "RB", already: "RB", still: "RB",
  together: "RB", here: "RB", only: "RB", even: "RB", further: "RB",
  et: "FW", al: "FW", "e.g.": "FW", "i.e.": "FW",
  "'s": "POS", "n't": "RB", "'re": "VBP", "'ve": "VBP", "'m": "VBP",
  "'ll": "MD", "'d": "MD",
  more: "JJR", most: "JJS", less: "JJR", least: "JJS",
  better: "JJR", best: "JJS", worse: "JJR", worst: "JJS",
  one: "CD", two: "CD", three: "CD", four: "CD", five: "CD",
  six: "CD", seven: "CD", eight: "CD", nine: "CD", ten: "CD",
};

const ADJECTIVES = new Set([
  "semantic", "scientific", "neural", "deep", "novel", "new", "large",
  "small", "high", "low", "previous", "existing", "different", "several",
  "various", "multiple", "single", "common", "main", "key", "major",
  "important", "significant", "relevant", "robust", "effective",
  "efficient", "accurate", "automatic", "manual", "available", "good",
  "bad", "early", "late", "recent", "additional", "extensive",
  "comprehensive", "empirical", "experimental", "open", "public", "rich",
  "raw", "full", "complete", "general", "specific", "particular",
  "traditional", "classical", "modern", "current", "original", "final",
  "initial", "individual", "overall", "entire", "numerous", "possible",
  "potential", "successful", "popular", "powerful", "flexible", "scalable",
  "suitable", "useful", "valuable", "essential", "crucial", "critical",
  "fundamental", "broad", "wide", "diverse", "heterogeneous",
  "homogeneous", "synthetic", "real", "true", "false", "positive",
  "negative", "binary", "linear", "statistical", "syntactic", "lexical",
  "textual", "visual", "digital", "online", "internal", "external",
  "global", "local", "joint", "relative", "absolute", "optimal", "latent",
  "explicit", "implicit", "formal", "coarse", "fine", "hybrid", "adaptive",
  "dynamic", "static", "generic", "other", "such", "same", "similar",
  "arbitrary", "random", "sparse", "dense", "shallow", "prior", "free",
  "hard", "easy", "simple", "complex", "difficult", "big", "massive",
  "academic", "scholarly", "corresponding", "strong", "weak", "clear",
]);

// -ing forms that are compound heads or mass nouns in technical prose.
const GERUND_NOUNS = new Set([
  "learning", "mining", "processing", "reasoning", "clustering",
  "embedding", "linking", "tagging", "parsing", "labeling", "labelling",
  "modeling", "modelling", "matching", "ranking", "indexing", "answering",
  "understanding", "computing", "engineering", "preprocessing", "training",
  "filtering", "crawling", "chunking", "stemming", "mapping", "crowdsourcing",
  "checking", "searching",
]);

// Words a suffix rule would misread; all are singular nouns.
const NOUN_OVERRIDES = new Set([
  "logic", "topic", "metric", "statistic", "heuristic", "semantics",
  "physics", "statistics", "linguistics", "analysis", "basis",
  "hypothesis", "thesis", "synthesis", "corpus", "consensus",
  "status", "series", "species", "standard", "research",
  "base", "search",
]);

const NOUN_TAGS = new Set(["NN", "NNS", "NNP", "NNPS"]);
const VERBISH = new Set(["VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "MD"]);
const PARTICIPLE_PREPS = new Set([
  "on", "with", "from", "by", "in", "to", "against", "for", "upon",
  "over", "into", "via", "through", "as", "at",
]);

function isNumber(surface: string): boolean {
  return /^\d+(,\d{3})*(\.\d+)?$/.test(surface);
}

function shapeTag(surface: string, index: number): string {
  const lower = surface.toLowerCase();
  if (PUNCT[surface] !== undefined) return PUNCT[surface];
  if (isNumber(surface)) return "CD";
  if (CLOSED[lower] !== undefined) return CLOSED[lower];

  if (/^[A-Z]{2,}s?$/.test(surface)) return "NNP"; // acronyms: OWL, RDF
  if (index > 0 && /^[A-Z]/.test(surface)) return "NNP";
  if (/^[A-Z]/.test(surface) && /[A-Z]/.test(surface.slice(1))) return "NNP";

  if (GERUND_NOUNS.has(lower)) return "NN";
  if (NOUN_OVERRIDES.has(lower)) return "NN";
  if (ADJECTIVES.has(lower)) return "JJ";
  if (lower.endsWith("ly") && lower.length > 4) return "RB";
  if (VERB_BASES.has(lower)) return "VBP";
  if (lower.endsWith("ing") && lower.length > 4) return "VBG";
  if (lower.endsWith("ed") && lower.length > 3) return "VBN";
  if (/(al|ous|ive|able|ible|ful|less|ic|ical)$/.test(lower) && lower.length > 4) {
    return "JJ";
  }
  if (lower.endsWith("s") && !/(ss|us|is)$/.test(lower) && lower.length > 2) {
    if (lower.endsWith("ies") && VERB_BASES.has(lower.slice(0, -3) + "y")) {
      return "VBZ";
    }
    const stem = lower.endsWith("es") ? lower.slice(0, -2) : lower.slice(0, -1);
    if (VERB_BASES.has(stem) || VERB_BASES.has(stem + "e") || VERB_BASES.has(lower.slice(0, -1))) {
      return "VBZ"; // repaired to NNS after determiners
    }
    if (GERUND_NOUNS.has(lower.slice(0, -1))) return "NNS";
    return "NNS";
  }
  return "NN";
}

function initialTag(surface: string, index: number): string {
  if (index === 0 && /^[A-Z][a-z]/.test(surface)) {
    // sentence-initial capitalization is not evidence of a proper noun
    return shapeTag(surface.toLowerCase(), 0);
  }
  return shapeTag(surface, index);
}

/** Tag a tokenized sentence; output length equals input length. */
export function tagTokens(surfaces: string[]): string[] {
  const tags = surfaces.map((s, i) => initialTag(s, i));
  const lower = surfaces.map((s) => s.toLowerCase());

  for (let i = 0; i < tags.length; i++) {
    const prev = i > 0 ? tags[i - 1] : "";
    const next = i + 1 < tags.length ? tags[i + 1] : "";

    // infinitives and bare verbs after modals
    if ((prev === "TO" || prev === "MD") && (tags[i] === "VBP" || tags[i] === "VBZ" || tags[i] === "NN")) {
      if (VERB_BASES.has(lower[i])) tags[i] = "VB";
    }
    // noun reads of verb-shaped words in determiner contexts
    if (tags[i] === "VBP" && (prev === "DT" || prev === "JJ" || prev === "PRP$" || prev === "CD" || prev === "IN")) {
      tags[i] = "NN";
    }
    if (tags[i] === "VBZ" && CLOSED[lower[i]] === undefined) {
      if (prev === "DT" || prev === "JJ" || prev === "PRP$" || prev === "CD") {
        tags[i] = "NNS";
      } else if (VERBISH.has(prev) || VERBISH.has(next)) {
        tags[i] = "NNS"; // "answer queries", "Results show"
      }
    }
    // past vs participle for -ed forms
    if (tags[i] === "VBN" && lower[i].endsWith("ed")) {
      if (VERBISH.has(prev) || (prev === "RB" && i >= 2 && VERBISH.has(tags[i - 2]))) {
        tags[i] = "VBN"; // after an auxiliary: "is used", "has been applied"
      } else if (prev === "PRP") {
        tags[i] = "VBD"; // "we compared"
      } else if (NOUN_TAGS.has(prev)) {
        tags[i] = PARTICIPLE_PREPS.has(lower[i + 1] ?? "") ? "VBN" : "VBD";
      }
    }
    // "that": complementizer after a verb, relative before one
    if (lower[i] === "that") {
      if (VERBISH.has(prev)) tags[i] = "IN";
      else if (NOUN_TAGS.has(prev) && (VERBISH.has(next) || next === "RB")) tags[i] = "WDT";
      else if (next === "DT" || NOUN_TAGS.has(next) || next === "JJ") tags[i] = "DT";
      else tags[i] = "IN";
    }
    // comparative vs adverbial more/most
    if ((tags[i] === "JJR" || tags[i] === "JJS") && (lower[i] === "more" || lower[i] === "most" || lower[i] === "less" || lower[i] === "least")) {
      if (next === "JJ" || next === "RB" || next === "VBN") {
        tags[i] = tags[i] === "JJR" ? "RBR" : "RBS";
      }
    }
    if (!PENN_TAGS.has(tags[i])) tags[i] = "NN";
  }
  return tags;
}

export { NOUN_TAGS, VERBISH };
