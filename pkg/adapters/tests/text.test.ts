import { describe, expect, it } from "vitest";
import { splitSentences, tokenizeSentence } from "../src/text";

describe("splitSentences", () => {
  it("splits on terminators followed by a capitalized sentence", () => {
    const text = "Knowledge graphs improve web search. OWL supports reasoners. Does it scale? Yes.";
    expect(splitSentences(text)).toEqual([
      "Knowledge graphs improve web search.",
      "OWL supports reasoners.",
      "Does it scale?",
      "Yes.",
    ]);
  });

  it("does not split inside decimals or after known abbreviations", () => {
    const text = "The score reaches 94.2 on average. Systems, e.g. parsers, vary. See Smith et al. for details.";
    expect(splitSentences(text)).toEqual([
      "The score reaches 94.2 on average.",
      "Systems, e.g. parsers, vary.",
      "See Smith et al. for details.",
    ]);
  });

  it("keeps a trailing fragment without a terminator", () => {
    expect(splitSentences("First sentence. and a trailing fragment")).toEqual([
      "First sentence. and a trailing fragment",
    ]);
  });

  it("yields nothing for empty or blank input", () => {
    expect(splitSentences("")).toEqual([]);
    expect(splitSentences("   \n\t ")).toEqual([]);
  });
});

describe("tokenizeSentence", () => {
  it("separates punctuation and keeps parenthesized acronyms intact", () => {
    expect(tokenizeSentence("The Web Ontology Language (OWL) is a standard.")).toEqual([
      "The", "Web", "Ontology", "Language", "(", "OWL", ")", "is", "a", "standard", ".",
    ]);
  });

  it("keeps hyphenated compounds and decimal or grouped numbers whole", () => {
    expect(tokenizeSentence("We analyze 1,000 trade-offs at 94.2% precision.")).toEqual([
      "We", "analyze", "1,000", "trade-offs", "at", "94.2", "%", "precision", ".",
    ]);
  });

  it("splits contractions and possessives", () => {
    expect(tokenizeSentence("It doesn't use the system's output.")).toEqual([
      "It", "does", "n't", "use", "the", "system", "'s", "output", ".",
    ]);
  });

  it("keeps dotted abbreviations as single tokens", () => {
    expect(tokenizeSentence("Many corpora, e.g. news text, are large.")).toEqual([
      "Many", "corpora", ",", "e.g.", "news", "text", ",", "are", "large", ".",
    ]);
  });

  it("never yields an empty token", () => {
    const tokens = tokenizeSentence("  A  spaced   sentence .  ");
    expect(tokens.length).toBeGreaterThan(0);
    for (const t of tokens) expect(t.length).toBeGreaterThan(0);
  });
});
