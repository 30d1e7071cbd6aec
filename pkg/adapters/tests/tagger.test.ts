import { describe, expect, it } from "vitest";
import { tagTokens } from "../src/tagger";
import { tokenizeSentence } from "../src/text";
import { PENN_TAGS } from "../src/schema";

function tagsFor(sentence: string): [string[], string[]] {
  const surfaces = tokenizeSentence(sentence);
  return [surfaces, tagTokens(surfaces)];
}

describe("tagTokens", () => {
  it("tags a typical contribution sentence", () => {
    const [, tags] = tagsFor(
      "We propose a new web recommendation system based on reinforcement learning."
    );
    expect(tags).toEqual([
      "PRP", "VBP", "DT", "JJ", "NN", "NN", "NN", "VBN", "IN", "NN", "NN", ".",
    ]);
  });

  it("does not read sentence-initial capitalization as a proper noun", () => {
    const [surfaces, tags] = tagsFor("Results show an improvement over previous systems.");
    expect(surfaces[0]).toBe("Results");
    expect(tags[0]).toBe("NNS");
    expect(tags[1]).toBe("VBP");
  });

  it("keeps mid-sentence capitalized words and acronyms as proper nouns", () => {
    const [surfaces, tags] = tagsFor("The DBpedia project uses OWL.");
    expect(tags[surfaces.indexOf("DBpedia")]).toBe("NNP");
    expect(tags[surfaces.indexOf("OWL")]).toBe("NNP");
  });

  it("repairs verb-shaped words to nouns after determiners", () => {
    const [surfaces, tags] = tagsFor("The use of a shared model helps.");
    expect(tags[surfaces.indexOf("use")]).toBe("NN");
  });

  it("repairs an object noun after a verb", () => {
    const [surfaces, tags] = tagsFor("Reasoning engines answer queries over expressive ontologies.");
    expect(tags[surfaces.indexOf("answer")]).toBe("VBP");
    expect(tags[surfaces.indexOf("queries")]).toBe("NNS");
  });

  it("distinguishes participles from past tense by context", () => {
    const [s1, t1] = tagsFor("The approach is evaluated on a benchmark.");
    expect(t1[s1.indexOf("evaluated")]).toBe("VBN");
    const [s2, t2] = tagsFor("We compared our system with baselines.");
    expect(t2[s2.indexOf("compared")]).toBe("VBD");
  });

  it("uses base verb forms after to and modals", () => {
    const [s1, t1] = tagsFor("Lists remain expensive to maintain.");
    expect(t1[s1.indexOf("maintain")]).toBe("VB");
    const [s2, t2] = tagsFor("The method can improve recall.");
    expect(t2[s2.indexOf("improve")]).toBe("VB");
  });

  it("emits only Penn tags, one per token", () => {
    const sentences = [
      "Scholarly knowledge is scattered across millions of publications.",
      "We analyze 1,000 trade-offs at 94.2% precision, e.g. against strong baselines.",
      "Knowledge organization systems, such as thesauri, support semantic search.",
    ];
    for (const sentence of sentences) {
      const [surfaces, tags] = tagsFor(sentence);
      expect(tags.length).toBe(surfaces.length);
      for (const tag of tags) expect(PENN_TAGS.has(tag)).toBe(true);
    }
  });
});
