import { describe, expect, it } from "vitest";
import { lemmatize } from "../src/lemmatizer";

describe("lemmatize", () => {
  it("restores verb base forms", () => {
    expect(lemmatize("proposes", "VBZ")).toBe("propose");
    expect(lemmatize("used", "VBN")).toBe("use");
    expect(lemmatize("applied", "VBN")).toBe("apply");
    expect(lemmatize("training", "VBG")).toBe("train");
    expect(lemmatize("mapped", "VBD")).toBe("map");
    expect(lemmatize("built", "VBN")).toBe("build");
    expect(lemmatize("is", "VBZ")).toBe("be");
    expect(lemmatize("are", "VBP")).toBe("be");
    expect(lemmatize("has", "VBZ")).toBe("have");
  });

  it("singularizes plural nouns", () => {
    expect(lemmatize("systems", "NNS")).toBe("system");
    expect(lemmatize("queries", "NNS")).toBe("query");
    expect(lemmatize("classes", "NNS")).toBe("class");
    expect(lemmatize("bases", "NNS")).toBe("base");
    expect(lemmatize("thesauri", "NNS")).toBe("thesaurus");
    expect(lemmatize("corpora", "NNS")).toBe("corpus");
    expect(lemmatize("data", "NNS")).toBe("data");
    expect(lemmatize("analyses", "NNS")).toBe("analysis");
  });

  it("keeps singular nouns, adjectives, and closed-class words unchanged", () => {
    expect(lemmatize("system", "NN")).toBe("system");
    expect(lemmatize("semantic", "JJ")).toBe("semantic");
    expect(lemmatize("of", "IN")).toBe("of");
  });

  it("reduces comparatives and expands contractions", () => {
    expect(lemmatize("better", "JJR")).toBe("good");
    expect(lemmatize("faster", "JJR")).toBe("fast");
    expect(lemmatize("n't", "RB")).toBe("not");
  });

  it("lowercases and never returns an empty lemma", () => {
    expect(lemmatize("DBpedia", "NNP")).toBe("dbpedia");
    expect(lemmatize("OWL", "NNP")).toBe("owl");
    expect(lemmatize("94.2", "CD")).toBe("94.2");
    expect(lemmatize("%", "SYM")).toBe("%");
    expect(lemmatize(".", ".")).toBe(".");
  });
});
