import * as fs from "fs";
import * as path from "path";
import { describe, expect, it } from "vitest";
import { exportTaxonomy, exportTopicOntology } from "../src/ontologyExport";

const FIXTURES = path.join(__dirname, "fixtures");
const CSV = fs.readFileSync(path.join(FIXTURES, "cso_subset.csv"), "utf8");
const SYNSETS = fs.readFileSync(path.join(FIXTURES, "synsets.json"), "utf8");

describe("exportTopicOntology", () => {
  it("emits the seed's sub-hierarchy as child-superTopicOf-parent rows", () => {
    const rows = exportTopicOntology(CSV, "semantic web").trimEnd().split("\n");
    expect(rows).toContain("ontology matching\tsuperTopicOf\tsemantic web");
    expect(rows).toContain("linked data\tsuperTopicOf\tsemantic web");
    expect(rows).toContain("ontology alignment\tsuperTopicOf\tontology matching");
    expect(rows).toContain("rdf\tsuperTopicOf\tlinked data");
  });

  it("keeps synonym pairs touching the selection as altLabel rows", () => {
    const rows = exportTopicOntology(CSV, "semantic web").trimEnd().split("\n");
    expect(rows).toContain("semantic web\taltLabel\tsemantic web technologies");
    expect(rows).toContain("ontology matching\taltLabel\tontology mapping");
  });

  it("excludes topics outside the seed's sub-hierarchy", () => {
    const out = exportTopicOntology(CSV, "semantic web");
    expect(out).not.toMatch(/machine learning/);
    expect(out).not.toMatch(/world wide web/);
    expect(out).not.toMatch(/deep learning/);
  });

  it("emits sorted, deduplicated rows with a trailing newline", () => {
    const out = exportTopicOntology(CSV, "semantic web");
    expect(out.endsWith("\n")).toBe(true);
    const rows = out.trimEnd().split("\n");
    expect([...rows].sort()).toEqual(rows);
    expect(new Set(rows).size).toBe(rows.length);
  });

  it("reads unbracketed rows too", () => {
    const rows = exportTopicOntology(CSV, "machine learning").trimEnd().split("\n");
    expect(rows).toContain("supervised learning\tsuperTopicOf\tmachine learning");
    expect(rows).toContain("deep learning\tsuperTopicOf\tmachine learning");
  });

  it("yields an empty file for an unknown seed", () => {
    expect(exportTopicOntology(CSV, "quantum chemistry")).toBe("");
  });
});

describe("exportTaxonomy", () => {
  it("emits hypernym rows for every edge and sense rows for every lemma", () => {
    const rows = exportTaxonomy(SYNSETS).trimEnd().split("\n");
    expect(rows).toContain("use.v.01\thypernym\tact.v.01");
    expect(rows).toContain("improve.v.01\thypernym\tchange.v.01");
    expect(rows).toContain("compare.v.01\thypernym\tjudge.v.01");
    expect(rows).toContain("compare.v.01\thypernym\tchange.v.01");
    expect(rows).toContain("use\tsense\tuse.v.01");
    expect(rows).toContain("utilize\tsense\tuse.v.01");
    expect(rows).toContain("act\tsense\tact.v.01");
  });

  it("emits sorted unique rows", () => {
    const rows = exportTaxonomy(SYNSETS).trimEnd().split("\n");
    expect([...rows].sort()).toEqual(rows);
    expect(new Set(rows).size).toBe(rows.length);
  });
});
