"""Staged runs over the checked-in fixture corpus, resume, and the CLI."""

import filecmp
import json

import numpy as np
import pytest

from conftest import FIXTURES
from scikg.cli import main
from scikg.ingest import load_config
from scikg.model import PipelineError
from scikg.pipeline import STAGES, StageError, export_corpus, run_pipeline

CONFIG = FIXTURES / "config.ini"

STAGE_FILES = {
    "ingest": ("ingest.json",),
    "integrate": ("extractions.jsonl",),
    "refine": ("refined.jsonl",),
    "merge": ("triples.jsonl", "pair_index.jsonl", "merge_decisions.tsv"),
    "collapse": ("collapsed_ef.jsonl", "collapsed_oie.jsonl", "collapsed_pos.jsonl"),
    "map": (
        "relation_clusters.tsv",
        "relation_map.tsv",
        "mapped_ef.jsonl",
        "mapped_oie.jsonl",
        "mapped_pos.jsonl",
    ),
    "select": ("selected.jsonl", "gate_decisions.jsonl"),
    "enhance": ("enhanced.jsonl",),
    "serialize": ("graph.nt", "provenance.jsonl", "histogram.json"),
}

EXPECTED_SUMMARY = {
    "entities": 23,
    "triples": 39,
    "triples_by_source": {"CONS": 2, "EF": 13, "INFERRED": 10, "OIE": 13, "POS": 13},
    "support_histogram": {
        "EF": {1: 8, 2: 2, 3: 2, 4: 1},
        "OIE": {1: 6, 2: 2, 3: 4, 4: 1},
        "POS+CONS": {1: 5, 2: 4, 3: 4, 4: 1, 12: 1},
    },
}


def fixture_config(out_dir):
    return load_config(CONFIG, overrides={"output_dir": str(out_dir)})


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text().splitlines() if line.strip()]


@pytest.fixture(scope="module")
def full_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("full")
    summary = run_pipeline(fixture_config(out))
    return out, summary


class TestFullRun:
    def test_summary(self, full_run):
        _, summary = full_run
        assert summary == EXPECTED_SUMMARY

    def test_every_checkpoint_written(self, full_run):
        out, _ = full_run
        for files in STAGE_FILES.values():
            for name in files:
                assert (out / name).is_file(), name
        assert (out / "classifier.npz").is_file()

    def test_ingest_manifest(self, full_run):
        out, _ = full_run
        manifest = json.loads((out / "ingest.json").read_text())
        assert manifest == {
            "background_labels": [26, 5, 5],
            "documents": 50,
            "embedding_dimension": 32,
            "embeddings": 53,
            "sentences": 100,
            "synsets": 14,
            "topics": 17,
        }

    def test_graph_shape_and_known_lines(self, full_run):
        out, _ = full_run
        lines = (out / "graph.nt").read_text().splitlines()
        assert len(lines) == 39
        assert lines == sorted(lines)
        assert lines[0] == (
            "<http://example.org/skg/dbpedia> <http://example.org/skg/rel/be> "
            "<http://example.org/skg/knowledge-graph> ."
        )
        assert (
            "<http://example.org/skg/support-vector-machine> "
            "<http://www.w3.org/2004/02/skos/core#broader> "
            "<http://example.org/skg/machine-learning> ." in lines
        )
        assert (
            "<http://example.org/skg/knowledge-graph> "
            "<http://example.org/skg/rel/support> "
            "<http://example.org/skg/web-search> ." in lines
        )

    def test_high_support_pair_provenance(self, full_run):
        out, _ = full_run
        rows = read_jsonl(out / "provenance.jsonl")
        row = next(r for r in rows if r["s"] == "knowledge graph" and r["o"] == "web search")
        assert row == {
            "s": "knowledge graph",
            "p": "support",
            "o": "web search",
            "support": 12,
            "sources": ["POS"],
            "doc_ids": ["d001", "d002", "d003", "d004", "d005", "d006",
                        "d007", "d008", "d009", "d012", "d013", "d014"],
        }

    def test_merge_decisions(self, full_run):
        out, _ = full_run
        assert (out / "merge_decisions.tsv").read_text() == (
            "description logic reasoners\tdescription logic reasoner\tLEMMA\n"
            "graph embeddings\tgraph embedding\tLEMMA\n"
            "knowledge graphs\tknowledge graph\tLEMMA\n"
            "neural networks\tneural network\tLEMMA\n"
            "owl\tweb ontology language\tONTOLOGY_ALT\n"
            "random forests\trandom forest\tLEMMA\n"
            "rdf triples\trdf triple\tLEMMA\n"
            "sparql queries\tsparql query\tLEMMA\n"
            "support vector machines\tsupport vector machine\tLEMMA\n"
        )

    def test_relation_clusters(self, full_run):
        out, _ = full_run
        assert (out / "relation_clusters.tsv").read_text() == (
            "build\tproduce\n"
            "construct\tproduce\n"
            "employ\tuse\n"
            "improve\tsupport\n"
            "produce\tproduce\n"
            "provide\tsupport\n"
            "support\tsupport\n"
            "use\tuse\n"
            "utilize\tuse\n"
        )

    def test_relation_map(self, full_run):
        out, _ = full_run
        rows = [
            line.split("\t")
            for line in (out / "relation_map.tsv").read_text().splitlines()
        ]
        by_source = {source: (target, rule) for source, target, rule in rows}
        assert by_source["used-for"] == ("uses", "EF_STATIC")
        assert by_source["hyponym-of"] == ("skos:broader", "EF_STATIC")
        assert by_source["part-of"] == ("includes", "EF_STATIC")
        assert by_source["utilize"] == ("use", "CLUSTER_CENTROID")
        assert by_source["improve"] == ("support", "CLUSTER_CENTROID")
        assert by_source["construct"] == ("produce", "CLUSTER_CENTROID")
        assert by_source["uses"] == ("uses", "SELF")
        assert by_source["skos:broader"] == ("skos:broader", "SELF")
        # every target resolves to itself, so applying the map twice is a no-op
        for target, _ in by_source.values():
            assert by_source[target][0] == target

    def test_gate_decisions(self, full_run):
        out, _ = full_run
        decisions = {(d["s"], d["o"]): d for d in read_jsonl(out / "gate_decisions.jsonl")}
        assert len(decisions) == 6

        admitted = decisions[("support vector machine", "query expansion")]
        assert admitted["admitted"] is True
        assert admitted["r"] == admitted["predicted"] == "use"
        assert admitted["similarity"] is None

        no_embedding = decisions[("graph embedding", "rdf triple")]
        assert no_embedding["admitted"] is False
        assert no_embedding["r"] == "synthesize"
        assert no_embedding["similarity"] == 0.0

        unembeddable = decisions[("zeitgeist widget", "sparql query")]
        assert unembeddable["admitted"] is False
        assert unembeddable["predicted"] is None
        assert unembeddable["similarity"] is None

        near_miss = decisions[("wordnet", "entity linking")]
        assert near_miss["admitted"] is False
        assert near_miss["similarity"] == pytest.approx(1.0 / 3.0)

    def test_label_hygiene(self, full_run):
        out, _ = full_run
        entities = set()
        for row in read_jsonl(out / "provenance.jsonl"):
            entities.update((row["s"], row["o"]))
        assert "machine learning and data mining" not in entities
        assert {"machine learning", "data mining"} <= entities
        assert "owl" not in entities
        assert "web ontology language" in entities
        for gone in ("approach", "system", "et al", "knowledge graphs"):
            assert gone not in entities

    def test_split_triples_reach_the_graph(self, full_run):
        out, _ = full_run
        rows = {(r["s"], r["p"], r["o"]): r for r in read_jsonl(out / "provenance.jsonl")}
        ml = rows[("neural network", "uses", "machine learning")]
        dm = rows[("neural network", "uses", "data mining")]
        assert ml["doc_ids"] == dm["doc_ids"] == ["d039"]

    def test_histogram_file_matches_summary(self, full_run):
        out, summary = full_run
        stored = json.loads((out / "histogram.json").read_text())
        rebuilt = {
            group: {int(k): v for k, v in table.items()} for group, table in stored.items()
        }
        assert rebuilt == summary["support_histogram"]


class TestStageEquivalence:
    @pytest.mark.parametrize("stage", STAGES)
    def test_single_stage_reproduces_checkpoints(self, stage, full_run, tmp_path):
        out, summary = full_run
        redo = tmp_path / "redo"
        result = run_pipeline(fixture_config(redo), stage=stage, from_checkpoint=str(out))
        for name in STAGE_FILES[stage]:
            assert filecmp.cmp(redo / name, out / name, shallow=False), name
        if stage == "select":
            a, b = np.load(redo / "classifier.npz"), np.load(out / "classifier.npz")
            assert sorted(a.files) == sorted(b.files)
            for key in a.files:
                np.testing.assert_array_equal(a[key], b[key])
        if stage == "serialize":
            assert result == summary
        else:
            assert result == {}


class TestResume:
    def test_stage_at_a_time_matches_full_run(self, full_run, tmp_path):
        out, summary = full_run
        step = tmp_path / "step"
        config = fixture_config(step)
        for stage in STAGES[:-1]:
            assert run_pipeline(config, stage=stage) == {}
        assert run_pipeline(config, stage="serialize") == summary
        for name in ("graph.nt", "provenance.jsonl", "histogram.json"):
            assert filecmp.cmp(step / name, out / name, shallow=False), name


class TestErrors:
    def test_missing_checkpoint(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        config = fixture_config(tmp_path / "out")
        with pytest.raises(StageError, match="missing checkpoint") as info:
            run_pipeline(config, stage="refine", from_checkpoint=str(empty))
        assert info.value.stage == "refine"

    def test_unknown_stage(self, tmp_path):
        config = fixture_config(tmp_path / "out")
        with pytest.raises(PipelineError, match="unknown stage"):
            run_pipeline(config, stage="polish")


class TestExportCorpus:
    def test_multiword_entities_joined(self, full_run):
        out, _ = full_run
        body = export_corpus(fixture_config(out)).decode("utf-8")
        lines = body.splitlines()
        assert len(lines) == 100
        assert lines[0] == "Knowledge_graphs improve web_search ."
        assert lines[18] == "The Web_Ontology_Language ( OWL ) is a standard ."
        assert lines[19] == "OWL supports Description_logic_reasoners ."
        assert lines[66] == "Support_vector_machines are a kind of machine_learning ."
        assert lines[87] == "DBpedia is a knowledge_graph ."
        assert body.endswith("\n")


def cli_config(tmp_path, out_dir):
    """Rewrite the fixture config with absolute paths for CLI invocations."""
    lines = []
    for raw in CONFIG.read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = (part.strip() for part in line.partition("="))
        if key.endswith("_path"):
            value = str(FIXTURES / value)
        elif key == "output_dir":
            value = str(out_dir)
        lines.append(f"{key} = {value}")
    path = tmp_path / "cli-config.ini"
    path.write_text("\n".join(lines) + "\n")
    return path


class TestCli:
    def test_run_prints_summary(self, full_run, tmp_path, capsys):
        out_dir = tmp_path / "cli-out"
        config = cli_config(tmp_path, out_dir)
        assert main(["run", "--config", str(config)]) == 0
        printed = json.loads(capsys.readouterr().out)
        # json round-trips histogram keys as strings
        _, summary = full_run
        assert printed["entities"] == summary["entities"]
        assert printed["triples_by_source"] == summary["triples_by_source"]
        assert (out_dir / "graph.nt").read_bytes() == (
            full_run[0] / "graph.nt"
        ).read_bytes()

    def test_run_single_stage_prints_nothing(self, tmp_path, capsys):
        config = cli_config(tmp_path, tmp_path / "out")
        assert main(["run", "--config", str(config), "--stage", "ingest"]) == 0
        assert capsys.readouterr().out == ""
        assert (tmp_path / "out" / "ingest.json").is_file()

    def test_evaluate_row(self, full_run, capsys):
        out, _ = full_run
        code = main(
            [
                "evaluate",
                "--graph", str(out / "provenance.jsonl"),
                "--gold", str(FIXTURES / "gold.tsv"),
            ]
        )
        assert code == 0
        assert capsys.readouterr().out == "all\t0.7500\t0.8182\t0.7826\t18\t6\t4\n"

    def test_evaluate_source_slice(self, full_run, capsys):
        out, _ = full_run
        code = main(
            [
                "evaluate",
                "--graph", str(out / "provenance.jsonl"),
                "--gold", str(FIXTURES / "gold.tsv"),
                "--sources", "POS,CONS",
                "--method", "verbs",
            ]
        )
        assert code == 0
        row = capsys.readouterr().out.strip().split("\t")
        assert row[0] == "verbs"

        # independent tally: slice the provenance records, then set arithmetic
        gold_rows = [
            line.split("\t")
            for line in (FIXTURES / "gold.tsv").read_text().splitlines()
        ]
        gold_true = {(s, p, o) for s, p, o, v in gold_rows if v == "true"}
        gold_false = {(s, p, o) for s, p, o, v in gold_rows if v == "false"}
        sliced = {
            (r["s"], r["p"], r["o"])
            for r in read_jsonl(out / "provenance.jsonl")
            if set(r["sources"]) & {"POS", "CONS"}
        }
        tp, fp = len(sliced & gold_true), len(sliced & gold_false)
        fn = len(gold_true - sliced)
        assert [int(x) for x in row[4:]] == [tp, fp, fn]
        precision = tp / (tp + fp)
        recall = tp / (tp + fn)
        assert float(row[1]) == pytest.approx(precision, abs=5e-5)
        assert float(row[2]) == pytest.approx(recall, abs=5e-5)
        assert float(row[3]) == pytest.approx(
            2 * precision * recall / (precision + recall), abs=5e-5
        )

    def test_export_clusters(self, full_run, tmp_path, capsys):
        out, _ = full_run
        config = cli_config(tmp_path, out)
        target = tmp_path / "clusters.tsv"
        assert main(["export-clusters", "--config", str(config), "--output", str(target)]) == 0
        assert target.read_bytes() == (out / "relation_clusters.tsv").read_bytes()
        assert main(["export-clusters", "--config", str(config)]) == 0
        assert capsys.readouterr().out == (out / "relation_clusters.tsv").read_text()

    def test_export_corpus_file(self, full_run, tmp_path):
        out, _ = full_run
        config = cli_config(tmp_path, out)
        target = tmp_path / "corpus.txt"
        assert main(["export-corpus", "--config", str(config), "--output", str(target)]) == 0
        assert target.read_bytes() == export_corpus(fixture_config(out))

    def test_evaluate_missing_graph_fails(self, tmp_path, capsys):
        code = main(
            [
                "evaluate",
                "--graph", str(tmp_path / "absent.jsonl"),
                "--gold", str(FIXTURES / "gold.tsv"),
            ]
        )
        assert code == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_export_clusters_without_checkpoint_fails(self, tmp_path, capsys):
        config = cli_config(tmp_path, tmp_path / "never-ran")
        assert main(["export-clusters", "--config", str(config)]) == 1
        assert "no cluster checkpoint" in capsys.readouterr().err

    def test_unknown_stage_rejected_by_parser(self, tmp_path):
        config = cli_config(tmp_path, tmp_path / "out")
        with pytest.raises(SystemExit):
            main(["run", "--config", str(config), "--stage", "polish"])
