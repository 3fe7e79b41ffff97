import io
import json

import pytest

from solosent import concordance
from solosent.cli import main
from solosent.conllu import parse_conllu

CLEAN_IDS = ["t08", "t09", "t10", "t11", "t12"]


@pytest.fixture
def corpus_path(tmp_path, fixture_text):
    path = tmp_path / "sentences.conllu"
    path.write_text(fixture_text, encoding="utf-8")
    return str(path)


@pytest.fixture
def gold_path(tmp_path, fixture_gold_text):
    path = tmp_path / "sentences.gold"
    path.write_text(fixture_gold_text, encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def jsonl_records(out):
    return [json.loads(line) for line in out.splitlines()]


class TestAssess:
    def test_jsonl_schema(self, capsys, corpus_path):
        code, out, _ = run_cli(capsys, "--mode", "assess", "--input", corpus_path)
        assert code == 0
        records = jsonl_records(out)
        assert [r["id"] for r in records] == [f"t{i:02d}" for i in range(1, 13)]
        for record in records:
            assert record["schema_version"] == 1
            assert isinstance(record["score"], float)
            assert isinstance(record["context_independent"], bool)
            assert record["context_independent"] == (record["score"] == 0.0)
            for d in record["detections"]:
                assert set(d) == {"theme", "tokens", "weight"}

    def test_known_scores(self, capsys, corpus_path):
        _, out, _ = run_cli(capsys, "--mode", "assess", "--input", corpus_path)
        by_id = {r["id"]: r for r in jsonl_records(out)}
        assert by_id["t01"]["score"] == 1.0
        assert by_id["t03"]["score"] == 2.0
        assert by_id["t09"]["score"] == 0.0
        assert by_id["t09"]["context_independent"] is True
        themes = {d["theme"] for d in by_id["t03"]["detections"]}
        assert themes == {"PNAnaphora", "StructConn"}

    def test_explain_adds_rationales(self, capsys, corpus_path):
        _, out, _ = run_cli(
            capsys, "--mode", "assess", "--input", corpus_path, "--explain"
        )
        records = jsonl_records(out)
        detections = [d for r in records for d in r["detections"]]
        assert detections
        assert all("rationale" in d and d["rationale"] for d in detections)

    def test_tsv_format(self, capsys, corpus_path):
        _, out, _ = run_cli(
            capsys, "--mode", "assess", "--input", corpus_path, "--format", "tsv"
        )
        lines = out.splitlines()
        assert lines[0] == "id\tscore\tcontext_independent\tthemes"
        assert len(lines) == 13
        rows = {line.split("\t")[0]: line.split("\t") for line in lines[1:]}
        assert rows["t09"][1:] == ["0.0", "true", "-"]
        assert rows["t03"][3] == "PNAnaphora,StructConn"

    def test_output_file(self, capsys, corpus_path, tmp_path):
        target = tmp_path / "out.jsonl"
        code, out, _ = run_cli(
            capsys,
            "--mode", "assess", "--input", corpus_path, "--output", str(target),
        )
        assert code == 0
        assert out == ""
        assert len(target.read_text(encoding="utf-8").splitlines()) == 12

    def test_stdin_input(self, capsys, monkeypatch, fixture_text):
        monkeypatch.setattr("sys.stdin", io.StringIO(fixture_text))
        code, out, _ = run_cli(capsys, "--mode", "assess", "--input", "-")
        assert code == 0
        assert len(jsonl_records(out)) == 12

    def test_jobs_do_not_change_output(self, capsys, corpus_path):
        _, serial, _ = run_cli(
            capsys, "--mode", "assess", "--input", corpus_path, "--jobs", "1"
        )
        _, pooled, _ = run_cli(
            capsys, "--mode", "assess", "--input", corpus_path, "--jobs", "4"
        )
        assert serial == pooled

    def test_ud_profile_flag(self, capsys, tmp_path, ud_fixture_text):
        path = tmp_path / "ud.conllu"
        path.write_text(ud_fixture_text, encoding="utf-8")
        code, out, _ = run_cli(
            capsys,
            "--mode", "assess", "--input", str(path), "--profile", "ud",
        )
        assert code == 0
        by_id = {r["id"]: r for r in jsonl_records(out)}
        assert by_id["u09"]["context_independent"] is True
        assert by_id["u02"]["score"] == 1.0


class TestFilterAndRank:
    def test_filter_keeps_clean(self, capsys, corpus_path):
        _, out, _ = run_cli(capsys, "--mode", "filter", "--input", corpus_path)
        records = jsonl_records(out)
        assert [r["id"] for r in records] == CLEAN_IDS
        assert all(r["context_independent"] for r in records)

    def test_rank_order(self, capsys, corpus_path):
        _, out, _ = run_cli(capsys, "--mode", "rank", "--input", corpus_path)
        ids = [r["id"] for r in jsonl_records(out)]
        # clean first in input order, then single hits, then double hits
        assert ids == CLEAN_IDS + ["t01", "t02", "t04", "t05", "t06", "t03", "t07"]
        scores = [r["score"] for r in jsonl_records(out)]
        assert scores == sorted(scores)


class TestEval:
    def test_json_report(self, capsys, corpus_path, gold_path):
        code, out, _ = run_cli(
            capsys,
            "--mode", "eval", "--input", corpus_path, "--gold", gold_path,
        )
        assert code == 0
        report = json.loads(out)
        assert report["schema_version"] == 1
        assert report["sentences"] == 12
        pn = report["per_theme"]["PNAnaphora"]
        assert (pn["tp"], pn["fp"], pn["fn"]) == (2, 0, 0)
        assert pn["precision"] == 1.0
        assert report["macro"]["precision"] == 1.0
        assert report["macro"]["themes_with_precision"] == 7
        assert report["micro"]["f1"] == 1.0
        assert report["multi_theme_rate"] == pytest.approx(2 / 12)
        assert report["theme_rates"]["PNAnaphora"] == pytest.approx(200 / 12)
        assert report["any_theme_rate"] == pytest.approx(700 / 12)

    def test_table_format(self, capsys, corpus_path, gold_path):
        _, out, _ = run_cli(
            capsys,
            "--mode", "eval", "--input", corpus_path, "--gold", gold_path,
            "--format", "tsv",
        )
        assert "macro avg" in out
        assert "micro avg" in out
        assert "PNAnaphora" in out

    def test_gold_required(self, capsys, corpus_path):
        code, _, err = run_cli(capsys, "--mode", "eval", "--input", corpus_path)
        assert code == 2
        assert "--gold" in err

    def test_missing_gold_file(self, capsys, corpus_path):
        code, _, err = run_cli(
            capsys,
            "--mode", "eval", "--input", corpus_path, "--gold", "/nope/gold.tsv",
        )
        assert code == 1
        assert "error" in err


class TestConfigFlag:
    def test_disable_theme(self, capsys, corpus_path, tmp_path):
        conf = tmp_path / "solosent.conf"
        conf.write_text("enable.IncompSent = false\n", encoding="utf-8")
        _, out, _ = run_cli(
            capsys,
            "--mode", "assess", "--input", corpus_path, "--config", str(conf),
        )
        by_id = {r["id"]: r for r in jsonl_records(out)}
        assert by_id["t01"]["context_independent"] is True
        assert by_id["t02"]["score"] == 1.0

    def test_weight_override(self, capsys, corpus_path, tmp_path):
        conf = tmp_path / "solosent.conf"
        conf.write_text("weight.PNAnaphora = 2\n", encoding="utf-8")
        _, out, _ = run_cli(
            capsys,
            "--mode", "assess", "--input", corpus_path, "--config", str(conf),
        )
        by_id = {r["id"]: r for r in jsonl_records(out)}
        assert by_id["t03"]["score"] == 3.0

    def test_profile_from_config(self, capsys, tmp_path, ud_fixture_text):
        conf = tmp_path / "solosent.conf"
        conf.write_text("profile = ud\n", encoding="utf-8")
        path = tmp_path / "ud.conllu"
        path.write_text(ud_fixture_text, encoding="utf-8")
        code, out, _ = run_cli(
            capsys,
            "--mode", "assess", "--input", str(path), "--config", str(conf),
        )
        assert code == 0
        by_id = {r["id"]: r for r in jsonl_records(out)}
        assert by_id["u09"]["context_independent"] is True

    def test_lexicon_directory_flag(self, capsys, corpus_path, tmp_path):
        empty = tmp_path / "lexicons"
        empty.mkdir()
        _, out, err = run_cli(
            capsys,
            "--mode", "assess", "--input", corpus_path,
            "--lexicons", str(empty),
        )
        assert "missing, using empty set" in err
        by_id = {r["id"]: r for r in jsonl_records(out)}
        # without the pronoun list t03 keeps only its connective hit
        assert by_id["t03"]["score"] == 1.0
        themes = {d["theme"] for d in by_id["t03"]["detections"]}
        assert themes == {"StructConn"}

    def test_unknown_key(self, capsys, corpus_path, tmp_path):
        conf = tmp_path / "solosent.conf"
        conf.write_text("wieght.PNAnaphora = 2\n", encoding="utf-8")
        code, _, err = run_cli(
            capsys,
            "--mode", "assess", "--input", corpus_path, "--config", str(conf),
        )
        assert code == 2
        assert "unknown config key" in err

    def test_reserved_theme(self, capsys, corpus_path, tmp_path):
        conf = tmp_path / "solosent.conf"
        conf.write_text("enable.CDPC = true\n", encoding="utf-8")
        code, _, err = run_cli(
            capsys,
            "--mode", "assess", "--input", corpus_path, "--config", str(conf),
        )
        assert code == 2
        assert "CDPC" in err


class TestErrorPaths:
    def test_missing_input_flag(self, capsys):
        code, _, err = run_cli(capsys, "--mode", "assess")
        assert code == 1
        assert "--input" in err

    def test_input_file_not_found(self, capsys):
        code, _, err = run_cli(
            capsys, "--mode", "assess", "--input", "/nope/x.conllu"
        )
        assert code == 1
        assert "not found" in err

    def test_unparsable_input(self, capsys, tmp_path):
        path = tmp_path / "bad.conllu"
        path.write_text("1\tonly-two\tcolumns\n", encoding="utf-8")
        code, _, err = run_cli(capsys, "--mode", "assess", "--input", str(path))
        assert code == 1
        assert "error" in err

    def test_bad_profile(self, capsys, corpus_path):
        code, _, err = run_cli(
            capsys,
            "--mode", "assess", "--input", corpus_path, "--profile", "nope",
        )
        assert code == 2
        assert "profile" in err

    def test_jobs_must_be_positive(self, capsys, corpus_path):
        code, _, err = run_cli(
            capsys,
            "--mode", "assess", "--input", corpus_path, "--jobs", "0",
        )
        assert code == 2
        assert "--jobs" in err

    def test_bad_mode_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--mode", "bogus"])
        assert excinfo.value.code == 2


FETCH_PAGE = {
    "kwic": [
        {
            "corpus": "SUC3",
            "match": {"position": "1041"},
            "tokens": [
                {
                    "word": "Det", "lemma": "det", "pos": "PN",
                    "msd": "NEU|SIN|DEF", "ref": "1", "dephead": "2",
                    "deprel": "SS",
                },
                {
                    "word": "regnar", "lemma": "regna", "pos": "VB",
                    "msd": "PRS|AKT", "ref": "2", "dephead": "0",
                    "deprel": "ROOT",
                },
                {
                    "word": ".", "lemma": ".", "pos": "MAD", "msd": "",
                    "ref": "3", "dephead": "2", "deprel": "IP",
                },
            ],
        },
        {"corpus": "SUC3", "tokens": [{"word": "trunc"}]},
    ],
    "hits": 2,
}


class FakeTransport:
    def __init__(self, payload):
        self.payload = payload
        self.urls = []

    def get(self, url):
        self.urls.append(url)
        return concordance.TransportReply(
            status=200, body=json.dumps(self.payload).encode("utf-8")
        )


class TestFetch:
    def write_config(self, tmp_path):
        conf = tmp_path / "korp.conf"
        conf.write_text(
            "fetch.endpoint = https://example.invalid/korp\n"
            'fetch.cqp = [pos="VB"]\n'
            "fetch.corpora = SUC3\n"
            "fetch.page_size = 5\n",
            encoding="utf-8",
        )
        return str(conf)

    def test_fetch_writes_conllu(self, capsys, monkeypatch, tmp_path):
        transport = FakeTransport(FETCH_PAGE)
        monkeypatch.setattr(concordance, "UrllibTransport", lambda: transport)
        target = tmp_path / "fetched.conllu"
        code, _, err = run_cli(
            capsys,
            "--mode", "fetch",
            "--config", self.write_config(tmp_path),
            "--output", str(target),
        )
        assert code == 0
        assert "skipped 1 hit" in err
        sentences = parse_conllu(target.read_text(encoding="utf-8"))
        assert [s.id for s in sentences] == ["SUC3:1041"]
        assert sentences[0].text == "Det regnar ."
        assert len(transport.urls) == 1
        assert "start=0" in transport.urls[0] and "end=4" in transport.urls[0]

    def test_fetched_output_assessable(self, capsys, monkeypatch, tmp_path):
        transport = FakeTransport(FETCH_PAGE)
        monkeypatch.setattr(concordance, "UrllibTransport", lambda: transport)
        target = tmp_path / "fetched.conllu"
        run_cli(
            capsys,
            "--mode", "fetch",
            "--config", self.write_config(tmp_path),
            "--output", str(target),
        )
        code, out, _ = run_cli(capsys, "--mode", "assess", "--input", str(target))
        assert code == 0
        (record,) = jsonl_records(out)
        assert record["id"] == "SUC3:1041"
        assert record["context_independent"] is True

    def test_fetch_needs_endpoint(self, capsys, tmp_path):
        conf = tmp_path / "korp.conf"
        conf.write_text('fetch.cqp = [pos="VB"]\n', encoding="utf-8")
        code, _, err = run_cli(
            capsys, "--mode", "fetch", "--config", str(conf)
        )
        assert code == 2
        assert "endpoint" in err

    def test_env_endpoint_override(self, capsys, monkeypatch, tmp_path):
        transport = FakeTransport(FETCH_PAGE)
        monkeypatch.setattr(concordance, "UrllibTransport", lambda: transport)
        monkeypatch.setenv("SOLOSENT_ENDPOINT", "https://elsewhere.invalid/api")
        target = tmp_path / "fetched.conllu"
        code, _, _ = run_cli(
            capsys,
            "--mode", "fetch",
            "--config", self.write_config(tmp_path),
            "--output", str(target),
        )
        assert code == 0
        assert transport.urls[0].startswith("https://elsewhere.invalid/api?")
