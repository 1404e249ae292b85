"""Command-line interface behavior."""

import csv

import pytest

from flatspeech.cli import main


def test_requires_subcommand(capsys):
    with pytest.raises(SystemExit):
        main([])


def test_gen_corpus_and_determinism(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    assert main(["gen-corpus", "--out", str(a), "--turns", "60", "--seed", "9"]) == 0
    assert main(["gen-corpus", "--out", str(b), "--turns", "60", "--seed", "9"]) == 0
    assert a.read_bytes() == b.read_bytes()
    out = capsys.readouterr().out
    assert "60 turns" in out


def test_gen_corpus_seed_changes_output(tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    main(["gen-corpus", "--out", str(a), "--turns", "60", "--seed", "1"])
    main(["gen-corpus", "--out", str(b), "--turns", "60", "--seed", "2"])
    assert a.read_bytes() != b.read_bytes()


def test_tag_prints_tokens_and_phrases(models_dir, capsys):
    code = main(["tag", "--models", str(models_dir), "we", "could", "meet"])
    assert code == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0].startswith("idx word")
    assert len([l for l in lines if l.startswith("phrase ")]) >= 1
    assert "meet" in out


def test_decode_lattice(models_dir, tmp_path, capsys):
    lattice = tmp_path / "chain.lat"
    lattice.write_text("0 9 we 0.9\n10 19 could 0.8\n20 29 meet 0.9\n")
    code = main(["decode", "--models", str(models_dir), "--lattice", str(lattice)])
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("1 ")
    assert "we could meet" in out


def test_decode_json_output(models_dir, tmp_path, capsys):
    import json

    lattice = tmp_path / "chain.lat"
    lattice.write_text("0 9 we 0.9\n10 19 could 0.8\n")
    assert main(["decode", "--models", str(models_dir), "--lattice", str(lattice), "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["rank"] == 1
    assert rows[0]["words"] == "we could"


def test_malformed_lattice_fails_with_line_number(models_dir, tmp_path, capsys):
    lattice = tmp_path / "bad.lat"
    lattice.write_text("0 9 we 0.9\n10 19 broken\n")
    code = main(["decode", "--models", str(models_dir), "--lattice", str(lattice)])
    assert code != 0
    err = capsys.readouterr().err
    assert "bad.lat:2" in err


def test_eval_writes_csv(models_dir, corpus_file, tmp_path, capsys):
    out = tmp_path / "eval.csv"
    code = main(
        ["eval", "--models", str(models_dir), "--corpus", str(corpus_file), "--out", str(out)]
    )
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["measure", "accuracy"]
    measures = {r[0] for r in rows[1:]}
    assert {"bas-syn-dis", "word-error", "overall-syn", "overall-sem"} <= measures
    for row in rows[1:]:
        assert 0.0 <= float(row[1]) <= 1.0


def test_ablate_writes_csv(models_dir, corpus_file, tmp_path):
    out = tmp_path / "ablate.csv"
    code = main(
        [
            "ablate",
            "--models",
            str(models_dir),
            "--corpus",
            str(corpus_file),
            "--fractions",
            "0.05",
            "--seeds",
            "0,1",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["ablated_fraction", "syn_accuracy", "sem_accuracy"]
    assert [r[0] for r in rows[1:]] == ["0.000000", "0.050000"]


def test_ngram_compare_writes_curves(tmp_path):
    out = tmp_path / "curves.csv"
    assert main(["ngram-compare", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == [
        "exclusion_level",
        "ngram-1",
        "ngram-2",
        "ngram-3",
        "ngram-4",
        "ngram-5",
        "optimal",
        "recurrent",
    ]
    assert len(rows) == 1 + 20  # one row per exclusion level


def test_lattice_study_writes_csv(models_dir, corpus_file, tmp_path):
    out = tmp_path / "study.csv"
    code = main(
        [
            "lattice-study",
            "--models",
            str(models_dir),
            "--corpus",
            str(corpus_file),
            "--lattices",
            "10",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    with open(out, newline="") as fh:
        rows = {r[0]: float(r[1]) for r in list(csv.reader(fh))[1:]}
    assert set(rows) == {"acoustic", "acoustic+syn", "acoustic+syn+sem"}
