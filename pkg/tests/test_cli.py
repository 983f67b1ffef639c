"""End-to-end CLI checks through the console entry point (in-process)."""

import json
import sys

import pytest

from molforge.cli import main

TINY = [
    "--set", "model.n_layers=1", "--set", "model.n_heads=2",
    "--set", "model.d_model=8", "--set", "model.d_ffn=16",
    "--set", "model.max_len=24",
    "--set", "train.epochs=40", "--set", "train.batch_size=6",
    "--set", "train.lr=0.005", "--set", "train.warmup_steps=5",
    "--set", "train.eval_every=50", "--set", "train.max_steps=40",
]


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    data = root / "train.csv"
    rows = ["CCO,train", "CCN,train", "CCCC,train", "CCOC,train",
            "CCS,train", "CCCO,train", "CCO,test", "CCN,test"]
    data.write_text("SMILES,SPLIT\n" + "\n".join(rows) + "\n")
    ft = root / "targets.csv"
    ft.write_text("smiles,target\nCCCl,A\nCCCCl,A\nCCF,B\nCCCF,B\n")
    extra = root / "extra.txt"
    extra.write_text("CCCl\nCCCCl\nCCF\nCCCF\n")
    return root


def test_pretrain_then_finetune_then_sample(workdir, capsys):
    ckpt = workdir / "base.ckpt"
    rc = main(["pretrain", "--data", str(workdir / "train.csv"),
               "--out", str(ckpt), "--seed", "3",
               "--extra-vocab", str(workdir / "extra.txt"),
               "--log", str(workdir / "log.jsonl")] + TINY)
    assert rc == 0
    info = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert info["vocab_size"] > 4
    assert ckpt.exists()

    rc = main(["finetune", "--base", str(ckpt),
               "--data", str(workdir / "targets.csv"), "--targets", "A,B",
               "--out", str(workdir / "ft.ckpt"), "--seed", "4",
               "--set", "train.epochs=30", "--set", "train.max_steps=30",
               "--set", "train.batch_size=4", "--set", "train.lr=0.005",
               "--set", "train.warmup_steps=2", "--set", "train.eval_every=50"])
    assert rc == 0
    assert (workdir / "ft.ckpt").exists()

    out1 = workdir / "s1.txt"
    out2 = workdir / "s2.txt"
    for out in (out1, out2):
        rc = main(["sample", "--ckpt", str(workdir / "ft.ckpt"), "--cond", "A",
                   "-n", "8", "--temp", "0", "--seed", "1",
                   "--out", str(out)])
        assert rc == 0
    assert out1.read_bytes() == out2.read_bytes()

    csv_out = workdir / "s3.csv"
    rc = main(["sample", "--ckpt", str(workdir / "ft.ckpt"), "--cond", "none",
               "-n", "5", "--temp", "1.0", "--seed", "2", "--csv",
               "--out", str(csv_out)])
    assert rc == 0
    lines = csv_out.read_text().splitlines()
    assert lines[0] == "smiles,condition,nll,truncated"
    assert len(lines) == 6


def test_sample_threads_partition_equivalence(workdir):
    ckpt = workdir / "base.ckpt"
    a = workdir / "t1.txt"
    b = workdir / "t2.txt"
    for out, threads in ((a, "1"), (b, "3")):
        rc = main(["sample", "--ckpt", str(ckpt), "--cond", "0", "-n", "9",
                   "--temp", "1.0", "--seed", "5", "--threads", threads,
                   "--out", str(out)])
        assert rc == 0
    assert a.read_bytes() == b.read_bytes()


def test_validate_fraction(workdir, capsys):
    f = workdir / "check.txt"
    f.write_text("CCO\nC1CC\nc1ccccc1\n")
    rc = main(["validate", "--in", str(f)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "fraction_valid 0.667" in out
    assert out.count("\tvalid") == 2


def test_eval_and_fp_export(workdir, capsys):
    gen = workdir / "gen.txt"
    gen.write_text("CCO\nCCN\nC1CC\nCCCC\n")
    report_path = workdir / "report.json"
    rc = main(["eval", "--gen", str(gen), "--train", str(workdir / "train.csv"),
               "--test", str(workdir / "train.csv"), "--out", str(report_path),
               "--hist-dir", str(workdir / "hists")])
    assert rc == 0
    report = json.loads(report_path.read_text())
    assert report["n_generated"] == 4
    assert report["valid"] == 0.75
    assert (workdir / "hists" / "hist_mol_weight.csv").exists()

    fps_in = workdir / "fps_in.txt"
    fps_in.write_text("CCO\nCCN\n")
    rc = main(["fp-export", "--in", str(fps_in), "--label", "gen",
               "--out", str(workdir / "fps.csv")])
    assert rc == 0
    rows = (workdir / "fps.csv").read_text().splitlines()
    assert len(rows) == 2 and len(rows[0].split(",")) == 1026


def test_score_command(workdir, capsys):
    f = workdir / "to_score.txt"
    f.write_text("CCO\n")
    rc = main(["score", "--ckpt", str(workdir / "base.ckpt"), "--cond", "none",
               "--in", str(f)])
    assert rc == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("CCO\t")
    assert float(line.split("\t")[1]) > 0


def test_exit_code_data_error(workdir, capsys):
    rc = main(["validate", "--in", str(workdir / "missing.txt")])
    assert rc == 3
    err = json.loads(capsys.readouterr().err)
    assert err["exit_code"] == 3


def test_exit_code_model_error(workdir, capsys):
    bad = workdir / "bad.ckpt"
    bad.write_bytes(b"NOTACKPTxxxxxxxxxxxx")
    rc = main(["sample", "--ckpt", str(bad), "-n", "1",
               "--out", str(workdir / "x.txt")])
    assert rc == 4
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "CorruptHeader"


def test_exit_code_unknown_condition(workdir, capsys):
    rc = main(["sample", "--ckpt", str(workdir / "base.ckpt"), "--cond", "ZZZ",
               "-n", "1", "--out", str(workdir / "x.txt")])
    assert rc == 4
    assert json.loads(capsys.readouterr().err)["error"] == "UnknownCondition"


def test_usage_errors_exit_2(workdir):
    with pytest.raises(SystemExit) as exc:
        main(["sample", "--definitely-not-a-flag"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_help_lists_every_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for sub in ("pretrain", "finetune", "sample", "eval", "validate",
                "fp-export", "score"):
        assert sub in out
