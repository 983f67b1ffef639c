"""Command-line entry point tying the workflow together.

Exit codes: 0 ok, 2 usage, 3 data error, 4 model/checkpoint error,
5 internal error. Failures print one machine-readable JSON object to
stderr: {"error": <class>, "message": <text>, "exit_code": <n>}.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import chem, metrics
from .errors import (CheckpointError, ConfigMismatch, DataError, LengthOverflow,
                     MolforgeError, ShapeMismatch, SmilesError, UnknownCondition)
from .model import ModelConfig
from .sample import generate, score
from .store import (Checkpoint, Corpus, load_checkpoint, load_finetune,
                    load_pretrain, save_checkpoint)
from .tokenizer import build_vocab
from .train import TrainConfig, finetune, pretrain

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_MODEL, EXIT_INTERNAL = 0, 2, 3, 4, 5


def _fail(exc: Exception, code: int) -> int:
    sys.stderr.write(json.dumps({
        "error": type(exc).__name__,
        "message": str(exc),
        "exit_code": code,
    }) + "\n")
    return code


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _apply_overrides(config: dict, overrides: list[str]) -> dict:
    """--set section.key=value with JSON-style values."""
    for item in overrides or []:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigMismatch(f"--set wants section.key=value, got {item!r}")
        dotted, raw = item.split("=", 1)
        section, key = dotted.split(".", 1)
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        config.setdefault(section, {})[key] = value
    return config


def _effective_configs(args, needed_conditions: int = 1,
                       vocab_size: int = 0) -> tuple[ModelConfig, TrainConfig, dict]:
    raw = _load_config_file(getattr(args, "config", None))
    raw = _apply_overrides(raw, getattr(args, "set", None))
    model_kw = dict(raw.get("model", {}))
    train_kw = dict(raw.get("train", {}))
    model_kw.setdefault("vocab_size", vocab_size)
    model_kw.setdefault("n_conditions", needed_conditions)
    if getattr(args, "seed", None) is not None:
        train_kw["seed"] = args.seed
    mc = ModelConfig(**model_kw)
    tc = TrainConfig(**train_kw)
    return mc, tc, {"model": mc.to_dict(), "train": tc.to_dict()}


def _read_lines(path: str) -> list[str]:
    with open(path, "r", encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def _cmd_pretrain(args) -> int:
    corpus = load_pretrain(args.data, split="train", lenient=args.lenient)
    try:
        heldout = load_pretrain(args.data, split="test", lenient=True)
    except DataError:
        heldout = Corpus([], split="test")
    vocab_sources = corpus.smiles()
    for extra in args.extra_vocab or []:
        vocab_sources += _read_lines(extra)
    vocab = build_vocab(vocab_sources)
    mc, tc, effective = _effective_configs(args, needed_conditions=args.n_conditions,
                                           vocab_size=len(vocab))
    params, adam, _ = pretrain(corpus, vocab, mc, tc,
                               eval_corpus=heldout if len(heldout) else None,
                               log_path=args.log)
    ckpt = Checkpoint(params=params, config=mc, vocab=vocab, condition_names={},
                      seed=tc.seed, adam=adam if args.keep_optimizer else None,
                      extra={"effective_config": effective})
    save_checkpoint(ckpt, args.out)
    print(json.dumps({"saved": args.out, "vocab_size": len(vocab),
                      "params": sum(p.size for p in params.values())}))
    return EXIT_OK


def _cmd_finetune(args) -> int:
    base = load_checkpoint(args.base)
    targets = [t.strip() for t in args.targets.split(",") if t.strip()]
    if not targets:
        raise ConfigMismatch("--targets needs at least one name")
    condition_map = {name: i + 1 for i, name in enumerate(targets)}
    corpus = load_finetune(args.data, condition_map)
    config = base.config
    needed = len(targets) + 1
    params = base.params
    if config.n_conditions < needed:
        # grow the condition table; rows >= 1 are re-drawn by finetune anyway
        grown = dict(config.to_dict(), n_conditions=needed)
        config = ModelConfig.from_dict(grown)
        table = np.zeros((needed, config.n_condition_slots, config.d_model),
                         dtype=params["cond_table"].dtype)
        table[:base.config.n_conditions] = params["cond_table"]
        params = dict(params, cond_table=table)
    raw = _load_config_file(getattr(args, "config", None))
    raw = _apply_overrides(raw, getattr(args, "set", None))
    train_kw = dict(raw.get("train", {}))
    if args.seed is not None:
        train_kw["seed"] = args.seed
    tc = TrainConfig(**train_kw)
    params, adam, _ = finetune(params, config, corpus, base.vocab, tc,
                               log_path=args.log)
    ckpt = Checkpoint(params=params, config=config, vocab=base.vocab,
                      condition_names=condition_map, seed=tc.seed,
                      adam=adam if args.keep_optimizer else None,
                      extra={"effective_config": {"model": config.to_dict(),
                                                  "train": tc.to_dict()}})
    save_checkpoint(ckpt, args.out)
    print(json.dumps({"saved": args.out, "targets": condition_map}))
    return EXIT_OK


def _resolve_condition(ckpt: Checkpoint, text: str) -> int:
    if text == "none":
        return 0
    if text in ckpt.condition_names:
        return ckpt.condition_names[text]
    try:
        cond = int(text)
    except ValueError:
        raise UnknownCondition(
            f"unknown condition {text!r}; names: {sorted(ckpt.condition_names)}")
    if not 0 <= cond < ckpt.config.n_conditions:
        raise UnknownCondition(f"condition id {cond} outside model range")
    return cond


def _cmd_sample(args) -> int:
    ckpt = load_checkpoint(args.ckpt)
    cond = _resolve_condition(ckpt, args.cond)
    samples = []
    n = args.n
    if args.threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        bounds = np.linspace(0, n, args.threads + 1).astype(int)
        jobs = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]

        def run(chunk):
            # per-sample streams are derived from the global index, so any
            # partitioning produces the same outputs
            return generate(ckpt, cond, chunk[1] - chunk[0], temperature=args.temp,
                            top_k=args.top_k, max_len=args.max_len, seed=args.seed,
                            batch_size=args.batch_size, first_index=chunk[0])
        with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
            for part in pool.map(run, jobs):
                samples.extend(part)
    else:
        samples = generate(ckpt, cond, n, temperature=args.temp, top_k=args.top_k,
                           max_len=args.max_len, seed=args.seed,
                           batch_size=args.batch_size)
    with open(args.out, "w", encoding="utf-8") as fh:
        if args.csv:
            fh.write("smiles,condition,nll,truncated\n")
            for s in samples:
                fh.write(f"{s.text},{s.condition},{s.nll:.6f},{int(s.truncated)}\n")
        else:
            for s in samples:
                fh.write(s.text + "\n")
    print(json.dumps({"written": len(samples), "out": args.out,
                      "truncated": sum(s.truncated for s in samples)}))
    return EXIT_OK


def _cmd_eval(args) -> int:
    gen = _read_lines(args.gen)
    # load_pretrain sniffs CSV vs plain text; for text it returns all lines
    train_ref = load_pretrain(args.train, split="train", lenient=True).smiles()
    test_ref = load_pretrain(args.test, split="test", lenient=True).smiles()
    if args.max_ref:
        train_ref = train_ref[:args.max_ref]
        test_ref = test_ref[:args.max_ref]
    report = metrics.full_report(gen, train_ref, test_ref, threads=args.threads)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(report.to_json() + "\n")
    if args.hist_dir:
        metrics.write_histograms_csv(report, args.hist_dir)
    print(report.to_json())
    return EXIT_OK


def _cmd_validate(args) -> int:
    lines = _read_lines(args.infile)
    n_valid = 0
    for line in lines:
        try:
            verdict = chem.validate(chem.parse(line))
        except SmilesError as exc:
            print(f"{line}\tinvalid\t{type(exc).__name__}: {exc}")
            continue
        if verdict:
            n_valid += 1
            print(f"{line}\tvalid")
        else:
            print(f"{line}\tinvalid\t{verdict.reason}")
    frac = n_valid / len(lines) if lines else 0.0
    print(f"fraction_valid {frac:.3f}")
    return EXIT_OK


def _cmd_fp_export(args) -> int:
    smiles = _read_lines(args.infile)
    n = metrics.fp_export(smiles, [args.label] * len(smiles), args.out,
                          radius=args.radius, width=args.width)
    print(json.dumps({"written": n, "out": args.out}))
    return EXIT_OK


def _cmd_score(args) -> int:
    ckpt = load_checkpoint(args.ckpt)
    cond = _resolve_condition(ckpt, args.cond)
    for line in _read_lines(args.infile):
        print(f"{line}\t{score(ckpt, cond, line):.6f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="molforge",
        description="Train, sample, and evaluate a conditional SMILES generator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pretrain", help="unconditional pre-training")
    p.add_argument("--data", required=True, help="MOSES-layout CSV or plain text")
    p.add_argument("--config", help="JSON config file with model/train sections")
    p.add_argument("--set", action="append", metavar="SECTION.KEY=VALUE",
                   help="override one config value (repeatable)")
    p.add_argument("--out", required=True, help="checkpoint path")
    p.add_argument("--log", help="JSON-lines metrics log path")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n-conditions", type=int, default=4,
                   help="condition rows to reserve for later fine-tuning")
    p.add_argument("--extra-vocab", action="append",
                   help="extra SMILES file(s) merged into the vocabulary")
    p.add_argument("--lenient", action="store_true", help="skip malformed rows")
    p.add_argument("--keep-optimizer", action="store_true")
    p.set_defaults(func=_cmd_pretrain)

    p = sub.add_parser("finetune", help="conditional fine-tuning")
    p.add_argument("--base", required=True)
    p.add_argument("--data", required=True, help="CSV with smiles,target columns")
    p.add_argument("--targets", required=True, help="comma-separated target names")
    p.add_argument("--config", help="JSON config file (train section)")
    p.add_argument("--set", action="append", metavar="SECTION.KEY=VALUE")
    p.add_argument("--out", required=True)
    p.add_argument("--log")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--keep-optimizer", action="store_true")
    p.set_defaults(func=_cmd_finetune)

    p = sub.add_parser("sample", help="autoregressive generation")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--cond", default="none", help="target name, id, or 'none'")
    p.add_argument("-n", type=int, default=1000)
    p.add_argument("--temp", type=float, default=1.0)
    p.add_argument("--top-k", type=int, default=None)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--batch-size", type=int, default=256)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--csv", action="store_true",
                   help="write smiles,condition,nll,truncated instead of plain lines")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("eval", help="metric suite over a generated set")
    p.add_argument("--gen", required=True, help="one SMILES per line")
    p.add_argument("--train", required=True, help="training reference (CSV or text)")
    p.add_argument("--test", required=True, help="test reference (CSV or text)")
    p.add_argument("--out", required=True, help="report JSON path")
    p.add_argument("--hist-dir", help="directory for histogram CSVs")
    p.add_argument("--max-ref", type=int, default=None,
                   help="cap reference sizes for quick runs")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("validate", help="per-line validity verdicts")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("fp-export", help="fingerprint CSV for external projection")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--width", type=int, default=1024)
    p.set_defaults(func=_cmd_fp_export)

    p = sub.add_parser("score", help="conditional NLL of given strings")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--cond", default="none")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=_cmd_score)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SmilesError, DataError) as exc:
        return _fail(exc, EXIT_DATA)
    except (CheckpointError, ConfigMismatch, UnknownCondition, LengthOverflow,
            ShapeMismatch) as exc:
        return _fail(exc, EXIT_MODEL)
    except MolforgeError as exc:
        return _fail(exc, EXIT_INTERNAL)
    except OSError as exc:
        return _fail(exc, EXIT_DATA)
    except Exception as exc:  # pragma: no cover - safety net
        return _fail(exc, EXIT_INTERNAL)


if __name__ == "__main__":
    sys.exit(main())
