"""Pre-training (unconditional) and fine-tuning (conditional) loops.

Teacher forcing throughout: inputs are [BOS, t1..tN], targets the same
sequence shifted left, so BOS is never a target and EOS always is. The
unconditional row of the condition table receives no gradient, ever.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, asdict

import numpy as np

from . import tensor as T
from .errors import ConfigMismatch, UnknownCharacter
from .model import ModelConfig, as_tensors, forward, init_params, nll
from .rng import Rng
from .store import BatchStream, Corpus
from .tensor import AdamState, adam_step, clip_grads
from .tokenizer import PAD, UNK, Vocab, encode


@dataclass
class TrainConfig:
    epochs: int = 10
    batch_size: int = 64
    lr: float = 3e-4
    lr_schedule: str = "warmup_linear"  # or "constant"
    warmup_steps: int = 1000
    seed: int = 0
    grad_clip_norm: float = 1.0
    eval_every: int = 200
    precision: str = "f32"
    finetune_scope: str = "all-weights"  # or "condition-embeddings-only"
    max_steps: int | None = None
    max_seconds: float | None = None
    eval_batches: int = 8

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "TrainConfig":
        return cls(**d)


def check_corpus_tokens(corpus: Corpus, vocab: Vocab) -> None:
    """Hard error if any training string fails to tokenize or hits UNK."""
    for smiles, _ in corpus.entries:
        try:
            ids = encode(smiles, vocab).ids
        except UnknownCharacter as exc:
            raise ConfigMismatch(f"untokenizable training SMILES {smiles!r}: {exc}") from exc
        if UNK in ids:
            raise ConfigMismatch(f"training SMILES {smiles!r} contains out-of-vocabulary tokens")


def _lr_at(step: int, tc: TrainConfig, total_steps: int) -> float:
    if tc.lr_schedule == "constant":
        return tc.lr
    if step < tc.warmup_steps:
        return tc.lr * (step + 1) / tc.warmup_steps
    if total_steps <= tc.warmup_steps:
        return tc.lr
    frac = (step - tc.warmup_steps) / max(1, total_steps - tc.warmup_steps)
    return tc.lr * max(0.05, 1.0 - frac)


def heldout_nll(params: dict[str, np.ndarray], config: ModelConfig, corpus: Corpus,
                vocab: Vocab, tc: TrainConfig, max_batches: int | None = None) -> float:
    """Mean NLL per token over (a prefix of) an evaluation corpus."""
    total, count = 0.0, 0
    limit = max_batches if max_batches is not None else tc.eval_batches
    stream = BatchStream(corpus, vocab, tc.batch_size, config.max_len, seed=tc.seed, epoch=0)
    pt = as_tensors(params, requires_grad=False)
    for i, (tokens, conds, _) in enumerate(stream):
        if limit is not None and i >= limit:
            break
        inputs, targets = tokens[:, :-1], tokens[:, 1:]
        tmask = targets != PAD
        logits = forward(pt, config, inputs, conds)
        loss = T.cross_entropy_logits(logits, targets, tmask)
        n_valid = int(tmask.sum())
        total += float(loss.data) * n_valid
        count += n_valid
    return total / max(count, 1)


class _Logger:
    def __init__(self, path: str | None, effective: dict):
        self.fh = open(path, "w", encoding="utf-8") if path else None
        self.records: list[dict] = []
        self._emit({"event": "config", **effective})

    def _emit(self, rec: dict):
        self.records.append(rec)
        if self.fh:
            self.fh.write(json.dumps(rec) + "\n")
            self.fh.flush()

    def metric(self, step: int, split: str, value: float, lr: float, wall_ms: float):
        self._emit({"step": step, "split": split, "nll_per_token": value,
                    "lr": lr, "wall_ms": round(wall_ms, 3)})

    def close(self):
        if self.fh:
            self.fh.close()


def _train_loop(params: dict[str, np.ndarray], config: ModelConfig, corpus: Corpus,
                vocab: Vocab, tc: TrainConfig, scope: str,
                eval_corpus: Corpus | None, log_path: str | None,
                adam: AdamState | None = None):
    check_corpus_tokens(corpus, vocab)
    if adam is None:
        adam = AdamState(params, lr=tc.lr)
    skip: frozenset[str] = frozenset()
    if scope == "condition-embeddings-only":
        skip = frozenset(k for k in params if k != "cond_table")
    elif scope != "all-weights":
        raise ConfigMismatch(f"unknown finetune_scope {scope!r}")

    steps_per_epoch = max(1, (len(corpus) + tc.batch_size - 1) // tc.batch_size)
    total_steps = tc.epochs * steps_per_epoch
    if tc.max_steps is not None:
        total_steps = min(total_steps, tc.max_steps)

    logger = _Logger(log_path, {"model_config": config.to_dict(), "train_config": tc.to_dict()})
    t0 = time.perf_counter()
    step = 0
    stop = False
    last_loss = float("nan")
    for epoch in range(tc.epochs):
        if stop:
            break
        for tokens, conds, _ in BatchStream(corpus, vocab, tc.batch_size,
                                            config.max_len, tc.seed, epoch):
            inputs, targets = tokens[:, :-1], tokens[:, 1:]
            tmask = targets != PAD
            pt = as_tensors(params, requires_grad=True)
            logits = forward(pt, config, inputs, conds)
            loss = nll(logits, targets, tmask)
            T.backward(loss)
            grads = {k: t.grad for k, t in pt.items() if t.grad is not None}
            if "cond_table" in grads:
                grads["cond_table"][0] = 0.0
            clip_grads(grads, tc.grad_clip_norm)
            lr = _lr_at(step, tc, total_steps)
            adam_step(params, grads, adam, lr=lr, skip=skip)
            last_loss = float(loss.data)
            step += 1
            wall_ms = (time.perf_counter() - t0) * 1e3
            if step % tc.eval_every == 0 or step == total_steps:
                logger.metric(step, "train", last_loss, lr, wall_ms)
                if eval_corpus is not None and len(eval_corpus):
                    logger.metric(step, "heldout",
                                  heldout_nll(params, config, eval_corpus, vocab, tc),
                                  lr, (time.perf_counter() - t0) * 1e3)
            if tc.max_steps is not None and step >= tc.max_steps:
                stop = True
                break
            if tc.max_seconds is not None and time.perf_counter() - t0 > tc.max_seconds:
                stop = True
                break
    if step % tc.eval_every != 0:
        logger.metric(step, "train", last_loss, _lr_at(step - 1, tc, total_steps),
                      (time.perf_counter() - t0) * 1e3)
    logger.close()
    return params, adam, logger.records


def pretrain(corpus: Corpus, vocab: Vocab, config: ModelConfig, tc: TrainConfig,
             eval_corpus: Corpus | None = None, log_path: str | None = None):
    """Unconditional pre-training; returns (params, adam state, metric records)."""
    if any(c != 0 for _, c in corpus.entries):
        raise ConfigMismatch("pre-training corpus must be all condition 0")
    params = init_params(config, tc.seed)
    return _train_loop(params, config, corpus, vocab, tc, "all-weights",
                       eval_corpus, log_path)


def finetune(params: dict[str, np.ndarray], config: ModelConfig, corpus: Corpus,
             vocab: Vocab, tc: TrainConfig, eval_corpus: Corpus | None = None,
             log_path: str | None = None):
    """Conditional fine-tuning of a pre-trained model (in place on params).

    Condition rows 1..n are re-drawn from Normal(0, 0.02); row 0 stays zero
    so unconditional generation remains available.
    """
    conds = {c for _, c in corpus.entries}
    if not conds or min(conds) < 1:
        raise ConfigMismatch("fine-tuning corpus must carry condition ids >= 1")
    if max(conds) >= config.n_conditions:
        raise ConfigMismatch(
            f"corpus condition id {max(conds)} outside model's {config.n_conditions} rows")
    table = params["cond_table"]
    rng = Rng(tc.seed).derive(0x5EED)
    table[1:] = rng.normal(table[1:].shape, std=0.02).astype(table.dtype)
    return _train_loop(params, config, corpus, vocab, tc, tc.finetune_scope,
                       eval_corpus, log_path)
