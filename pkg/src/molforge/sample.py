"""Autoregressive SMILES generation and exact sequence scoring.

Sampling draws from softmax(logits / temperature) (argmax at temperature 0),
optionally truncated to the top_k most likely tokens. PAD, BOS and UNK are
never sampled: the first two by contract, UNK so that every emitted string
re-tokenizes to exactly the ids that produced it. Each sample consumes its
own (seed, index)-derived random stream, so results do not depend on batch
partitioning. The reported NLL of a sample is computed by the same full
forward pass score() uses, making the two exactly consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import UnknownCondition, UnknownToken
from .model import DecodeCache, ModelConfig, as_tensors, forward, nll_per_sequence
from .rng import Rng
from .store import Checkpoint
from .tokenizer import BOS, EOS, PAD, UNK, TokenSeq, Vocab, decode, encode


@dataclass
class GeneratedSample:
    text: str
    condition: int
    nll: float
    truncated: bool


def _score_ids(params, config: ModelConfig, ids: list[int], cond: int) -> float:
    arr = np.asarray(ids, dtype=np.int64)[None, :]
    pt = as_tensors(params, requires_grad=False)
    logits = forward(pt, config, arr[:, :-1], np.asarray([cond]))
    targets = arr[:, 1:]
    mask = np.ones_like(targets, dtype=bool)
    return float(nll_per_sequence(logits.data, targets, mask)[0])


def score(ckpt: Checkpoint, cond: int, smiles: str) -> float:
    """Exact conditional NLL of a SMILES string: -sum log P(t_i | t_<i, c)."""
    if not 0 <= cond < ckpt.config.n_conditions:
        raise UnknownCondition(f"condition {cond} outside [0, {ckpt.config.n_conditions})")
    seq = encode(smiles, ckpt.vocab)
    if UNK in seq.ids:
        raise UnknownToken(f"{smiles!r} contains tokens outside the checkpoint vocabulary")
    return _score_ids(ckpt.params, ckpt.config, list(seq.ids), cond)


def generate(ckpt: Checkpoint, cond: int, n: int, temperature: float = 1.0,
             top_k: int | None = None, max_len: int | None = None, seed: int = 0,
             batch_size: int = 256, first_index: int = 0) -> list[GeneratedSample]:
    """Sample n SMILES strings under a condition id; deterministic in seed.

    Memory is bounded by batch_size regardless of n. Samples that fail to
    emit EOS within max_len tokens come back flagged truncated. Sample i
    consumes the random stream derived from (seed, first_index + i), so
    partitioning a run across workers reproduces the serial outputs.
    """
    config, params, vocab = ckpt.config, ckpt.params, ckpt.vocab
    if not 0 <= cond < config.n_conditions:
        raise UnknownCondition(f"condition {cond} outside [0, {config.n_conditions})")
    if max_len is None:
        max_len = config.max_len
    max_len = min(max_len, config.max_len)
    banned = np.array([PAD, BOS, UNK])

    out: list[GeneratedSample] = []
    for chunk_start in range(0, n, batch_size):
        b = min(batch_size, n - chunk_start)
        streams = [Rng(seed).derive(first_index + chunk_start + i) for i in range(b)]
        cache = DecodeCache(params, config, np.full(b, cond, dtype=np.int64), max_len)
        prev = np.full(b, BOS, dtype=np.int64)
        done = np.zeros(b, dtype=bool)
        tokens: list[list[int]] = [[] for _ in range(b)]
        for _ in range(max_len - 2):  # room for BOS and EOS inside max_len
            logits = cache.step(prev).astype(np.float64)
            logits[:, banned] = -np.inf
            nxt = _choose(logits, temperature, top_k, streams, done)
            for i in range(b):
                if done[i]:
                    continue
                if nxt[i] == EOS:
                    done[i] = True
                else:
                    tokens[i].append(int(nxt[i]))
            if done.all():
                break
            # finished rows keep feeding EOS; their outputs are ignored
            prev = np.where(done, EOS, nxt)
        for i in range(b):
            ids = [BOS] + tokens[i] + ([EOS] if done[i] else [])
            text = decode(TokenSeq(tuple(ids)), vocab)
            nll = _score_ids(params, config, ids, cond) if len(ids) > 1 else 0.0
            out.append(GeneratedSample(text=text, condition=cond, nll=nll,
                                       truncated=not bool(done[i])))
    return out


def _choose(logits: np.ndarray, temperature: float, top_k: int | None,
            streams: list[Rng], done: np.ndarray) -> np.ndarray:
    if temperature == 0:
        return np.argmax(logits, axis=-1)
    scaled = logits / temperature
    if top_k is not None:
        kth = np.partition(scaled, -top_k, axis=-1)[:, -top_k][:, None]
        scaled = np.where(scaled < kth, -np.inf, scaled)
    probs = kernels.softmax_fwd(scaled)
    cdf = np.cumsum(probs, axis=-1)
    picks = np.empty(logits.shape[0], dtype=np.int64)
    for i, stream in enumerate(streams):
        if done[i]:
            picks[i] = EOS
            continue
        u = stream.uniform() * cdf[i, -1]
        picks[i] = int(np.searchsorted(cdf[i], u))
    return picks
