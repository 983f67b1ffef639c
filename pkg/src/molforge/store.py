"""Dataset ingestion, batching, and checkpoint persistence.

Checkpoint layout: 8-byte magic "MGFORGE1", little-endian uint32 header
length, UTF-8 JSON header, then the payload of raw little-endian IEEE-754
32-bit floats with every tensor at the offset its manifest entry declares.
"""

from __future__ import annotations

import csv
import json
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import (CheckpointError, CorruptHeader, MissingColumn,
                     PayloadLengthMismatch, UnknownTargetName, UnparseableRow,
                     VersionMismatch)
from .model import ModelConfig
from .rng import Rng
from .tensor import AdamState
from .tokenizer import PAD, Vocab, encode

MAGIC = b"MGFORGE1"
FORMAT_VERSION = 1


@dataclass
class Corpus:
    entries: list[tuple[str, int]]  # (smiles, condition id)
    split: str = "train"

    def __len__(self):
        return len(self.entries)

    def smiles(self) -> list[str]:
        return [s for s, _ in self.entries]


def load_pretrain(path: str, split: str = "train", lenient: bool = False) -> Corpus:
    """Unconditional corpus from a MOSES-layout CSV (SMILES,SPLIT) or plain text.

    CSV rows whose SPLIT differs from the requested split are excluded.
    Malformed rows raise UnparseableRow unless lenient, which skips them.
    """
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
        if not first:
            raise UnparseableRow(f"{path}: empty file")
        header = [h.strip() for h in first.strip().split(",")]
        entries: list[tuple[str, int]] = []
        if any(h.upper() == "SMILES" for h in header):
            upper = [h.upper() for h in header]
            if "SPLIT" not in upper:
                raise MissingColumn(f"{path}: CSV needs SMILES and SPLIT columns, got {header}")
            si, pi = upper.index("SMILES"), upper.index("SPLIT")
            for row_no, row in enumerate(csv.reader(fh), start=2):
                if not row or (len(row) == 1 and not row[0].strip()):
                    continue
                if len(row) <= max(si, pi) or not row[si].strip():
                    if lenient:
                        continue
                    raise UnparseableRow(f"{path}:{row_no}: malformed row {row!r}")
                if row[pi].strip() == split:
                    entries.append((row[si].strip(), 0))
        else:
            for row_no, line in enumerate([first] + fh.readlines(), start=1):
                text = line.strip()
                if text:
                    entries.append((text, 0))
    return Corpus(entries, split=split)


def load_finetune(path: str, condition_map: dict[str, int]) -> Corpus:
    """Conditional corpus from a CSV with columns smiles,target (ids >= 1)."""
    with open(path, "r", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = [h.strip().lower() for h in next(reader, [])]
        if "smiles" not in header or "target" not in header:
            raise MissingColumn(f"{path}: CSV needs smiles and target columns, got {header}")
        si, ti = header.index("smiles"), header.index("target")
        entries: list[tuple[str, int]] = []
        for row_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) <= max(si, ti) or not row[si].strip():
                raise UnparseableRow(f"{path}:{row_no}: malformed row {row!r}")
            name = row[ti].strip()
            if name not in condition_map:
                raise UnknownTargetName(f"{path}:{row_no}: unknown target {name!r}")
            entries.append((row[si].strip(), condition_map[name]))
    return Corpus(entries, split="train")


class BatchStream:
    """One-epoch iterator of (token matrix, condition vector, mask) batches.

    Shuffling is a pure function of (seed, epoch). Sequences longer than
    max_len (after BOS/EOS) are dropped and counted in .dropped. Batches pad
    to the longest sequence they contain; mask flags non-PAD positions.
    """

    def __init__(self, corpus: Corpus, vocab: Vocab, batch_size: int,
                 max_len: int, seed: int, epoch: int = 0):
        self.corpus = corpus
        self.vocab = vocab
        self.batch_size = batch_size
        self.max_len = max_len
        self.seed = seed
        self.epoch = epoch
        self.dropped = 0

    def __iter__(self):
        rng = Rng(self.seed).derive(self.epoch)
        order = rng.permutation(len(self.corpus.entries))
        kept: list[tuple[tuple[int, ...], int]] = []
        for idx in order:
            smiles, cond = self.corpus.entries[idx]
            ids = encode(smiles, self.vocab).ids
            if len(ids) > self.max_len:
                self.dropped += 1
                continue
            kept.append((ids, cond))
            if len(kept) == self.batch_size:
                yield self._pack(kept)
                kept = []
        if kept:
            yield self._pack(kept)

    def _pack(self, items):
        width = max(len(ids) for ids, _ in items)
        tokens = np.full((len(items), width), PAD, dtype=np.int32)
        conds = np.zeros(len(items), dtype=np.int32)
        for i, (ids, cond) in enumerate(items):
            tokens[i, :len(ids)] = ids
            conds[i] = cond
        return tokens, conds, tokens != PAD


# ---------------------------------------------------------------------------
# Checkpoints
# ---------------------------------------------------------------------------

@dataclass
class Checkpoint:
    params: dict[str, np.ndarray]
    config: ModelConfig
    vocab: Vocab
    condition_names: dict[str, int]
    seed: int = 0
    adam: AdamState | None = None
    extra: dict = field(default_factory=dict)


def _payload_tensors(ckpt: Checkpoint) -> list[tuple[str, np.ndarray]]:
    tensors = list(ckpt.params.items())
    if ckpt.adam is not None:
        for name in ckpt.params:
            tensors.append((f"adam.m.{name}", ckpt.adam.m[name]))
        for name in ckpt.params:
            tensors.append((f"adam.v.{name}", ckpt.adam.v[name]))
    return tensors


def save_checkpoint(ckpt: Checkpoint, path: str) -> None:
    """Write the single-file format; bit-exact round trip for float32 tensors."""
    tensors = _payload_tensors(ckpt)
    for name, arr in tensors:
        if arr.dtype != np.float32:
            raise CheckpointError(
                f"checkpoint payload is 32-bit; tensor {name} has dtype {arr.dtype}")
    manifest = []
    offset = 0
    for name, arr in tensors:
        manifest.append({"name": name, "shape": list(arr.shape), "offset": offset})
        offset += arr.size * 4
    header = {
        "format_version": FORMAT_VERSION,
        "model_config": ckpt.config.to_dict(),
        "vocab": list(ckpt.vocab.tokens),
        "condition_names": ckpt.condition_names,
        "has_optimizer": ckpt.adam is not None,
        "seed": ckpt.seed,
        "extra": ckpt.extra,
        "manifest": manifest,
    }
    if ckpt.adam is not None:
        header["adam"] = {"lr": ckpt.adam.lr, "beta1": ckpt.adam.beta1,
                          "beta2": ckpt.adam.beta2, "eps": ckpt.adam.eps,
                          "step": ckpt.adam.step}
    blob = json.dumps(header).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        for _, arr in tensors:
            fh.write(np.ascontiguousarray(arr, dtype="<f4").tobytes())


def load_checkpoint(path: str) -> Checkpoint:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != MAGIC:
            raise CorruptHeader(f"{path}: bad magic {magic!r}")
        raw_len = fh.read(4)
        if len(raw_len) != 4:
            raise CorruptHeader(f"{path}: truncated header length")
        (hlen,) = struct.unpack("<I", raw_len)
        blob = fh.read(hlen)
        if len(blob) != hlen:
            raise CorruptHeader(f"{path}: truncated header")
        try:
            header = json.loads(blob.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise CorruptHeader(f"{path}: unreadable header: {exc}") from exc
        if header.get("format_version") != FORMAT_VERSION:
            raise VersionMismatch(
                f"{path}: format version {header.get('format_version')} != {FORMAT_VERSION}")
        payload = fh.read()
    expected = sum(int(np.prod(m["shape"])) * 4 for m in header["manifest"])
    if len(payload) != expected:
        raise PayloadLengthMismatch(f"{path}: payload {len(payload)} bytes, manifest wants {expected}")
    tensors: dict[str, np.ndarray] = {}
    for m in header["manifest"]:
        size = int(np.prod(m["shape"]))
        start = m["offset"]
        arr = np.frombuffer(payload, dtype="<f4", count=size, offset=start)
        tensors[m["name"]] = arr.reshape(m["shape"]).copy()
    params = {k: v for k, v in tensors.items() if not k.startswith("adam.")}
    config = ModelConfig.from_dict(header["model_config"])
    vocab = Vocab(tuple(header["vocab"]))
    adam = None
    if header.get("has_optimizer"):
        meta = header["adam"]
        adam = AdamState(params, lr=meta["lr"], beta1=meta["beta1"],
                         beta2=meta["beta2"], eps=meta["eps"])
        adam.step = meta["step"]
        adam.m = {k: tensors[f"adam.m.{k}"] for k in params}
        adam.v = {k: tensors[f"adam.v.{k}"] for k in params}
    return Checkpoint(params=params, config=config, vocab=vocab,
                      condition_names=header.get("condition_names", {}),
                      seed=header.get("seed", 0), adam=adam,
                      extra=header.get("extra", {}))
