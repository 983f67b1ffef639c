"""Decoder-only transformer with a per-layer conditioning cross-attention.

Each layer applies, post-norm style:

    x = LN1(x + SelfAttention(x, x, x))        (causal mask)
    x = LN2(x + CrossAttention(x, e_c, e_c))   (keys/values = condition slots)
    x = LN3(x + FFN(x))

Condition id 0 is the unconditional row: its slots are pinned to zero, which
makes the cross-attention sublayer output exactly zero, so the layer
collapses to LN2 of its input. Attention projections carry no biases; the
FFN does.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from . import kernels
from . import tensor as T
from .errors import LengthOverflow, ShapeMismatch, UnknownCondition
from .rng import Rng

LN_EPS = 1e-5
INIT_STD = 0.02


@dataclass
class ModelConfig:
    vocab_size: int
    n_layers: int = 4
    n_heads: int = 8
    d_model: int = 256
    d_k: int = 0  # 0 = d_model // n_heads
    d_v: int = 0
    d_ffn: int = 1024
    max_len: int = 128
    n_conditions: int = 1
    n_condition_slots: int = 1
    precision: str = "f32"

    def __post_init__(self):
        if self.d_k == 0:
            self.d_k = self.d_model // self.n_heads
        if self.d_v == 0:
            self.d_v = self.d_model // self.n_heads
        if self.n_heads * self.d_k != self.d_model:
            raise ShapeMismatch((self.n_heads, self.d_k), (self.d_model,),
                                "ModelConfig: n_heads * d_k must equal d_model")
        if self.n_conditions < 1:
            raise UnknownCondition("n_conditions must be >= 1")

    @property
    def dtype(self):
        return np.float64 if self.precision == "f64" else np.float32

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ModelConfig":
        return cls(**d)


def param_manifest(config: ModelConfig) -> list[tuple[str, tuple[int, ...]]]:
    """Ordered (name, shape) list of every learnable tensor."""
    c = config
    names: list[tuple[str, tuple[int, ...]]] = [
        ("tok_emb", (c.vocab_size, c.d_model)),
        ("pos_emb", (c.max_len, c.d_model)),
        ("cond_table", (c.n_conditions, c.n_condition_slots, c.d_model)),
    ]
    for i in range(c.n_layers):
        p = f"layers.{i}."
        names += [
            (p + "self_wq", (c.d_model, c.n_heads * c.d_k)),
            (p + "self_wk", (c.d_model, c.n_heads * c.d_k)),
            (p + "self_wv", (c.d_model, c.n_heads * c.d_v)),
            (p + "self_wo", (c.n_heads * c.d_v, c.d_model)),
            (p + "cross_wq", (c.d_model, c.n_heads * c.d_k)),
            (p + "cross_wk", (c.d_model, c.n_heads * c.d_k)),
            (p + "cross_wv", (c.d_model, c.n_heads * c.d_v)),
            (p + "cross_wo", (c.n_heads * c.d_v, c.d_model)),
            (p + "ln1_g", (c.d_model,)),
            (p + "ln1_b", (c.d_model,)),
            (p + "ln2_g", (c.d_model,)),
            (p + "ln2_b", (c.d_model,)),
            (p + "ln3_g", (c.d_model,)),
            (p + "ln3_b", (c.d_model,)),
            (p + "ffn_w1", (c.d_model, c.d_ffn)),
            (p + "ffn_b1", (c.d_ffn,)),
            (p + "ffn_w2", (c.d_ffn, c.d_model)),
            (p + "ffn_b2", (c.d_model,)),
        ]
    names += [("head_w", (c.d_model, c.vocab_size)), ("head_b", (c.vocab_size,))]
    return names


def count_params(config: ModelConfig) -> int:
    return sum(int(np.prod(shape)) for _, shape in param_manifest(config))


def init_params(config: ModelConfig, seed: int) -> dict[str, np.ndarray]:
    """Normal(0, 0.02) weights, identity layernorms, zero biases.

    The whole condition table starts at zero; fine-tuning re-draws rows >= 1.
    """
    rng = Rng(seed)
    dtype = config.dtype
    params: dict[str, np.ndarray] = {}
    for name, shape in param_manifest(config):
        leaf = name.rsplit(".", 1)[-1]
        if leaf == "cond_table" or leaf in ("ffn_b1", "ffn_b2", "head_b") or \
                (leaf.startswith("ln") and leaf.endswith("_b")):
            params[name] = np.zeros(shape, dtype=dtype)
        elif leaf.startswith("ln") and leaf.endswith("_g"):
            params[name] = np.ones(shape, dtype=dtype)
        else:
            params[name] = rng.normal(shape, std=INIT_STD).astype(dtype)
    return params


def as_tensors(params: dict[str, np.ndarray], requires_grad: bool) -> dict[str, T.Tensor]:
    return {k: T.Tensor(v, requires_grad=requires_grad) for k, v in params.items()}


def _split_heads(x: T.Tensor, n_heads: int, width: int) -> T.Tensor:
    b, l, _ = x.shape
    return T.transpose(T.reshape(x, (b, l, n_heads, width)), (0, 2, 1, 3))


def _merge_heads(x: T.Tensor) -> T.Tensor:
    b, h, l, w = x.shape
    return T.reshape(T.transpose(x, (0, 2, 1, 3)), (b, l, h * w))


def _mha(q_in: T.Tensor, kv_in: T.Tensor, wq, wk, wv, wo,
         config: ModelConfig, mask: np.ndarray | None) -> T.Tensor:
    h, dk, dv = config.n_heads, config.d_k, config.d_v
    q = _split_heads(T.matmul(q_in, wq), h, dk)
    k = _split_heads(T.matmul(kv_in, wk), h, dk)
    v = _split_heads(T.matmul(kv_in, wv), h, dv)
    scores = T.scale(T.matmul(q, T.transpose(k, (0, 1, 3, 2))), 1.0 / np.sqrt(dk))
    if mask is not None:
        scores = T.masked_fill(scores, mask)
    weights = T.softmax_last_axis(scores)
    ctx = _merge_heads(T.matmul(weights, v))
    return T.matmul(ctx, wo)


def forward(pt: dict[str, T.Tensor], config: ModelConfig, ids: np.ndarray,
            cond: np.ndarray, cross_mode: str = "attend") -> T.Tensor:
    """Logits [B, L, vocab] for token ids [B, L] under condition ids [B].

    cross_mode "ln_only" replaces the cross-attention sublayer with its
    layernorm alone (reference variant for the zero-condition equivalence).
    """
    ids = np.asarray(ids)
    cond = np.asarray(cond).reshape(-1)
    b, l = ids.shape
    if l > config.max_len:
        raise LengthOverflow(f"sequence length {l} exceeds max_len {config.max_len}")
    if ids.max() >= config.vocab_size:
        raise ShapeMismatch(ids.shape, (config.vocab_size,), "token id out of range")
    if cond.min() < 0 or cond.max() >= config.n_conditions:
        raise UnknownCondition(f"condition ids must lie in [0, {config.n_conditions})")

    x = T.add(T.embedding_lookup(pt["tok_emb"], ids),
              T.embedding_lookup(pt["pos_emb"], np.arange(l)))
    causal = np.triu(np.ones((l, l), dtype=bool), k=1).reshape(1, 1, l, l)
    e_c = T.embedding_lookup(pt["cond_table"], cond)  # (B, m, d)

    for i in range(config.n_layers):
        p = f"layers.{i}."
        attn = _mha(x, x, pt[p + "self_wq"], pt[p + "self_wk"], pt[p + "self_wv"],
                    pt[p + "self_wo"], config, causal)
        x = T.layernorm_last_axis(T.add(x, attn), pt[p + "ln1_g"], pt[p + "ln1_b"], LN_EPS)
        if cross_mode == "attend":
            cross = _mha(x, e_c, pt[p + "cross_wq"], pt[p + "cross_wk"],
                         pt[p + "cross_wv"], pt[p + "cross_wo"], config, None)
            x = T.layernorm_last_axis(T.add(x, cross), pt[p + "ln2_g"], pt[p + "ln2_b"], LN_EPS)
        elif cross_mode == "ln_only":
            x = T.layernorm_last_axis(x, pt[p + "ln2_g"], pt[p + "ln2_b"], LN_EPS)
        else:
            raise ValueError(f"unknown cross_mode {cross_mode!r}")
        h1 = T.relu(T.add(T.matmul(x, pt[p + "ffn_w1"]), pt[p + "ffn_b1"]))
        h2 = T.add(T.matmul(h1, pt[p + "ffn_w2"]), pt[p + "ffn_b2"])
        x = T.layernorm_last_axis(T.add(x, h2), pt[p + "ln3_g"], pt[p + "ln3_b"], LN_EPS)

    return T.add(T.matmul(x, pt["head_w"]), pt["head_b"])


def nll(logits: T.Tensor, targets: np.ndarray, mask: np.ndarray) -> T.Tensor:
    """Mean NLL per valid position; targets are inputs shifted left by one."""
    return T.cross_entropy_logits(logits, targets, mask)


def nll_per_sequence(logits_np: np.ndarray, targets: np.ndarray,
                     mask: np.ndarray) -> np.ndarray:
    """Total -log P per sequence (float64), no autodiff."""
    b, l, v = logits_np.shape
    x = logits_np.astype(np.float64).reshape(-1, v)
    m = x.max(axis=-1, keepdims=True)
    lse = np.log(np.exp(x - m).sum(axis=-1)) + m[:, 0]
    picked = np.take_along_axis(x, targets.reshape(-1, 1).astype(np.int64), axis=-1)[:, 0]
    per_pos = (lse - picked).reshape(b, l) * mask
    return per_pos.sum(axis=-1)


# ---------------------------------------------------------------------------
# Incremental decoding (inference only, plain numpy)
# ---------------------------------------------------------------------------

class DecodeCache:
    """Per-layer K/V cache for autoregressive sampling.

    Logits from step() match the full forward at the same position to within
    float rounding (asserted at 1e-5 in tests); they are used only to choose
    tokens, never to report likelihoods.
    """

    def __init__(self, params: dict[str, np.ndarray], config: ModelConfig,
                 cond: np.ndarray, max_len: int):
        if np.min(cond) < 0 or np.max(cond) >= config.n_conditions:
            raise UnknownCondition(f"condition ids must lie in [0, {config.n_conditions})")
        self.params = params
        self.config = config
        b = len(cond)
        c = config
        dtype = params["tok_emb"].dtype
        self.pos = 0
        self.max_len = min(max_len, c.max_len)
        self.k = [np.zeros((b, c.n_heads, self.max_len, c.d_k), dtype=dtype)
                  for _ in range(c.n_layers)]
        self.v = [np.zeros((b, c.n_heads, self.max_len, c.d_v), dtype=dtype)
                  for _ in range(c.n_layers)]
        e_c = params["cond_table"][np.asarray(cond)]  # (B, m, d)
        self.ck, self.cv = [], []
        for i in range(c.n_layers):
            p = f"layers.{i}."
            self.ck.append(self._heads(e_c @ params[p + "cross_wk"], c.d_k))
            self.cv.append(self._heads(e_c @ params[p + "cross_wv"], c.d_v))

    def _heads(self, x: np.ndarray, width: int) -> np.ndarray:
        b, l, _ = x.shape
        return x.reshape(b, l, self.config.n_heads, width).transpose(0, 2, 1, 3)

    def step(self, ids: np.ndarray) -> np.ndarray:
        """Consume one token per sequence; return next-token logits (B, vocab)."""
        c, params = self.config, self.params
        pos = self.pos
        if pos >= self.max_len:
            raise LengthOverflow(f"decode past max_len {self.max_len}")
        x = params["tok_emb"][ids] + params["pos_emb"][pos]  # (B, d)
        b = x.shape[0]
        for i in range(c.n_layers):
            p = f"layers.{i}."
            q = x @ params[p + "self_wq"]
            self.k[i][:, :, pos, :] = (x @ params[p + "self_wk"]).reshape(b, c.n_heads, c.d_k)
            self.v[i][:, :, pos, :] = (x @ params[p + "self_wv"]).reshape(b, c.n_heads, c.d_v)
            q = q.reshape(b, c.n_heads, 1, c.d_k)
            keys = self.k[i][:, :, :pos + 1, :]
            vals = self.v[i][:, :, :pos + 1, :]
            w = kernels.softmax_fwd(q @ keys.transpose(0, 1, 3, 2) / np.sqrt(c.d_k))
            ctx = (w @ vals).reshape(b, c.n_heads * c.d_v)
            x = self._ln(x + ctx @ params[p + "self_wo"], p + "ln1")
            qc = (x @ params[p + "cross_wq"]).reshape(b, c.n_heads, 1, c.d_k)
            wc = kernels.softmax_fwd(qc @ self.ck[i].transpose(0, 1, 3, 2) / np.sqrt(c.d_k))
            cctx = (wc @ self.cv[i]).reshape(b, c.n_heads * c.d_v)
            x = self._ln(x + cctx @ params[p + "cross_wo"], p + "ln2")
            h1 = np.maximum(x @ params[p + "ffn_w1"] + params[p + "ffn_b1"], 0)
            x = self._ln(x + h1 @ params[p + "ffn_w2"] + params[p + "ffn_b2"], p + "ln3")
        self.pos += 1
        return x @ params["head_w"] + params["head_b"]

    def _ln(self, x: np.ndarray, name: str) -> np.ndarray:
        out, _, _ = kernels.layernorm_fwd(x, self.params[name + "_g"],
                                          self.params[name + "_b"], LN_EPS)
        return out
