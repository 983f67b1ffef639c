"""Pure-numpy reference implementations of the hot kernels.

Matrix multiplication is deliberately absent: both backends route matmul
through numpy/BLAS, which a hand-written kernel will not beat.
"""

from __future__ import annotations

import numpy as np


def softmax_fwd(x: np.ndarray) -> np.ndarray:
    """Row softmax over the last axis of a 2-d array, max-subtracted."""
    shifted = x - x.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def softmax_bwd(y: np.ndarray, g: np.ndarray) -> np.ndarray:
    dot = (g * y).sum(axis=-1, keepdims=True)
    return (g - dot) * y


def layernorm_fwd(x: np.ndarray, gain: np.ndarray, bias: np.ndarray, eps: float):
    mean = x.mean(axis=-1, keepdims=True)
    centered = x - mean
    var = (centered * centered).mean(axis=-1, keepdims=True)
    rstd = 1.0 / np.sqrt(var + eps)
    norm = centered * rstd
    return norm * gain + bias, norm, rstd


def layernorm_bwd(norm: np.ndarray, rstd: np.ndarray, gain: np.ndarray, g: np.ndarray):
    dgain = (g * norm).reshape(-1, norm.shape[-1]).sum(axis=0)
    dbias = g.reshape(-1, norm.shape[-1]).sum(axis=0)
    gy = g * gain
    dx = rstd * (gy - gy.mean(axis=-1, keepdims=True)
                 - norm * (gy * norm).mean(axis=-1, keepdims=True))
    return dx, dgain, dbias


def cross_entropy_fwd(logits: np.ndarray, targets: np.ndarray, mask: np.ndarray):
    """Per-row -log softmax(logits)[target]; rows with mask 0 contribute 0."""
    m = logits.max(axis=-1, keepdims=True)
    lse = np.log(np.exp(logits - m).sum(axis=-1)) + m[:, 0]
    picked = np.take_along_axis(logits, targets[:, None], axis=-1)[:, 0]
    return (lse - picked) * mask


def cross_entropy_bwd(logits: np.ndarray, targets: np.ndarray, mask: np.ndarray,
                      scale: np.ndarray) -> np.ndarray:
    p = softmax_fwd(logits)
    p[np.arange(logits.shape[0]), targets] -= 1.0
    return p * (mask * scale)[:, None]


def adam_update(param: np.ndarray, grad: np.ndarray, m: np.ndarray, v: np.ndarray,
                lr: float, beta1: float, beta2: float, eps: float, t: int) -> None:
    m *= beta1
    m += (1.0 - beta1) * grad
    v *= beta2
    v += (1.0 - beta2) * grad * grad
    mhat = m / (1.0 - beta1 ** t)
    vhat = v / (1.0 - beta2 ** t)
    param -= lr * mhat / (np.sqrt(vhat) + eps)


def embedding_grad(ids: np.ndarray, g: np.ndarray, dtable: np.ndarray) -> None:
    """Scatter-add rows of g into dtable at positions ids (in place)."""
    np.add.at(dtable, ids, g)


def tanimoto_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise Tanimoto over packed uint64 bit rows: (n,w) x (m,w) -> (n,m)."""
    inter = np.bitwise_count(a[:, None, :] & b[None, :, :]).sum(axis=-1, dtype=np.int64)
    pa = np.bitwise_count(a).sum(axis=-1, dtype=np.int64)
    pb = np.bitwise_count(b).sum(axis=-1, dtype=np.int64)
    union = pa[:, None] + pb[None, :] - inter
    out = np.ones(inter.shape, dtype=np.float64)
    np.divide(inter, union, out=out, where=union > 0)
    return out
