"""Numba-compiled kernels; same contracts as numpy_impl.

No fastmath: reductions keep a fixed association order so repeated runs are
bit-identical. First call per dtype pays a compile cost that is cached on
disk.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _softmax2d(x):
    n, k = x.shape
    out = np.empty_like(x)
    for i in range(n):
        row = x[i]
        m = row[0]
        for j in range(1, k):
            if row[j] > m:
                m = row[j]
        s = 0.0
        for j in range(k):
            e = np.exp(row[j] - m)
            out[i, j] = e
            s += e
        inv = 1.0 / s
        for j in range(k):
            out[i, j] *= inv
    return out


def softmax_fwd(x: np.ndarray) -> np.ndarray:
    shape = x.shape
    return _softmax2d(np.ascontiguousarray(x).reshape(-1, shape[-1])).reshape(shape)


@njit(cache=True)
def _softmax_bwd2d(y, g):
    n, k = y.shape
    out = np.empty_like(y)
    for i in range(n):
        dot = 0.0
        for j in range(k):
            dot += g[i, j] * y[i, j]
        for j in range(k):
            out[i, j] = (g[i, j] - dot) * y[i, j]
    return out


def softmax_bwd(y: np.ndarray, g: np.ndarray) -> np.ndarray:
    shape = y.shape
    return _softmax_bwd2d(
        np.ascontiguousarray(y).reshape(-1, shape[-1]),
        np.ascontiguousarray(g).reshape(-1, shape[-1]),
    ).reshape(shape)


@njit(cache=True)
def _layernorm_fwd2d(x, gain, bias, eps):
    n, k = x.shape
    out = np.empty_like(x)
    norm = np.empty_like(x)
    rstd = np.empty((n, 1), dtype=x.dtype)
    for i in range(n):
        mean = 0.0
        for j in range(k):
            mean += x[i, j]
        mean /= k
        var = 0.0
        for j in range(k):
            d = x[i, j] - mean
            var += d * d
        var /= k
        r = 1.0 / np.sqrt(var + eps)
        rstd[i, 0] = r
        for j in range(k):
            nv = (x[i, j] - mean) * r
            norm[i, j] = nv
            out[i, j] = nv * gain[j] + bias[j]
    return out, norm, rstd


def layernorm_fwd(x: np.ndarray, gain: np.ndarray, bias: np.ndarray, eps: float):
    shape = x.shape
    out, norm, rstd = _layernorm_fwd2d(
        np.ascontiguousarray(x).reshape(-1, shape[-1]), gain, bias, x.dtype.type(eps)
    )
    return out.reshape(shape), norm.reshape(shape), rstd.reshape(shape[:-1] + (1,))


@njit(cache=True)
def _layernorm_bwd2d(norm, rstd, gain, g):
    n, k = norm.shape
    dx = np.empty_like(norm)
    dgain = np.zeros(k, dtype=norm.dtype)
    dbias = np.zeros(k, dtype=norm.dtype)
    for i in range(n):
        mean_gy = 0.0
        mean_gyn = 0.0
        for j in range(k):
            gy = g[i, j] * gain[j]
            mean_gy += gy
            mean_gyn += gy * norm[i, j]
            dgain[j] += g[i, j] * norm[i, j]
            dbias[j] += g[i, j]
        mean_gy /= k
        mean_gyn /= k
        r = rstd[i, 0]
        for j in range(k):
            gy = g[i, j] * gain[j]
            dx[i, j] = r * (gy - mean_gy - norm[i, j] * mean_gyn)
    return dx, dgain, dbias


def layernorm_bwd(norm: np.ndarray, rstd: np.ndarray, gain: np.ndarray, g: np.ndarray):
    shape = norm.shape
    dx, dgain, dbias = _layernorm_bwd2d(
        np.ascontiguousarray(norm).reshape(-1, shape[-1]),
        np.ascontiguousarray(rstd).reshape(-1, 1),
        gain,
        np.ascontiguousarray(g).reshape(-1, shape[-1]),
    )
    return dx.reshape(shape), dgain, dbias


@njit(cache=True)
def _cross_entropy_fwd(logits, targets, mask):
    n, k = logits.shape
    out = np.zeros(n, dtype=logits.dtype)
    for i in range(n):
        if mask[i] == 0:
            continue
        row = logits[i]
        m = row[0]
        for j in range(1, k):
            if row[j] > m:
                m = row[j]
        s = 0.0
        for j in range(k):
            s += np.exp(row[j] - m)
        out[i] = np.log(s) + m - row[targets[i]]
    return out


def cross_entropy_fwd(logits: np.ndarray, targets: np.ndarray, mask: np.ndarray):
    return _cross_entropy_fwd(
        np.ascontiguousarray(logits), targets.astype(np.int64),
        mask.astype(logits.dtype)
    )


@njit(cache=True)
def _cross_entropy_bwd(logits, targets, scale):
    n, k = logits.shape
    out = np.empty_like(logits)
    for i in range(n):
        row = logits[i]
        m = row[0]
        for j in range(1, k):
            if row[j] > m:
                m = row[j]
        s = 0.0
        for j in range(k):
            e = np.exp(row[j] - m)
            out[i, j] = e
            s += e
        f = scale[i] / s
        for j in range(k):
            out[i, j] *= f
        out[i, targets[i]] -= scale[i]
    return out


def cross_entropy_bwd(logits: np.ndarray, targets: np.ndarray, mask: np.ndarray,
                      scale: np.ndarray) -> np.ndarray:
    return _cross_entropy_bwd(
        np.ascontiguousarray(logits), targets.astype(np.int64),
        (mask * scale).astype(logits.dtype)
    )


@njit(cache=True)
def _adam_update(param, grad, m, v, lr, beta1, beta2, eps, c1, c2):
    n = param.size
    for i in range(n):
        g = grad[i]
        m[i] = beta1 * m[i] + (1.0 - beta1) * g
        v[i] = beta2 * v[i] + (1.0 - beta2) * g * g
        mhat = m[i] / c1
        vhat = v[i] / c2
        param[i] -= lr * mhat / (np.sqrt(vhat) + eps)


def adam_update(param: np.ndarray, grad: np.ndarray, m: np.ndarray, v: np.ndarray,
                lr: float, beta1: float, beta2: float, eps: float, t: int) -> None:
    _adam_update(param.reshape(-1), np.ascontiguousarray(grad).reshape(-1),
                 m.reshape(-1), v.reshape(-1),
                 lr, beta1, beta2, eps, 1.0 - beta1 ** t, 1.0 - beta2 ** t)


@njit(cache=True)
def _embedding_grad(ids, g, dtable):
    n = ids.shape[0]
    k = g.shape[1]
    for i in range(n):
        row = ids[i]
        for j in range(k):
            dtable[row, j] += g[i, j]


def embedding_grad(ids: np.ndarray, g: np.ndarray, dtable: np.ndarray) -> None:
    cols = dtable.shape[-1] if dtable.ndim == 2 else int(np.prod(dtable.shape[1:]))
    _embedding_grad(ids.reshape(-1).astype(np.int64),
                    np.ascontiguousarray(g).reshape(-1, cols),
                    dtable.reshape(dtable.shape[0], cols))


@njit(cache=True)
def _tanimoto_matrix(a, b):
    n, w = a.shape
    m = b.shape[0]
    pa = np.zeros(n, dtype=np.int64)
    pb = np.zeros(m, dtype=np.int64)
    for i in range(n):
        for k in range(w):
            x = a[i, k]
            c = 0
            while x:
                x &= x - np.uint64(1)
                c += 1
            pa[i] += c
    for j in range(m):
        for k in range(w):
            x = b[j, k]
            c = 0
            while x:
                x &= x - np.uint64(1)
                c += 1
            pb[j] += c
    out = np.empty((n, m), dtype=np.float64)
    for i in range(n):
        for j in range(m):
            inter = 0
            for k in range(w):
                x = a[i, k] & b[j, k]
                c = 0
                while x:
                    x &= x - np.uint64(1)
                    c += 1
                inter += c
            union = pa[i] + pb[j] - inter
            out[i, j] = inter / union if union > 0 else 1.0
    return out


def tanimoto_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return _tanimoto_matrix(np.ascontiguousarray(a), np.ascontiguousarray(b))
