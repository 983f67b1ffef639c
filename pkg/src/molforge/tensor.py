"""Dense arrays with reverse-mode autodiff, plus the Adam optimizer.

Define-by-run tape: every op returns a Tensor that remembers its parents and
a closure computing parent gradients from its own. backward() walks the tape
in reverse topological order. First-order only.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np

from . import kernels
from .errors import NonScalarLoss, ShapeMismatch

MASK_SENTINEL = -1e30  # stands in for -inf; exp() underflows to exactly 0.0


class Tensor:
    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward")

    def __init__(self, data, requires_grad: bool = False, dtype=None):
        if isinstance(data, Tensor):
            data = data.data
        self.data = np.asarray(data, dtype=dtype) if dtype else np.asarray(data)
        if self.data.dtype not in (np.float32, np.float64):
            self.data = self.data.astype(np.float32)
        self.grad: np.ndarray | None = None
        self.requires_grad = requires_grad
        self._parents: tuple[Tensor, ...] = ()
        self._backward: Callable[[np.ndarray], None] | None = None

    @property
    def shape(self):
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    def __repr__(self):
        return f"Tensor(shape={self.data.shape}, dtype={self.data.dtype}, grad={'set' if self.grad is not None else 'none'})"

    def _accumulate(self, g: np.ndarray):
        if self.grad is None:
            self.grad = np.array(g, dtype=self.data.dtype, copy=True)
        else:
            self.grad += g

    # operator sugar
    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __matmul__(self, other):
        return matmul(self, other)

    def __neg__(self):
        return scale(self, -1.0)

    def __sub__(self, other):
        return add(self, scale(_wrap(other, self.dtype), -1.0))

    def sum(self):
        return tensor_sum(self)

    def backward(self):
        backward(self)


def _wrap(x, dtype) -> Tensor:
    if isinstance(x, Tensor):
        return x
    return Tensor(np.asarray(x, dtype=dtype))


def _result(data: np.ndarray, parents: tuple[Tensor, ...], bwd) -> Tensor:
    out = Tensor.__new__(Tensor)
    out.data = data
    out.grad = None
    out.requires_grad = any(p.requires_grad for p in parents)
    if out.requires_grad:
        out._parents = parents
        out._backward = bwd
    else:
        out._parents = ()
        out._backward = None
    return out


def _unbroadcast(g: np.ndarray, shape: tuple) -> np.ndarray:
    """Sum a broadcast gradient back down to the original operand shape."""
    extra = g.ndim - len(shape)
    if extra > 0:
        g = g.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, s in enumerate(shape) if s == 1 and g.shape[i] != 1)
    if axes:
        g = g.sum(axis=axes, keepdims=True)
    return g


def add(a: Tensor, b) -> Tensor:
    b = _wrap(b, a.dtype)
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeMismatch(a.shape, b.shape, "add")
    data = a.data + b.data

    def bwd(g):
        if a.requires_grad:
            a._accumulate(_unbroadcast(g, a.shape))
        if b.requires_grad:
            b._accumulate(_unbroadcast(g, b.shape))

    return _result(data, (a, b), bwd)


def mul(a: Tensor, b) -> Tensor:
    b = _wrap(b, a.dtype)
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeMismatch(a.shape, b.shape, "mul")
    data = a.data * b.data

    def bwd(g):
        if a.requires_grad:
            a._accumulate(_unbroadcast(g * b.data, a.shape))
        if b.requires_grad:
            b._accumulate(_unbroadcast(g * a.data, b.shape))

    return _result(data, (a, b), bwd)


def scale(a: Tensor, factor: float) -> Tensor:
    f = a.data.dtype.type(factor)
    data = a.data * f

    def bwd(g):
        if a.requires_grad:
            a._accumulate(g * f)

    return _result(data, (a,), bwd)


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.shape[-1] != b.shape[-2 if b.data.ndim > 1 else 0]:
        raise ShapeMismatch(a.shape, b.shape, "matmul")
    if b.data.ndim == 2 and a.data.ndim > 2:
        # (..., k) @ (k, n): one large GEMM beats numpy's batched path
        lead = a.shape[:-1]
        k, n = b.shape
        flat = np.ascontiguousarray(a.data).reshape(-1, k)
        data = (flat @ b.data).reshape(*lead, n)

        def bwd(g):
            g2 = np.ascontiguousarray(g).reshape(-1, n)
            if a.requires_grad:
                a._accumulate((g2 @ b.data.T).reshape(a.shape))
            if b.requires_grad:
                b._accumulate(flat.T @ g2)

        return _result(data, (a, b), bwd)
    data = a.data @ b.data

    def bwd(g):
        if a.requires_grad:
            a._accumulate(_unbroadcast(g @ np.swapaxes(b.data, -1, -2), a.shape))
        if b.requires_grad:
            b._accumulate(_unbroadcast(np.swapaxes(a.data, -1, -2) @ g, b.shape))

    return _result(data, (a, b), bwd)


def transpose(a: Tensor, axes: tuple) -> Tensor:
    data = np.transpose(a.data, axes)
    inverse = tuple(np.argsort(axes))

    def bwd(g):
        if a.requires_grad:
            a._accumulate(np.transpose(g, inverse))

    return _result(data, (a,), bwd)


def reshape(a: Tensor, shape: tuple) -> Tensor:
    data = np.ascontiguousarray(a.data).reshape(shape)
    orig = a.shape

    def bwd(g):
        if a.requires_grad:
            a._accumulate(np.ascontiguousarray(g).reshape(orig))

    return _result(data, (a,), bwd)


def concat_last_axis(parts: Iterable[Tensor]) -> Tensor:
    parts = list(parts)
    lead = parts[0].shape[:-1]
    for p in parts[1:]:
        if p.shape[:-1] != lead:
            raise ShapeMismatch(parts[0].shape, p.shape, "concat_last_axis")
    data = np.concatenate([p.data for p in parts], axis=-1)
    widths = [p.shape[-1] for p in parts]

    def bwd(g):
        offset = 0
        for p, w in zip(parts, widths):
            if p.requires_grad:
                p._accumulate(g[..., offset:offset + w])
            offset += w

    return _result(data, tuple(parts), bwd)


def relu(a: Tensor) -> Tensor:
    data = np.maximum(a.data, 0)

    def bwd(g):
        if a.requires_grad:
            a._accumulate(g * (a.data > 0))

    return _result(data, (a,), bwd)


def masked_fill(a: Tensor, mask: np.ndarray, value: float = MASK_SENTINEL) -> Tensor:
    """Set positions where mask is true to a large negative sentinel."""
    data = np.where(mask, a.data.dtype.type(value), a.data)

    def bwd(g):
        if a.requires_grad:
            a._accumulate(np.where(mask, 0, g))

    return _result(data, (a,), bwd)


def softmax_last_axis(a: Tensor) -> Tensor:
    data = kernels.softmax_fwd(a.data)

    def bwd(g):
        if a.requires_grad:
            a._accumulate(kernels.softmax_bwd(data, g))

    return _result(data, (a,), bwd)


def layernorm_last_axis(a: Tensor, gain: Tensor, bias: Tensor, eps: float = 1e-5) -> Tensor:
    if gain.shape != (a.shape[-1],) or bias.shape != (a.shape[-1],):
        raise ShapeMismatch(a.shape, gain.shape, "layernorm_last_axis")
    data, norm, rstd = kernels.layernorm_fwd(a.data, gain.data, bias.data, eps)

    def bwd(g):
        dx, dgain, dbias = kernels.layernorm_bwd(norm, rstd, gain.data, g)
        if a.requires_grad:
            a._accumulate(dx)
        if gain.requires_grad:
            gain._accumulate(dgain)
        if bias.requires_grad:
            bias._accumulate(dbias)

    return _result(data, (a, gain, bias), bwd)


def embedding_lookup(table: Tensor, ids: np.ndarray) -> Tensor:
    ids = np.asarray(ids)
    if ids.size and (ids.min() < 0 or ids.max() >= table.shape[0]):
        raise ShapeMismatch(ids.shape, table.shape, "embedding_lookup: id out of range")
    data = table.data[ids]

    def bwd(g):
        if table.requires_grad:
            if table.grad is None:
                table.grad = np.zeros_like(table.data)
            kernels.embedding_grad(ids, g, table.grad)

    return _result(data, (table,), bwd)


def cross_entropy_logits(logits: Tensor, targets: np.ndarray, mask: np.ndarray) -> Tensor:
    """Mean over masked positions of -log softmax(logits)[target]; scalar."""
    v = logits.shape[-1]
    flat = np.ascontiguousarray(logits.data).reshape(-1, v)
    t = np.asarray(targets).reshape(-1)
    m = np.asarray(mask).reshape(-1)
    if flat.shape[0] != t.shape[0] or t.shape != m.shape:
        raise ShapeMismatch(logits.shape, np.asarray(targets).shape, "cross_entropy_logits")
    n_valid = int(m.sum())
    if n_valid == 0:
        raise ShapeMismatch(mask.shape, mask.shape, "cross_entropy_logits: empty mask")
    per_pos = kernels.cross_entropy_fwd(flat, t, m)
    data = np.asarray(per_pos.sum(dtype=np.float64) / n_valid, dtype=logits.dtype)

    def bwd(g):
        if logits.requires_grad:
            scale_vec = np.full(t.shape[0], float(g) / n_valid, dtype=flat.dtype)
            d = kernels.cross_entropy_bwd(flat, t, m, scale_vec)
            logits._accumulate(d.reshape(logits.shape))

    return _result(data, (logits,), bwd)


def tensor_sum(a: Tensor) -> Tensor:
    data = np.asarray(a.data.sum(), dtype=a.dtype)

    def bwd(g):
        if a.requires_grad:
            a._accumulate(np.broadcast_to(g, a.shape).astype(a.dtype))

    return _result(data, (a,), bwd)


def backward(loss: Tensor) -> None:
    """Populate .grad of every tensor reachable from loss."""
    if loss.data.size != 1:
        raise NonScalarLoss(f"loss has shape {loss.shape}")
    order: list[Tensor] = []
    seen: set[int] = set()
    stack: list[tuple[Tensor, bool]] = [(loss, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for p in node._parents:
            if id(p) not in seen:
                stack.append((p, False))
    loss._accumulate(np.ones_like(loss.data))
    for node in reversed(order):
        if node._backward is not None and node.grad is not None:
            node._backward(node.grad)


# ---------------------------------------------------------------------------
# Adam
# ---------------------------------------------------------------------------

class AdamState:
    """Per-parameter first/second moment buffers plus hyperparameters."""

    def __init__(self, params: dict[str, np.ndarray], lr: float = 3e-4,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.step = 0
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}


def adam_step(params: dict[str, np.ndarray], grads: dict[str, np.ndarray],
              state: AdamState, lr: float | None = None,
              skip: set[str] | frozenset[str] = frozenset()) -> AdamState:
    """One bias-corrected Adam update, in place over the param dict."""
    state.step += 1
    step_lr = state.lr if lr is None else lr
    for name, p in params.items():
        if name in skip:
            continue
        g = grads.get(name)
        if g is None:
            continue
        if g.shape != p.shape:
            raise ShapeMismatch(g.shape, p.shape, f"adam_step[{name}]")
        kernels.adam_update(p, g, state.m[name], state.v[name],
                            step_lr, state.beta1, state.beta2, state.eps, state.step)
    return state


def global_grad_norm(grads: dict[str, np.ndarray]) -> float:
    total = 0.0
    for g in grads.values():
        total += float(np.square(g, dtype=np.float64).sum())
    return math.sqrt(total)


def clip_grads(grads: dict[str, np.ndarray], max_norm: float) -> float:
    """Scale all grads so the global norm is at most max_norm; returns pre-clip norm."""
    norm = global_grad_norm(grads)
    if norm > max_norm:
        factor = max_norm / norm
        for g in grads.values():
            g *= g.dtype.type(factor)
    return norm
