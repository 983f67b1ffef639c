#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times each hot kernel on training-shaped inputs, then a full training step
with each backend end to end. Matmul is BLAS in both backends and is not
listed separately. Usage:

    python benchmarks/bench_kernels.py [--repeat 20]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from molforge import kernels
from molforge.kernels import numba_impl, numpy_impl
from molforge.rng import Rng


def _time(fn, repeat: int) -> float:
    fn()  # warm (and compile, for numba)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat * 1e3


def kernel_cases():
    rng = Rng(0)
    x = rng.normal((64 * 8 * 30, 30)).astype(np.float32)      # attention rows
    g = rng.normal(x.shape).astype(np.float32)
    ln_x = rng.normal((64 * 30, 256)).astype(np.float32)       # residual rows
    gain = np.ones(256, dtype=np.float32)
    bias = np.zeros(256, dtype=np.float32)
    logits = rng.normal((64 * 30, 40)).astype(np.float32)
    targets = rng.integers(0, 40, (64 * 30,))
    mask = np.ones(64 * 30, dtype=bool)
    scale = np.full(64 * 30, 1e-3, dtype=np.float32)
    param = rng.normal((4_000_000,)).astype(np.float32)
    grad = rng.normal(param.shape).astype(np.float32)
    m = np.zeros_like(param)
    v = np.zeros_like(param)
    ids = rng.integers(0, 40, (64 * 30,))
    emb_g = rng.normal((64 * 30, 256)).astype(np.float32)
    table = np.zeros((40, 256), dtype=np.float32)
    fp_a = Rng(1)._raw(500 * 16).reshape(500, 16)
    fp_b = Rng(2)._raw(500 * 16).reshape(500, 16)

    softmax_out = numpy_impl.softmax_fwd(x)
    ln_out = numpy_impl.layernorm_fwd(ln_x, gain, bias, 1e-5)

    return [
        ("softmax_fwd (15k x 30)", lambda mod: mod.softmax_fwd(x)),
        ("softmax_bwd", lambda mod: mod.softmax_bwd(softmax_out, g)),
        ("layernorm_fwd (1.9k x 256)", lambda mod: mod.layernorm_fwd(ln_x, gain, bias, 1e-5)),
        ("layernorm_bwd", lambda mod: mod.layernorm_bwd(ln_out[1], ln_out[2], gain,
                                                        np.ascontiguousarray(ln_x))),
        ("cross_entropy_fwd (1.9k x 40)", lambda mod: mod.cross_entropy_fwd(logits, targets, mask)),
        ("cross_entropy_bwd", lambda mod: mod.cross_entropy_bwd(logits, targets, mask, scale)),
        ("adam_update (4M params)", lambda mod: mod.adam_update(param, grad, m, v,
                                                                3e-4, 0.9, 0.999, 1e-8, 5)),
        ("embedding_grad (1.9k x 256)", lambda mod: mod.embedding_grad(ids, emb_g, table)),
        ("tanimoto_matrix (500 x 500)", lambda mod: mod.tanimoto_matrix(fp_a, fp_b)),
    ]


def bench_kernels(repeat: int):
    print(f"{'kernel':34s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, call in kernel_cases():
        t_np = _time(lambda: call(numpy_impl), repeat)
        t_nb = _time(lambda: call(numba_impl), repeat)
        print(f"{name:34s} {t_np:10.3f} {t_nb:10.3f} {t_np / t_nb:7.2f}x")


def bench_training_step(repeat: int):
    from molforge.model import ModelConfig, as_tensors, forward, nll
    from molforge import tensor as T
    from molforge.tensor import AdamState, adam_step

    cfg = ModelConfig(vocab_size=40, n_conditions=4, max_len=40)
    from molforge.model import init_params
    params = init_params(cfg, seed=0)
    rng = Rng(5)
    ids = rng.integers(0, 40, (64, 30))
    cond = np.zeros(64, dtype=np.int64)
    targets = np.roll(ids, -1, axis=1)
    mask = np.ones_like(targets, dtype=bool)
    state = AdamState(params, lr=3e-4)

    def step():
        pt = as_tensors(params, True)
        loss = nll(forward(pt, cfg, ids, cond), targets, mask)
        T.backward(loss)
        grads = {k: t.grad for k, t in pt.items() if t.grad is not None}
        adam_step(params, grads, state)

    print(f"\n{'full training step (default config, batch 64 x 30)':54s}")
    for backend in ("numpy", "numba"):
        kernels.use(backend)
        ms = _time(step, max(3, repeat // 4))
        print(f"  backend={backend:6s} {ms:10.1f} ms/step")
    kernels.use("auto")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    print(f"active backend by default: {kernels.active()}")
    bench_kernels(args.repeat)
    bench_training_step(args.repeat)


if __name__ == "__main__":
    main()
