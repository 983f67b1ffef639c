"""Backend equivalence: numba kernels agree with the pure-numpy fallback."""

import numpy as np
import pytest

from molforge import kernels
from molforge.kernels import numba_impl, numpy_impl
from molforge.rng import Rng


@pytest.fixture(params=[np.float32, np.float64], ids=["f32", "f64"])
def dtype(request):
    return request.param


def _tol(dtype):
    return 1e-5 if dtype == np.float32 else 1e-11


def test_backend_switch_roundtrip():
    original = kernels.active()
    try:
        assert kernels.use("numpy") == "numpy"
        assert kernels.active() == "numpy"
        assert kernels.use("auto") in ("numba", "numpy")
    finally:
        kernels.use(original)


def test_softmax_matches(dtype):
    x = Rng(1).normal((64, 33)).astype(dtype) * 3
    a = numpy_impl.softmax_fwd(x)
    b = numba_impl.softmax_fwd(x)
    np.testing.assert_allclose(a, b, rtol=_tol(dtype), atol=_tol(dtype))
    g = Rng(2).normal(x.shape).astype(dtype)
    np.testing.assert_allclose(numpy_impl.softmax_bwd(a, g),
                               numba_impl.softmax_bwd(a, g),
                               rtol=_tol(dtype), atol=_tol(dtype))


def test_layernorm_matches(dtype):
    x = Rng(3).normal((40, 17)).astype(dtype)
    gain = Rng(4).normal((17,)).astype(dtype)
    bias = Rng(5).normal((17,)).astype(dtype)
    ya, na, ra = numpy_impl.layernorm_fwd(x, gain, bias, 1e-5)
    yb, nb, rb = numba_impl.layernorm_fwd(x, gain, bias, 1e-5)
    np.testing.assert_allclose(ya, yb, rtol=_tol(dtype), atol=_tol(dtype))
    g = Rng(6).normal(x.shape).astype(dtype)
    da = numpy_impl.layernorm_bwd(na, ra, gain, g)
    db = numba_impl.layernorm_bwd(nb, rb, gain, g)
    for u, v in zip(da, db):
        np.testing.assert_allclose(u, v, rtol=10 * _tol(dtype), atol=10 * _tol(dtype))


def test_cross_entropy_matches(dtype):
    logits = Rng(7).normal((50, 21)).astype(dtype) * 2
    targets = Rng(8).integers(0, 21, (50,))
    mask = (Rng(9).uniform((50,)) > 0.2)
    a = numpy_impl.cross_entropy_fwd(logits, targets, mask)
    b = numba_impl.cross_entropy_fwd(logits, targets, mask)
    np.testing.assert_allclose(a, b, rtol=_tol(dtype), atol=_tol(dtype))
    scale = np.full(50, 0.02, dtype=dtype)
    da = numpy_impl.cross_entropy_bwd(logits, targets, mask, scale)
    db = numba_impl.cross_entropy_bwd(logits, targets, mask, scale)
    np.testing.assert_allclose(da, db, rtol=10 * _tol(dtype), atol=10 * _tol(dtype))


def test_adam_matches(dtype):
    p1 = Rng(10).normal((300,)).astype(dtype)
    p2 = p1.copy()
    g = Rng(11).normal((300,)).astype(dtype)
    m1 = np.zeros_like(p1); v1 = np.zeros_like(p1)
    m2 = np.zeros_like(p2); v2 = np.zeros_like(p2)
    for t in range(1, 4):
        numpy_impl.adam_update(p1, g, m1, v1, 1e-3, 0.9, 0.999, 1e-8, t)
        numba_impl.adam_update(p2, g, m2, v2, 1e-3, 0.9, 0.999, 1e-8, t)
    np.testing.assert_allclose(p1, p2, rtol=10 * _tol(dtype), atol=10 * _tol(dtype))


def test_embedding_grad_matches(dtype):
    ids = Rng(12).integers(0, 11, (70,))
    g = Rng(13).normal((70, 5)).astype(dtype)
    t1 = np.zeros((11, 5), dtype=dtype)
    t2 = np.zeros((11, 5), dtype=dtype)
    numpy_impl.embedding_grad(ids, g, t1)
    numba_impl.embedding_grad(ids, g, t2)
    np.testing.assert_allclose(t1, t2, rtol=10 * _tol(dtype), atol=10 * _tol(dtype))


def test_tanimoto_matrix_matches_exactly():
    raw = Rng(14)._raw(12 * 16).reshape(12, 16)
    a, b = raw[:7], raw[7:]
    np.testing.assert_array_equal(numpy_impl.tanimoto_matrix(a, b),
                                  numba_impl.tanimoto_matrix(a, b))


def test_each_backend_is_run_to_run_deterministic():
    x = Rng(15).normal((30, 9)).astype(np.float32)
    for mod in (numpy_impl, numba_impl):
        assert np.array_equal(mod.softmax_fwd(x), mod.softmax_fwd(x))
