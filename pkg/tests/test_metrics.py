"""Metric implementations against independent brute-force oracles."""

import json
from collections import Counter

import numpy as np
import pytest

from molforge import chem, metrics
from molforge.errors import EmptyInput, EmptyReference
from molforge.rng import Rng

MOLS = ["CCO", "CCN", "CCCC", "c1ccccc1", "CC(=O)O", "CCOC", "CN(C)C",
        "c1ccncc1", "CC(C)O", "CCS", "OCCO", "CC(=O)N", "CCCl", "CCBr",
        "c1cc[nH]c1", "CC(C)(C)C", "CCC=O", "C1CCCCC1", "C1CCNCC1", "CC#N"]


def _random_canonical_list(seed, n, pool=MOLS):
    rng = Rng(seed)
    picks = [pool[rng.integers(0, len(pool))] for _ in range(n)]
    return [chem.canonicalize(chem.parse(s)) for s in picks]


def test_validity_example():
    frac, valid = metrics.validity(["CCO", "C1CC", "c1ccccc1"])
    assert abs(frac - 2 / 3) < 1e-12
    assert valid == [chem.canonicalize(chem.parse("CCO")),
                     chem.canonicalize(chem.parse("c1ccccc1"))]
    assert metrics.validity(["CCO", "CCN"])[0] == 1.0


def test_unique_at_canonical_duplicates():
    _, valid = metrics.validity(["CCO", "OCC", "CCN"])
    assert abs(metrics.unique_at(valid, 3) - 2 / 3) < 1e-12
    assert metrics.unique_at(["a", "b", "c"], 3) == 1.0


def test_unique_at_matches_brute_force_set_oracle():
    for seed in range(5):
        vals = _random_canonical_list(seed, 100)
        for k in (10, 50, 100, 1000):
            head = vals[:k]
            brute = len(set(head)) / len(head)
            assert metrics.unique_at(vals, k) == brute


def test_novelty_examples_and_oracle():
    gen = ["a", "b", "c"]
    assert abs(metrics.novelty(gen, {"b"}) - 2 / 3) < 1e-12
    assert metrics.novelty(["a", "b"], {"a", "b", "z"}) == 0.0
    for seed in range(5):
        gen = _random_canonical_list(seed, 100)
        train = set(_random_canonical_list(seed + 50, 60))
        brute = sum(s not in train for s in set(gen)) / len(set(gen))
        assert metrics.novelty(gen, train) == brute


def test_snn_extremes_and_brute_force():
    fps = [chem.fingerprint(chem.parse(s), 2, 512) for s in MOLS]
    assert metrics.snn(fps, fps) == 1.0
    a = [chem.fingerprint(chem.parse("CCO"), 2, 512)]
    b = [chem.fingerprint(chem.parse("c1ccncc1"), 2, 512)]
    assert metrics.snn(a, b) == pytest.approx(chem.tanimoto(a[0], b[0]))

    gen = [fps[i % len(fps)] for i in range(50)]
    ref = [fps[(i * 7 + 3) % len(fps)] for i in range(50)]
    brute = np.mean([max(chem.tanimoto(g, r) for r in ref) for g in gen])
    assert abs(metrics.snn(gen, ref) - brute) < 1e-12
    assert abs(metrics.snn(gen, ref, threads=4) - brute) < 1e-12


def test_snn_empty_reference():
    fp = [chem.fingerprint(chem.parse("CCO"), 2, 512)]
    with pytest.raises(EmptyReference):
        metrics.snn(fp, [])


def test_frag_similarity_extremes():
    gen = [chem.parse(s) for s in ("CCc1ccccc1", "CCO", "CCN")]
    assert metrics.frag_similarity(gen, gen) == pytest.approx(1.0)
    left = [chem.parse("CC")]
    right = [chem.parse("c1ccccc1")]
    assert metrics.frag_similarity(left, right) == 0.0


def test_frag_similarity_hand_cosine():
    gen = [chem.parse("CCO"), chem.parse("CCO"), chem.parse("CCN")]
    ref = [chem.parse("CCO"), chem.parse("CCS")]
    gen_counts, ref_counts = Counter(), Counter()
    for m in gen:
        gen_counts.update(chem.fragment(m))
    for m in ref:
        ref_counts.update(chem.fragment(m))
    keys = sorted(set(gen_counts) | set(ref_counts))
    g = np.array([gen_counts[k] for k in keys], float)
    r = np.array([ref_counts[k] for k in keys], float)
    hand = float(g @ r / (np.linalg.norm(g) * np.linalg.norm(r)))
    assert abs(metrics.frag_similarity(gen, ref) - hand) < 1e-12


def test_wasserstein_basics():
    a = [1.0, 2.0, 3.0]
    assert metrics.wasserstein1(a, a) == 0.0
    assert abs(metrics.wasserstein1(a, [x + 2.5 for x in a]) - 2.5) < 1e-12
    assert abs(metrics.wasserstein1([0.0], [1.0]) - 1.0) < 1e-12


def test_wasserstein_equal_sizes_is_sorted_mean_difference():
    rng = Rng(3)
    a = rng.normal((40,)); b = rng.normal((40,)) * 2 + 1
    direct = float(np.mean(np.abs(np.sort(a) - np.sort(b))))
    assert abs(metrics.wasserstein1(a, b) - direct) < 1e-12


def test_wasserstein_matches_assignment_lp_oracle():
    from scipy.optimize import linear_sum_assignment
    rng = Rng(4)
    for trial in range(5):
        a = rng.normal((10,)) * 3
        b = rng.normal((10,)) + 0.5
        cost = np.abs(a[:, None] - b[None, :])
        rows, cols = linear_sum_assignment(cost)
        oracle = cost[rows, cols].sum() / 10
        assert abs(metrics.wasserstein1(a, b) - oracle) < 1e-9


def test_wasserstein_unequal_sizes_against_scipy():
    from scipy.stats import wasserstein_distance
    rng = Rng(5)
    a = rng.normal((23,)); b = rng.normal((57,)) + 0.3
    assert abs(metrics.wasserstein1(a, b) - wasserstein_distance(a, b)) < 1e-9


def test_wasserstein_triangle_inequality():
    rng = Rng(6)
    for trial in range(10):
        a = rng.normal((15,)); b = rng.normal((20,)); c = rng.normal((11,))
        ab = metrics.wasserstein1(a, b)
        bc = metrics.wasserstein1(b, c)
        ac = metrics.wasserstein1(a, c)
        assert ac <= ab + bc + 1e-12


def test_wasserstein_empty_rejected():
    with pytest.raises(EmptyInput):
        metrics.wasserstein1([], [1.0])


def test_full_report_hand_bookkeeping():
    # 10 strings: 2 invalid, one canonical duplicate pair among the valid 8,
    # 3 of the distinct valid canonicals sit in the training set
    gen = ["CCO", "OCC", "CCN", "CCCC", "c1ccccc1", "CC(=O)O", "CCOC", "CCS",
           "C1CC", "F(C)C"]
    train = ["CCO", "CCN", "CCCC"]
    test = ["CCO", "c1ccncc1", "CC(C)O"]
    report = metrics.full_report(gen, train, test)
    assert report.n_generated == 10
    assert report.n_valid == 8
    assert report.valid == pytest.approx(0.8)
    assert report.unique_at_1k == pytest.approx(7 / 8)
    assert report.novelty == pytest.approx(4 / 7)
    assert 0 < report.snn <= 1
    assert 0 <= report.frag_surrogate <= 1
    assert set(report.property_w1) == set(metrics.PROPERTIES)


def test_full_report_self_reference_is_perfect():
    gen = ["CCO", "CCN", "c1ccccc1", "CC(=O)O"]
    report = metrics.full_report(gen, gen, gen)
    assert report.valid == 1.0
    assert report.snn == 1.0
    assert report.frag_surrogate == pytest.approx(1.0)
    assert all(v == 0.0 for v in report.property_w1.values())
    assert report.novelty == 0.0


def test_report_json_round_trip():
    report = metrics.full_report(["CCO", "CCN"], ["CCO"], ["CCN"])
    data = json.loads(report.to_json())
    assert "frag (surrogate)" in data
    again = metrics.EvalReport.from_dict(data)
    assert again.to_dict() == report.to_dict()


def test_histogram_csv_layout(tmp_path):
    report = metrics.full_report(["CCO", "CCN", "CCCC"], ["CCO"], ["CCO", "CCS"])
    paths = metrics.write_histograms_csv(report, str(tmp_path / "hists"))
    assert len(paths) == len(metrics.PROPERTIES)
    header = open(paths[0]).readline().strip()
    assert header == "bin_left,bin_right,count_gen,count_ref"


def test_fp_export_shape_and_determinism(tmp_path):
    out = tmp_path / "fps.csv"
    n = metrics.fp_export(["CCO", "CCN", "c1ccccc1"], ["a", "a", "b"], str(out))
    assert n == 3
    rows = [line.split(",") for line in out.read_text().splitlines()]
    assert len(rows) == 3
    assert all(len(r) == 1026 for r in rows)
    assert all(bit in ("0", "1") for r in rows for bit in r[2:])
    first = out.read_text()
    metrics.fp_export(["CCO", "CCN", "c1ccccc1"], ["a", "a", "b"], str(out))
    assert out.read_text() == first
