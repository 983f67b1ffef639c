"""Generation-quality metrics over sets of SMILES strings.

Every metric except validity itself is computed on the valid subset only.
The fragment metric uses this package's surrogate cut rule and is labeled
"frag (surrogate)" in reports so it is never confused with numbers from
licensed retrosynthetic fragmentations.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import chem
from .errors import EmptyInput, EmptyReference, SmilesError, InvalidInput

PROPERTIES = ("mol_weight", "heavy_atoms", "rings", "aromatic_fraction",
              "hetero_fraction")


def validity(gen: list[str]) -> tuple[float, list[str]]:
    """(fraction valid, canonical strings of the valid entries in order)."""
    valid: list[str] = []
    for text in gen:
        try:
            mol = chem.parse(text)
            if chem.validate(mol):
                valid.append(chem.canonicalize(mol))
        except (SmilesError, InvalidInput):
            continue
    return (len(valid) / len(gen) if gen else 0.0), valid


def unique_at(valid_canonical: list[str], k: int) -> float:
    """Distinct canonical strings among the first k, over min(k, len)."""
    head = valid_canonical[:k]
    if not head:
        return 0.0
    return len(set(head)) / len(head)


def novelty(valid_canonical: list[str], train_canonical: set[str]) -> float:
    """Fraction of distinct valid canonicals absent from the training set."""
    distinct = set(valid_canonical)
    if not distinct:
        return 0.0
    return sum(s not in train_canonical for s in distinct) / len(distinct)


def snn(gen_fps: list[chem.Fingerprint], ref_fps: list[chem.Fingerprint],
        threads: int = 1) -> float:
    """Mean over generated fingerprints of the nearest-reference Tanimoto."""
    if not ref_fps:
        raise EmptyReference("SNN needs a non-empty reference set")
    if not gen_fps:
        raise EmptyInput("SNN needs a non-empty generated set")
    a = chem.pack_rows(gen_fps)
    b = chem.pack_rows(ref_fps)
    from . import kernels

    def rows(chunk):
        return kernels.tanimoto_matrix(a[chunk[0]:chunk[1]], b).max(axis=1)

    chunks = _row_chunks(len(gen_fps), threads)
    if len(chunks) == 1:
        maxima = rows(chunks[0])
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            maxima = np.concatenate(list(pool.map(rows, chunks)))
    return float(maxima.sum() / len(gen_fps))


def _row_chunks(n: int, threads: int) -> list[tuple[int, int]]:
    threads = max(1, min(threads, n))
    step = (n + threads - 1) // threads
    return [(i, min(i + step, n)) for i in range(0, n, step)]


def frag_similarity(gen_mols: list[chem.MolGraph], ref_mols: list[chem.MolGraph]) -> float:
    """Cosine similarity of fragment-frequency vectors (surrogate rule)."""
    if not gen_mols or not ref_mols:
        raise EmptyInput("fragment similarity needs two non-empty sets")
    gen_counts: Counter = Counter()
    ref_counts: Counter = Counter()
    for m in gen_mols:
        gen_counts.update(chem.fragment(m))
    for m in ref_mols:
        ref_counts.update(chem.fragment(m))
    keys = sorted(set(gen_counts) | set(ref_counts))
    g = np.array([gen_counts.get(k, 0) for k in keys], dtype=np.float64)
    r = np.array([ref_counts.get(k, 0) for k in keys], dtype=np.float64)
    denom = math.sqrt(float(g @ g)) * math.sqrt(float(r @ r))
    return float(g @ r / denom) if denom else 0.0


def wasserstein1(a, b) -> float:
    """1-d W1 between empirical distributions via the CDF-difference integral.

    For equal sizes this equals mean |a_sorted - b_sorted|."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise EmptyInput("wasserstein1 needs non-empty samples")
    grid = np.concatenate([a, b])
    grid.sort()
    deltas = np.diff(grid)
    cdf_a = np.searchsorted(a, grid[:-1], side="right") / a.size
    cdf_b = np.searchsorted(b, grid[:-1], side="right") / b.size
    return float(np.sum(np.abs(cdf_a - cdf_b) * deltas))


@dataclass
class EvalReport:
    n_generated: int
    n_valid: int
    valid: float
    unique_at_1k: float
    unique_at_10k: float
    novelty: float
    snn: float
    frag_surrogate: float
    property_w1: dict[str, float] = field(default_factory=dict)
    histograms: dict[str, dict[str, list]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n_generated": self.n_generated,
            "n_valid": self.n_valid,
            "valid": self.valid,
            "unique_at_1k": self.unique_at_1k,
            "unique_at_10k": self.unique_at_10k,
            "novelty": self.novelty,
            "snn": self.snn,
            "frag (surrogate)": self.frag_surrogate,
            "property_w1": self.property_w1,
            "histograms": self.histograms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        return cls(
            n_generated=d["n_generated"], n_valid=d["n_valid"], valid=d["valid"],
            unique_at_1k=d["unique_at_1k"], unique_at_10k=d["unique_at_10k"],
            novelty=d["novelty"], snn=d["snn"], frag_surrogate=d["frag (surrogate)"],
            property_w1=d["property_w1"], histograms=d["histograms"],
        )


def _descriptor_table(mols: list[chem.MolGraph]) -> dict[str, np.ndarray]:
    rows = [chem.simple_descriptors(m) for m in mols]
    return {p: np.array([getattr(r, p) for r in rows], dtype=np.float64)
            for p in PROPERTIES}


def _histogram(gen_vals: np.ndarray, ref_vals: np.ndarray, bins: int = 40) -> dict:
    lo = float(min(gen_vals.min(), ref_vals.min()))
    hi = float(max(gen_vals.max(), ref_vals.max()))
    if hi <= lo:
        hi = lo + 1.0
    edges = np.linspace(lo, hi, bins + 1)
    count_gen, _ = np.histogram(gen_vals, bins=edges)
    count_ref, _ = np.histogram(ref_vals, bins=edges)
    return {
        "bin_left": [float(x) for x in edges[:-1]],
        "bin_right": [float(x) for x in edges[1:]],
        "count_gen": [int(x) for x in count_gen],
        "count_ref": [int(x) for x in count_ref],
    }


def full_report(gen: list[str], train_ref: list[str], test_ref: list[str],
                fp_radius: int = 2, fp_width: int = 1024,
                threads: int = 1) -> EvalReport:
    """All metrics of the suite; deterministic for fixed inputs."""
    frac, valid_canon = validity(gen)
    _, train_canon = validity(train_ref)
    _, test_canon = validity(test_ref)
    if not test_canon:
        raise EmptyReference("test reference has no valid molecules")

    report = EvalReport(
        n_generated=len(gen),
        n_valid=len(valid_canon),
        valid=frac,
        unique_at_1k=unique_at(valid_canon, 1000),
        unique_at_10k=unique_at(valid_canon, 10000),
        novelty=novelty(valid_canon, set(train_canon)),
        snn=0.0,
        frag_surrogate=0.0,
    )
    if valid_canon:
        gen_mols = [chem.parse(s) for s in valid_canon]
        test_mols = [chem.parse(s) for s in test_canon]
        gen_fps = [chem.fingerprint(m, fp_radius, fp_width) for m in gen_mols]
        test_fps = [chem.fingerprint(m, fp_radius, fp_width) for m in test_mols]
        report.snn = snn(gen_fps, test_fps, threads=threads)
        report.frag_surrogate = frag_similarity(gen_mols, test_mols)
        gen_desc = _descriptor_table(gen_mols)
        test_desc = _descriptor_table(test_mols)
        for prop in PROPERTIES:
            report.property_w1[prop] = wasserstein1(gen_desc[prop], test_desc[prop])
            report.histograms[prop] = _histogram(gen_desc[prop], test_desc[prop])
    return report


def write_histograms_csv(report: EvalReport, directory: str) -> list[str]:
    """One CSV per property: bin_left,bin_right,count_gen,count_ref."""
    import os
    os.makedirs(directory, exist_ok=True)
    written = []
    for prop, hist in report.histograms.items():
        path = os.path.join(directory, f"hist_{prop}.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["bin_left", "bin_right", "count_gen", "count_ref"])
            for row in zip(hist["bin_left"], hist["bin_right"],
                           hist["count_gen"], hist["count_ref"]):
                writer.writerow(row)
        written.append(path)
    return written


def fp_export(smiles: list[str], labels: list[str], path: str,
              radius: int = 3, width: int = 1024) -> int:
    """CSV rows: canonical smiles, label, then `width` 0/1 columns.

    Radius 3 approximates diameter-6 circular fingerprints; functional-class
    atom invariants are not implemented (documented divergence). Returns the
    number of rows written; invalid molecules raise InvalidInput.
    """
    if len(smiles) != len(labels):
        raise EmptyInput("smiles and labels must align")
    n = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for text, label in zip(smiles, labels):
            mol = chem.parse(text)
            fp = chem.fingerprint(mol, radius, width)
            writer.writerow([chem.canonicalize(mol), label] + fp.bits().tolist())
            n += 1
    return n
