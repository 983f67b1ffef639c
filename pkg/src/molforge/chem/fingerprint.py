"""Circular (ECFP-style) fingerprints and Tanimoto similarity.

Atom identifiers start from the invariant tuple (element, degree, charge,
hydrogen count, ring flag, aromatic flag) and are grown for `radius` rounds
by hashing the atom's previous identifier with its sorted (bond class,
neighbor identifier) pairs. Every identifier from every round sets a bit.

The hash is 64-bit FNV-1a over a fixed byte serialization (documented in
_fnv/_pack below), so fingerprints are bit-identical across platforms.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import InvalidInput, WidthMismatch
from .canonical import prepare_full
from .graph import AROMATIC, MolGraph
from .kekulize import validate

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = 0xFFFFFFFFFFFFFFFF


def _fnv(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK
    return h


def _pack_initial(element: str, degree: int, charge: int, hydrogens: int,
                  in_ring: bool, aromatic: bool) -> bytes:
    return b"atom:" + element.encode() + struct.pack(
        "<iiiii", degree, charge, hydrogens, int(in_ring), int(aromatic))


def _pack_round(round_no: int, center: int, pairs: list[tuple[int, int]]) -> bytes:
    out = [b"iter:", struct.pack("<iQ", round_no, center)]
    for bclass, nbr in pairs:
        out.append(struct.pack("<iQ", bclass, nbr))
    return b"".join(out)


@dataclass(frozen=True)
class Fingerprint:
    packed: np.ndarray  # uint64 words, bit i lives in word i//64 at bit i%64
    width: int
    radius: int

    def popcount(self) -> int:
        return int(np.bitwise_count(self.packed).sum())

    def bits(self) -> np.ndarray:
        out = np.zeros(self.width, dtype=np.uint8)
        idx = np.nonzero(self.packed)[0]
        for w in idx:
            word = int(self.packed[w])
            for b in range(64):
                if word >> b & 1:
                    out[w * 64 + b] = 1
        return out

    def to_hex(self) -> str:
        """Lowercase hex, most-significant byte first."""
        value = 0
        for w in range(len(self.packed) - 1, -1, -1):
            value = (value << 64) | int(self.packed[w])
        return format(value, f"0{self.width // 4}x")


def fingerprint(mol: MolGraph, radius: int = 2, width: int = 1024) -> Fingerprint:
    """Circular fingerprint of a valid molecule; width must be a power of two."""
    if width < 64 or width & (width - 1):
        raise InvalidInput(f"width {width} is not a power of two >= 64")
    if radius < 0:
        raise InvalidInput("radius must be >= 0")
    verdict = validate(mol)
    if not verdict:
        raise InvalidInput(f"molecule is not valid: {verdict.reason}")
    full = prepare_full(mol)
    adj = full.adjacency()
    ids = [
        _fnv(_pack_initial(a.element, len(adj[i]), a.charge, a.hydrogens,
                           a.in_ring, a.aromatic))
        for i, a in enumerate(full.atoms)
    ]
    packed = np.zeros(width // 64, dtype=np.uint64)

    def set_bit(identifier: int):
        bit = identifier % width
        packed[bit // 64] |= np.uint64(1) << np.uint64(bit % 64)

    for i in ids:
        set_bit(i)
    for round_no in range(1, radius + 1):
        nxt = []
        for i in range(len(full.atoms)):
            pairs = sorted(
                (full.bonds[bi].order if full.bonds[bi].order != AROMATIC else AROMATIC,
                 ids[j])
                for j, bi in adj[i]
            )
            nxt.append(_fnv(_pack_round(round_no, ids[i], pairs)))
        ids = nxt
        for i in ids:
            set_bit(i)
    return Fingerprint(packed=packed, width=width, radius=radius)


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    """|a & b| / |a | b|; 1.0 when both fingerprints are empty."""
    if a.width != b.width:
        raise WidthMismatch(f"fingerprint widths differ: {a.width} vs {b.width}")
    inter = int(np.bitwise_count(a.packed & b.packed).sum())
    union = a.popcount() + b.popcount() - inter
    return inter / union if union else 1.0


def pack_rows(fps: list[Fingerprint]) -> np.ndarray:
    """Stack fingerprints into one (n, words) uint64 matrix for bulk work."""
    if not fps:
        return np.zeros((0, 0), dtype=np.uint64)
    width = fps[0].width
    for fp in fps:
        if fp.width != width:
            raise WidthMismatch("mixed widths in fingerprint batch")
    return np.stack([fp.packed for fp in fps])


def tanimoto_matrix(a: list[Fingerprint], b: list[Fingerprint]) -> np.ndarray:
    """(len(a), len(b)) pairwise similarity via the active kernel backend."""
    return kernels.tanimoto_matrix(pack_rows(a), pack_rows(b))
