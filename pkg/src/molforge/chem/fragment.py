"""Fragment decomposition with a simplified, documented cut rule.

Cuts every acyclic single (non-aromatic) bond between two heavy atoms where
at least one endpoint is in a ring or is a heteroatom. Every resulting
component gets a '*' attachment marker at each cut site and is emitted as a
canonical fragment string. This is a surrogate for retrosynthetic
fragmentation schemes: same kind of distributional signal, different
fragment dictionary.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import replace

from ..errors import InvalidInput
from .canonical import canonicalize, prepare_full
from .graph import AROMATIC, Atom, Bond, MolGraph
from .kekulize import validate


def _is_hetero(atom: Atom) -> bool:
    return atom.element not in ("C", "H", "*")


def _qualifies(mol: MolGraph, bond: Bond) -> bool:
    if bond.order != 1 or bond.in_ring:
        return False
    a, b = mol.atoms[bond.a], mol.atoms[bond.b]
    if a.element == "H" or b.element == "H":
        return False
    return a.in_ring or b.in_ring or _is_hetero(a) or _is_hetero(b)


def fragment(mol: MolGraph) -> Counter:
    """Multiset of canonical fragment strings for a valid molecule."""
    verdict = validate(mol)
    if not verdict:
        raise InvalidInput(f"molecule is not valid: {verdict.reason}")
    full = prepare_full(mol)
    cut = [bi for bi, bond in enumerate(full.bonds) if _qualifies(full, bond)]
    if not cut:
        return Counter([canonicalize(full)])

    cut_set = set(cut)
    # connected components of the graph minus the cut bonds
    comp_of = [-1] * len(full.atoms)
    comp_count = 0
    for start in range(len(full.atoms)):
        if comp_of[start] != -1:
            continue
        stack = [start]
        comp_of[start] = comp_count
        while stack:
            u = stack.pop()
            for v, bi in full.adjacency()[u]:
                if bi in cut_set or comp_of[v] != -1:
                    continue
                comp_of[v] = comp_count
                stack.append(v)
        comp_count += 1

    pieces: list[MolGraph] = []
    for comp in range(comp_count):
        atom_ids = [i for i, c in enumerate(comp_of) if c == comp]
        remap = {old: new for new, old in enumerate(atom_ids)}
        atoms = [replace(full.atoms[i]) for i in atom_ids]
        bonds = []
        for bond in full.bonds:
            if comp_of[bond.a] == comp and comp_of[bond.b] == comp:
                bonds.append(replace(bond, a=remap[bond.a], b=remap[bond.b]))
        for bi in cut:
            bond = full.bonds[bi]
            for end in (bond.a, bond.b):
                if comp_of[end] == comp:
                    atoms.append(Atom(element="*", hydrogens=0))
                    bonds.append(Bond(a=remap[end], b=len(atoms) - 1, order=1))
        pieces.append(MolGraph(atoms=atoms, bonds=bonds))
    return Counter(canonicalize(piece) for piece in pieces)
