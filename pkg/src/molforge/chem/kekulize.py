"""Kekulization, implicit-hydrogen resolution, and validity checking.

prepare() turns a raw parsed graph into one with ring flags, a Kekule
assignment for every aromatic bond, and resolved hydrogen counts; validate()
wraps it into a verdict instead of an exception.

Aromatic model (documented limitations included):

* an atom is aromatic iff written lowercase;
* aromatic bonds outside any cycle of aromatic bonds are demoted to single
  (so "c1ccccc1c1ccccc1" works without an explicit dash), but an aromatic
  atom left with no aromatic ring bonds is rejected ("cc" fails);
* every smallest aromatic ring must carry 4n+2 pi electrons, counted
  atom-locally (1 per atom that takes a ring double bond, 2 for a lone-pair
  donor, 0 for carbons holding an exocyclic double bond). This rejects
  anti-aromatics like "c1ccc1"; borderline fused systems such as azulene are
  rejected too, which is accepted as out of model;
* the double-bond placement itself is a perfect matching over the atoms
  that need one, found by backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NoKekuleAssignment
from .elements import MAX_LENIENT_DEGREE, ORGANIC_SUBSET, allowed_valences
from .graph import AROMATIC, MolGraph, find_bridges, shortest_cycle_through


@dataclass(frozen=True)
class ValidityVerdict:
    valid: bool
    atom_index: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def _sigma_and_exo(mol: MolGraph, idx: int) -> tuple[int, int]:
    """(count of sigma connections, highest non-aromatic bond order)."""
    sigma = 0
    exo_max = 0
    for _, bi in mol.adjacency()[idx]:
        bond = mol.bonds[bi]
        if bond.order == AROMATIC:
            sigma += 1
        else:
            sigma += bond.order
            exo_max = max(exo_max, bond.order)
    return sigma, exo_max


def _need_and_pi(mol: MolGraph, idx: int) -> tuple[int, int]:
    """How many ring double bonds this aromatic atom must take (0 or 1)
    and its pi-electron contribution; raises on impossible counts."""
    atom = mol.atoms[idx]
    sigma, exo_max = _sigma_and_exo(mol, idx)
    el = atom.element

    if atom.in_bracket:
        have = sigma + (atom.explicit_h or 0)
        allowed = allowed_valences(el, atom.charge)
        if allowed is None:
            # lenient atoms never take a ring double bond; assume lone pair
            return 0, 2
        fits = [v for v in allowed if 0 <= v - have <= 1]
        if not fits:
            raise NoKekuleAssignment(
                f"aromatic atom {idx} ({el}) cannot reach a valence in {allowed}",
                atom.offset)
        need = fits[0] - have
        if need == 1:
            return 1, 1
        return 0, 0 if el in ("B", "C") and exo_max >= 2 else 2

    if el == "C":
        if exo_max >= 2:
            return 0, 0
        if sigma > 3:
            raise NoKekuleAssignment(f"aromatic carbon {idx} is over-connected",
                                     atom.offset)
        return 1, 1
    if el in ("N", "P"):
        if sigma == 2:
            return 1, 1
        if sigma == 3:
            return 0, 2
        raise NoKekuleAssignment(f"aromatic {el} at atom {idx} has {sigma} connections",
                                 atom.offset)
    if el in ("O", "S"):
        if sigma != 2:
            raise NoKekuleAssignment(f"aromatic {el} at atom {idx} has {sigma} connections",
                                     atom.offset)
        return 0, 2
    if el == "B":
        return 0, 0
    raise NoKekuleAssignment(f"element {el} cannot be aromatic", atom.offset)


def _match_doubles(nodes: list[int], edges: dict[int, list[tuple[int, int]]]) -> dict[int, int] | None:
    """Perfect matching over nodes using the given (neighbor, bond) edges;
    returns atom -> bond index, or None. Plain backtracking, molecules are
    small."""
    match: dict[int, int] = {}
    order = sorted(nodes, key=lambda u: len(edges[u]))

    def rec(i: int) -> bool:
        while i < len(order) and order[i] in match:
            i += 1
        if i == len(order):
            return True
        u = order[i]
        for v, bi in edges[u]:
            if v not in match:
                match[u] = bi
                match[v] = bi
                if rec(i + 1):
                    return True
                del match[u], match[v]
        return False

    return match if rec(0) else None


def kekulize(mol: MolGraph) -> MolGraph:
    """Return a copy with ring flags, Kekule orders, and hydrogens resolved.

    Raises NoKekuleAssignment when the aromatic system admits no alternating
    assignment under the rules in the module docstring.
    """
    out = mol.copy()
    bridges = find_bridges(out)
    for bi, bond in enumerate(out.bonds):
        bond.in_ring = bi not in bridges
    for atom_idx, atom in enumerate(out.atoms):
        atom.in_ring = any(out.bonds[bi].in_ring for _, bi in out.adjacency()[atom_idx])

    for bi, bond in enumerate(out.bonds):
        if bond.order == AROMATIC:
            for end in (bond.a, bond.b):
                if not out.atoms[end].aromatic:
                    raise NoKekuleAssignment(
                        f"aromatic bond touches non-aromatic atom {end}",
                        out.atoms[end].offset)

    # demote acyclic aromatic bonds (biphenyl written without the dash)
    for bond in out.bonds:
        if bond.order == AROMATIC and not bond.in_ring:
            bond.order = 1

    aro_bonds = {bi for bi, b in enumerate(out.bonds) if b.order == AROMATIC}

    aro_atoms = [i for i, a in enumerate(out.atoms) if a.aromatic]
    for idx in aro_atoms:
        if not any(bi in aro_bonds for _, bi in out.adjacency()[idx]):
            raise NoKekuleAssignment(
                f"aromatic atom {idx} is not in an aromatic ring",
                out.atoms[idx].offset)

    needs: dict[int, int] = {}
    pis: dict[int, int] = {}
    for idx in aro_atoms:
        needs[idx], pis[idx] = _need_and_pi(out, idx)

    # Hueckel screen on the smallest ring through every aromatic bond
    seen_rings: set[frozenset[int]] = set()
    for bi in aro_bonds:
        cycle = shortest_cycle_through(out, bi, aro_bonds)
        if cycle is None:
            raise NoKekuleAssignment(f"aromatic bond {bi} lies in no aromatic ring",
                                     out.atoms[out.bonds[bi].a].offset)
        key = frozenset(cycle)
        if key in seen_rings:
            continue
        seen_rings.add(key)
        members: set[int] = set()
        for cb in cycle:
            members.add(out.bonds[cb].a)
            members.add(out.bonds[cb].b)
        pi = sum(pis[m] for m in members)
        if pi % 4 != 2:
            raise NoKekuleAssignment(
                f"aromatic ring {sorted(members)} carries {pi} pi electrons "
                f"(anti-aromatic under the 4n+2 rule)",
                out.atoms[min(members)].offset)

    need_atoms = [i for i in aro_atoms if needs[i] == 1]
    edges: dict[int, list[tuple[int, int]]] = {i: [] for i in need_atoms}
    for bi in aro_bonds:
        bond = out.bonds[bi]
        if needs.get(bond.a) == 1 and needs.get(bond.b) == 1:
            edges[bond.a].append((bond.b, bi))
            edges[bond.b].append((bond.a, bi))
    match = _match_doubles(need_atoms, edges)
    if match is None:
        raise NoKekuleAssignment("no alternating single/double assignment exists",
                                 out.atoms[need_atoms[0]].offset if need_atoms else -1)
    double_bonds = set(match.values())
    for bi in aro_bonds:
        out.bonds[bi].kekule = 2 if bi in double_bonds else 1

    _resolve_hydrogens(out)
    out.prepared = True
    return out


def _resolve_hydrogens(mol: MolGraph) -> None:
    for idx, atom in enumerate(mol.atoms):
        if atom.in_bracket:
            atom.hydrogens = atom.explicit_h or 0
            continue
        if atom.element == "*":
            atom.hydrogens = 0
            continue
        total = mol.bond_sum(idx)
        allowed = allowed_valences(atom.element, atom.charge)
        if allowed is None:
            atom.hydrogens = 0
            continue
        fits = [v for v in allowed if v >= total]
        atom.hydrogens = (fits[0] - total) if fits else 0


def prepare(mol: MolGraph) -> MolGraph:
    """kekulize() unless already prepared."""
    return mol if mol.prepared else kekulize(mol)


def validate(mol: MolGraph) -> ValidityVerdict:
    """Valence verdict; kekulization failures yield an invalid verdict."""
    try:
        prepared = prepare(mol)
    except NoKekuleAssignment as exc:
        return ValidityVerdict(False, None, f"kekulization failed: {exc}")
    for idx, atom in enumerate(prepared.atoms):
        if atom.element == "*":
            continue
        total = prepared.bond_sum(idx) + max(atom.hydrogens, 0)
        allowed = allowed_valences(atom.element, atom.charge)
        if allowed is None:
            degree = prepared.bond_sum(idx)
            if degree > MAX_LENIENT_DEGREE:
                return ValidityVerdict(False, idx,
                                       f"{atom.element} with degree {degree} > {MAX_LENIENT_DEGREE}")
            continue
        if total not in allowed:
            charge_note = f" (charge {atom.charge:+d})" if atom.charge else ""
            return ValidityVerdict(False, idx,
                                   f"{atom.element}{charge_note} valence {total} not in {allowed}")
    return ValidityVerdict(True)
