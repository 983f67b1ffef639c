"""Canonical SMILES: invariant refinement, atom ranking, and emission.

Ranking is iterative neighborhood refinement over (element, aromaticity,
charge, isotope, hydrogen count, degree, ring flag), with remaining ties
broken deterministically (lowest current rank, then lowest input index).
Tied atoms that survive refinement are almost always automorphic in
drug-like graphs, so the emitted string does not depend on the input
ordering; pathological regular graphs are out of scope.

The writer emits aromatic atoms lowercase, never emits Kekule orders inside
aromatic rings, writes '-' for a true single bond between two aromatic
atoms, and drops stereo annotations (documented non-goal). Disconnected
components are canonicalized separately and joined with '.' in sorted
order.
"""

from __future__ import annotations

from ..errors import InvalidInput
from ..rng import Rng
from .elements import AROMATIC_OK, ORGANIC_SUBSET, allowed_valences
from .graph import AROMATIC, MolGraph, shortest_cycle_through
from .kekulize import prepare, validate


def perceive_aromatic(mol: MolGraph) -> MolGraph:
    """Upgrade 6-membered alternating C/N Kekule rings to aromatic form.

    This makes "C1=CC=CC=C1" and "c1ccccc1" canonicalize identically; it is
    deliberately no wider than that (no general Hueckel perception).
    """
    out = mol.copy()
    candidates = {
        bi for bi, b in enumerate(out.bonds)
        if b.in_ring and b.order in (1, 2)
        and all(out.atoms[e].element in ("C", "N") and not out.atoms[e].aromatic
                for e in (b.a, b.b))
    }
    to_mark: set[int] = set()
    for bi in sorted(candidates):
        if bi in to_mark:
            continue
        cycle = shortest_cycle_through(out, bi, candidates)
        if cycle is None or len(cycle) != 6:
            continue
        orders = [out.bonds[cb].order for cb in cycle]
        if sorted(orders) != [1, 1, 1, 2, 2, 2]:
            continue
        if any(orders[i] == orders[(i + 1) % 6] for i in range(6)):
            continue
        to_mark.update(cycle)
    for bi in to_mark:
        bond = out.bonds[bi]
        bond.kekule = bond.order
        bond.order = AROMATIC
        out.atoms[bond.a].aromatic = True
        out.atoms[bond.b].aromatic = True
    return out


def prepare_full(mol: MolGraph) -> MolGraph:
    """prepare() plus limited aromatic perception; the pipeline every
    semantic operation (canonicalize, fingerprint, fragment, weight) uses."""
    return perceive_aromatic(prepare(mol))


def _bond_class(order: int) -> int:
    return order  # 1, 2, 3, AROMATIC(4) are already distinct small ints


def _initial_invariants(mol: MolGraph) -> list[tuple]:
    adj = mol.adjacency()
    return [
        (a.element, a.aromatic, a.charge, a.isotope or 0, a.hydrogens,
         len(adj[i]), a.in_ring)
        for i, a in enumerate(mol.atoms)
    ]


def _refine(mol: MolGraph, ranks: list[int]) -> list[int]:
    adj = mol.adjacency()
    n = len(ranks)
    while True:
        sigs = []
        for i in range(n):
            nbr = tuple(sorted((_bond_class(mol.bonds[bi].order), ranks[j])
                               for j, bi in adj[i]))
            sigs.append((ranks[i], nbr))
        order = sorted(range(n), key=lambda i: sigs[i])
        new_ranks = [0] * n
        rank = 0
        for pos, i in enumerate(order):
            if pos and sigs[order[pos - 1]] != sigs[i]:
                rank += 1
            new_ranks[i] = rank
        if len(set(new_ranks)) == len(set(ranks)) and new_ranks == ranks:
            return ranks
        if len(set(new_ranks)) == len(set(ranks)):
            # stable partition under a possibly relabeled numbering
            return new_ranks
        ranks = new_ranks


def canonical_ranks(mol: MolGraph) -> list[int]:
    """Total order over atoms: refinement plus deterministic tie-breaking."""
    inv = _initial_invariants(mol)
    order = sorted(range(len(inv)), key=lambda i: inv[i])
    ranks = [0] * len(inv)
    rank = 0
    for pos, i in enumerate(order):
        if pos and inv[order[pos - 1]] != inv[i]:
            rank += 1
        ranks[i] = rank
    ranks = _refine(mol, ranks)
    n = len(ranks)
    while len(set(ranks)) < n:
        counts: dict[int, list[int]] = {}
        for i, r in enumerate(ranks):
            counts.setdefault(r, []).append(i)
        tied_rank = min(r for r, members in counts.items() if len(members) > 1)
        chosen = min(counts[tied_rank])
        bumped = [2 * r for r in ranks]
        for i in counts[tied_rank]:
            if i != chosen:
                bumped[i] += 1
        ranks = _refine(mol, _dense(bumped))
    return ranks


def _dense(values: list[int]) -> list[int]:
    mapping = {v: i for i, v in enumerate(sorted(set(values)))}
    return [mapping[v] for v in values]


def _bare_hydrogens(mol: MolGraph, idx: int) -> int | None:
    """Hydrogen count a re-parse would assign to the bare atom symbol, or
    None when the element cannot be written bare. Replays the parse-side
    rules: aromatic atoms resolve through the ring-double-bond need, so a
    bare aromatic n is always pyridine-like and pyrrole needs [nH]."""
    atom = mol.atoms[idx]
    el = atom.element
    if el not in ORGANIC_SUBSET:
        return None
    n_arom = 0
    nonarom = 0
    exo_max = 0
    for _, bi in mol.adjacency()[idx]:
        bond = mol.bonds[bi]
        if bond.order == AROMATIC:
            n_arom += 1
        else:
            nonarom += bond.order
            exo_max = max(exo_max, bond.order)
    if atom.aromatic:
        sigma = n_arom + nonarom
        if el == "C":
            need = 0 if exo_max >= 2 else (1 if sigma <= 3 else None)
        elif el in ("N", "P"):
            need = 1 if sigma == 2 else (0 if sigma == 3 else None)
        elif el in ("O", "S"):
            need = 0 if sigma == 2 else None
        elif el == "B":
            need = 0
        else:
            need = None
        if need is None:
            return None
        total = nonarom + n_arom + need
    else:
        total = nonarom
    allowed = allowed_valences(el, 0)
    fits = [v for v in allowed if v >= total]
    return (fits[0] - total) if fits else None


def _atom_text(mol: MolGraph, idx: int) -> str:
    atom = mol.atoms[idx]
    symbol = atom.element.lower() if atom.aromatic else atom.element
    if atom.element == "*":
        return "*"
    needs_bracket = (
        atom.charge != 0
        or atom.isotope is not None
        or atom.element == "H"
        or _bare_hydrogens(mol, idx) != atom.hydrogens
    )
    if not needs_bracket:
        return symbol
    h = ""
    if atom.hydrogens == 1:
        h = "H"
    elif atom.hydrogens > 1:
        h = f"H{atom.hydrogens}"
    if atom.charge == 0:
        q = ""
    elif atom.charge in (1, -1):
        q = "+" if atom.charge == 1 else "-"
    else:
        q = f"{atom.charge:+d}"
    iso = str(atom.isotope) if atom.isotope is not None else ""
    return f"[{iso}{symbol}{h}{q}]"


def _bond_text(mol: MolGraph, bond_idx: int) -> str:
    bond = mol.bonds[bond_idx]
    if bond.order == AROMATIC:
        return ""
    if bond.order == 2:
        return "="
    if bond.order == 3:
        return "#"
    if mol.atoms[bond.a].aromatic and mol.atoms[bond.b].aromatic:
        return "-"  # otherwise a re-parse would read an aromatic bond
    return ""


def _write_component(mol: MolGraph, atoms: list[int], key) -> str:
    """Emit one connected component, visiting neighbors in key() order."""
    adj = mol.adjacency()
    terminals = [a for a in atoms if len(adj[a]) <= 1]
    start = min(terminals, key=key) if terminals else min(atoms, key=key)
    visit_index: dict[int, int] = {}
    children: dict[int, list[tuple[int, int]]] = {a: [] for a in atoms}
    back_edges: list[tuple[int, int, int]] = []  # (opener, closer, bond)
    used: set[int] = set()

    def walk(u: int, parent_bond: int):
        visit_index[u] = len(visit_index)
        for v, bi in sorted(adj[u], key=lambda vb: (key(vb[0]), vb[0])):
            if bi == parent_bond or bi in used:
                continue
            if v in visit_index:
                used.add(bi)
                back_edges.append((v, u, bi))
                continue
            used.add(bi)
            children[u].append((v, bi))
            walk(v, bi)

    walk(start, -1)

    # ring-closure digits in visit order; the 1..99 pool covers any
    # realistic number of simultaneously open rings, %NN past 9
    openings: dict[int, list[tuple[int, int]]] = {}
    closings: dict[int, list[tuple[int, int]]] = {}
    free = list(range(1, 100))
    for opener, closer, bi in sorted(back_edges,
                                     key=lambda e: (visit_index[e[0]], visit_index[e[1]])):
        digit = free.pop(0)
        openings.setdefault(opener, []).append((digit, bi))
        closings.setdefault(closer, []).append((digit, bi))

    def ring_text(u: int) -> str:
        parts = []
        for digit, bi in closings.get(u, []):
            parts.append(_digit_text(digit))
        for digit, bi in openings.get(u, []):
            parts.append(_bond_text(mol, bi) + _digit_text(digit))
        return "".join(parts)

    def emit(u: int) -> str:
        out = [_atom_text(mol, u), ring_text(u)]
        kids = children[u]
        for v, bi in kids[:-1]:
            out.append("(" + _bond_text(mol, bi) + emit(v) + ")")
        if kids:
            v, bi = kids[-1]
            out.append(_bond_text(mol, bi) + emit(v))
        return "".join(out)

    return emit(start)


def _digit_text(digit: int) -> str:
    return str(digit) if digit < 10 else f"%{digit:02d}"


def write_smiles(mol: MolGraph, ranks: list[int]) -> str:
    """Emit SMILES visiting atoms in the given rank order (lowest first)."""
    comps = mol.components()
    texts = sorted(_write_component(mol, comp, key=lambda i: ranks[i])
                   for comp in comps)
    return ".".join(texts)


def canonicalize(mol_or_smiles) -> str:
    """Canonical SMILES of a valid molecule; InvalidInput otherwise."""
    mol = mol_or_smiles
    if isinstance(mol, str):
        from .parser import parse
        mol = parse(mol)
    verdict = validate(mol)
    if not verdict:
        raise InvalidInput(f"molecule is not valid: {verdict.reason}")
    full = prepare_full(mol)
    return write_smiles(full, canonical_ranks(full))


def random_smiles(mol: MolGraph, rng: Rng) -> str:
    """A randomized (non-canonical) rendering of a valid molecule."""
    verdict = validate(mol)
    if not verdict:
        raise InvalidInput(f"molecule is not valid: {verdict.reason}")
    full = prepare_full(mol)
    perm = rng.permutation(len(full.atoms))
    ranks = [int(p) for p in perm]
    return write_smiles(full, ranks)
