"""Molecular graph types and the small amount of graph theory they need."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace

AROMATIC = 4  # bond orders are 1, 2, 3 or this marker


@dataclass
class Atom:
    element: str
    aromatic: bool = False
    charge: int = 0
    isotope: int | None = None
    explicit_h: int | None = None  # set iff written in brackets
    in_bracket: bool = False
    stereo: str | None = None  # '@', '@@' or bond-direction mark, preserved only
    offset: int = -1  # byte offset in the source text
    # resolved by prepare():
    hydrogens: int = -1
    in_ring: bool = False


@dataclass
class Bond:
    a: int
    b: int
    order: int  # 1, 2, 3 or AROMATIC
    stereo: str | None = None  # '/' or '\\', preserved only
    # resolved by prepare():
    kekule: int = 0  # 1 or 2 for aromatic bonds after kekulization
    in_ring: bool = False

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a

    def effective_order(self) -> int:
        """Order with aromatic bonds resolved to their Kekule assignment."""
        return self.kekule if self.order == AROMATIC else self.order


@dataclass
class MolGraph:
    atoms: list[Atom] = field(default_factory=list)
    bonds: list[Bond] = field(default_factory=list)
    dotted: bool = False  # source contained '.'
    prepared: bool = False  # kekulized, hydrogens resolved, rings flagged

    def __post_init__(self):
        self._adj: list[list[tuple[int, int]]] | None = None

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-atom list of (neighbor index, bond index)."""
        if self._adj is None:
            adj: list[list[tuple[int, int]]] = [[] for _ in self.atoms]
            for bi, bond in enumerate(self.bonds):
                adj[bond.a].append((bond.b, bi))
                adj[bond.b].append((bond.a, bi))
            self._adj = adj
        return self._adj

    def bond_sum(self, idx: int) -> int:
        """Sum of effective bond orders at an atom."""
        return sum(self.bonds[bi].effective_order() for _, bi in self.adjacency()[idx])

    def copy(self) -> "MolGraph":
        return MolGraph(
            atoms=[replace(a) for a in self.atoms],
            bonds=[replace(b) for b in self.bonds],
            dotted=self.dotted,
            prepared=self.prepared,
        )

    def components(self) -> list[list[int]]:
        seen = [False] * len(self.atoms)
        comps = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            comp = []
            queue = deque([start])
            seen[start] = True
            while queue:
                u = queue.popleft()
                comp.append(u)
                for v, _ in self.adjacency()[u]:
                    if not seen[v]:
                        seen[v] = True
                        queue.append(v)
            comps.append(comp)
        return comps

    def ring_count(self) -> int:
        return len(self.bonds) - len(self.atoms) + len(self.components())


def find_bridges(mol: MolGraph) -> set[int]:
    """Bond indices that are bridges (in no cycle); iterative Tarjan."""
    n = len(mol.atoms)
    adj = mol.adjacency()
    disc = [-1] * n
    low = [0] * n
    bridges: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        while stack:
            u, parent_bond, ptr = stack.pop()
            if ptr == 0:
                disc[u] = low[u] = timer
                timer += 1
            if ptr < len(adj[u]):
                stack.append((u, parent_bond, ptr + 1))
                v, bi = adj[u][ptr]
                if bi == parent_bond:
                    continue
                if disc[v] == -1:
                    stack.append((v, bi, 0))
                else:
                    low[u] = min(low[u], disc[v])
            else:
                if parent_bond != -1:
                    p = mol.bonds[parent_bond].other(u)
                    low[p] = min(low[p], low[u])
                    if low[u] > disc[p]:
                        bridges.add(parent_bond)
    return bridges


def shortest_cycle_through(mol: MolGraph, bond_idx: int,
                           allowed_bonds: set[int]) -> list[int] | None:
    """Shortest cycle (as a bond-index list) containing the given bond,
    using only allowed bonds; BFS from one endpoint to the other."""
    bond = mol.bonds[bond_idx]
    adj = mol.adjacency()
    start, goal = bond.a, bond.b
    prev: dict[int, tuple[int, int]] = {start: (-1, -1)}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            break
        for v, bi in adj[u]:
            if bi == bond_idx or bi not in allowed_bonds or v in prev:
                continue
            prev[v] = (u, bi)
            queue.append(v)
    if goal not in prev:
        return None
    path = [bond_idx]
    node = goal
    while node != start:
        u, bi = prev[node]
        path.append(bi)
        node = u
    return path
