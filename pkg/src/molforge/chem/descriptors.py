"""Molecular weight and the simple graph descriptors."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidInput
from .canonical import prepare_full
from .elements import ATOMIC_WEIGHTS
from .graph import MolGraph
from .kekulize import validate


@dataclass(frozen=True)
class DescriptorVector:
    mol_weight: float
    heavy_atoms: int
    rings: int
    aromatic_fraction: float
    hetero_fraction: float

    def as_dict(self) -> dict:
        return {
            "mol_weight": self.mol_weight,
            "heavy_atoms": self.heavy_atoms,
            "rings": self.rings,
            "aromatic_fraction": self.aromatic_fraction,
            "hetero_fraction": self.hetero_fraction,
        }


def _checked(mol: MolGraph) -> MolGraph:
    verdict = validate(mol)
    if not verdict:
        raise InvalidInput(f"molecule is not valid: {verdict.reason}")
    return prepare_full(mol)


def mol_weight(mol: MolGraph) -> float:
    """Sum of standard atomic weights over all atoms plus resolved hydrogens."""
    full = _checked(mol)
    total = 0.0
    h = ATOMIC_WEIGHTS["H"]
    for atom in full.atoms:
        total += ATOMIC_WEIGHTS[atom.element] + h * atom.hydrogens
    return total


def simple_descriptors(mol: MolGraph) -> DescriptorVector:
    full = _checked(mol)
    heavy = [a for a in full.atoms if a.element not in ("H", "*")]
    n = len(heavy)
    aromatic = sum(a.aromatic for a in heavy)
    hetero = sum(a.element != "C" for a in heavy)
    return DescriptorVector(
        mol_weight=mol_weight(full),
        heavy_atoms=n,
        rings=full.ring_count(),
        aromatic_fraction=aromatic / n if n else 0.0,
        hetero_fraction=hetero / n if n else 0.0,
    )
