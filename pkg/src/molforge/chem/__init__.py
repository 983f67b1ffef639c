"""SMILES parsing, validation, canonicalization, and featurization."""

from .canonical import canonicalize, perceive_aromatic, prepare_full, random_smiles
from .descriptors import DescriptorVector, mol_weight, simple_descriptors
from .fingerprint import (Fingerprint, fingerprint, pack_rows, tanimoto,
                          tanimoto_matrix)
from .fragment import fragment
from .graph import AROMATIC, Atom, Bond, MolGraph
from .kekulize import ValidityVerdict, kekulize, prepare, validate
from .parser import parse

__all__ = [
    "AROMATIC", "Atom", "Bond", "DescriptorVector", "Fingerprint", "MolGraph",
    "ValidityVerdict", "canonicalize", "fingerprint", "fragment", "kekulize",
    "mol_weight", "pack_rows", "parse", "perceive_aromatic", "prepare",
    "prepare_full", "random_smiles", "simple_descriptors", "tanimoto",
    "tanimoto_matrix", "validate",
]
