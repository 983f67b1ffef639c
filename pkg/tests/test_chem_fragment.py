from collections import Counter

import pytest

from molforge import chem
from molforge.errors import InvalidInput
from molforge.rng import Rng


def test_ethylbenzene_cuts_once():
    frags = chem.fragment(chem.parse("CCc1ccccc1"))
    assert sum(frags.values()) == 2
    assert frags == Counter({"*CC": 1, "*c1ccccc1": 1})


def test_ethane_has_no_qualifying_bond():
    assert chem.fragment(chem.parse("CC")) == Counter({"CC": 1})


def test_benzene_is_a_single_fragment():
    assert chem.fragment(chem.parse("c1ccccc1")) == Counter({"c1ccccc1": 1})


def test_hetero_bond_cuts():
    frags = chem.fragment(chem.parse("CCO"))
    assert frags == Counter({"*CC": 1, "*O": 1})


def test_ring_bonds_never_cut():
    frags = chem.fragment(chem.parse("C1CCNCC1"))
    assert sum(frags.values()) == 1


def test_multiset_counts_repeated_fragments():
    frags = chem.fragment(chem.parse("OCCCO"))
    assert frags["*O"] == 2


def test_fragmentation_invariant_under_reordering():
    mol = chem.parse("CC(=O)Nc1ccc(O)cc1")
    reference = chem.fragment(mol)
    for k in range(10):
        rendering = chem.random_smiles(mol, Rng(k + 99))
        assert chem.fragment(chem.parse(rendering)) == reference


def test_invalid_molecule_rejected():
    with pytest.raises(InvalidInput):
        chem.fragment(chem.parse("F(C)C"))


def test_fragments_reparse_as_valid():
    for text in ("CC(C)Cc1ccc(C)cc1C(C)C(=O)O", "CN1CCN(CC1)c1ccccc1"):
        for frag in chem.fragment(chem.parse(text)):
            assert chem.validate(chem.parse(frag))


def test_mol_weight_examples():
    assert abs(chem.mol_weight(chem.parse("C")) - 16.043) < 1e-9
    assert abs(chem.mol_weight(chem.parse("CCO")) - 46.069) < 1e-9
    assert abs(chem.mol_weight(chem.parse("[H][H]")) - 2.016) < 1e-9


def test_mol_weight_counts_implicit_hydrogens_after_kekulization():
    # benzene: 6 C + 6 H
    assert abs(chem.mol_weight(chem.parse("c1ccccc1")) - (6 * 12.011 + 6 * 1.008)) < 1e-9


def test_descriptor_examples():
    benzene = chem.simple_descriptors(chem.parse("c1ccccc1"))
    assert benzene.rings == 1
    assert benzene.aromatic_fraction == 1.0
    ethanolish = chem.simple_descriptors(chem.parse("CCO"))
    assert abs(ethanolish.hetero_fraction - 1 / 3) < 1e-12
    two_rings = chem.simple_descriptors(chem.parse("C1CC1C1CC1"))
    assert two_rings.rings == 2
    assert two_rings.heavy_atoms == 6
