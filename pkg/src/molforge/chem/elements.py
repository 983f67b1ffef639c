"""Element data: standard atomic weights and the valence model.

Weights are IUPAC conventional values (2021 table, abridged to three
decimals where an interval is published). The valence model covers the
organic subset precisely; charged variants shift by the documented rules
and anything else is accepted leniently up to degree 6.
"""

from __future__ import annotations

ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
AROMATIC_OK = {"B", "C", "N", "O", "P", "S", "Se", "As"}  # lowercase-writable

# element -> allowed total valences (bond orders + hydrogens), uncharged
VALENCES: dict[str, tuple[int, ...]] = {
    "H": (1,),
    "B": (3,),
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

MAX_LENIENT_DEGREE = 6

ATOMIC_WEIGHTS: dict[str, float] = {
    "H": 1.008, "He": 4.003, "Li": 6.94, "Be": 9.012, "B": 10.81,
    "C": 12.011, "N": 14.007, "O": 15.999, "F": 18.998, "Ne": 20.180,
    "Na": 22.990, "Mg": 24.305, "Al": 26.982, "Si": 28.085, "P": 30.974,
    "S": 32.06, "Cl": 35.45, "Ar": 39.95, "K": 39.098, "Ca": 40.078,
    "Sc": 44.956, "Ti": 47.867, "V": 50.942, "Cr": 51.996, "Mn": 54.938,
    "Fe": 55.845, "Co": 58.933, "Ni": 58.693, "Cu": 63.546, "Zn": 65.38,
    "Ga": 69.723, "Ge": 72.630, "As": 74.922, "Se": 78.971, "Br": 79.904,
    "Kr": 83.798, "Rb": 85.468, "Sr": 87.62, "Y": 88.906, "Zr": 91.224,
    "Nb": 92.906, "Mo": 95.95, "Ru": 101.07, "Rh": 102.906, "Pd": 106.42,
    "Ag": 107.868, "Cd": 112.414, "In": 114.818, "Sn": 118.710,
    "Sb": 121.760, "Te": 127.60, "I": 126.904, "Xe": 131.293,
    "Cs": 132.905, "Ba": 137.327, "La": 138.905, "Ce": 140.116,
    "Pt": 195.084, "Au": 196.967, "Hg": 200.592, "Tl": 204.38,
    "Pb": 207.2, "Bi": 208.980, "W": 183.84, "Re": 186.207, "Os": 190.23,
    "Ir": 192.217, "Ta": 180.948, "Hf": 178.486, "*": 0.0,
}


def allowed_valences(element: str, charge: int) -> tuple[int, ...] | None:
    """Allowed total-valence set, or None for 'lenient' (degree <= 6).

    Positive charge raises N/P capacity, negative charge lowers O/S; all
    other charged atoms and unknown elements are lenient.
    """
    if element == "*":
        return None
    if charge == 0:
        return VALENCES.get(element)
    if element in ("N", "P") and charge > 0:
        return tuple(v + charge for v in VALENCES[element])
    if element in ("O", "S") and charge < 0:
        return tuple(v + charge for v in VALENCES[element] if v + charge >= 0)
    return None
