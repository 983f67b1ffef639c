"""Character-level SMILES parser producing a raw MolGraph.

Supported subset: organic-subset atoms, aromatic lowercase atoms, bracket
atoms with isotope/chirality/H-count/charge, bonds - = # : / \\, branches,
ring closures 1-9 and %NN, dot disconnection, and the wildcard atom '*'
(used as the attachment marker in fragments). Chirality and bond direction
are parsed and kept as annotations but carry no semantics downstream.
"""

from __future__ import annotations

import re

from ..errors import EmptyInput, UnbalancedParen, UnclosedRing, UnknownToken
from .elements import ATOMIC_WEIGHTS
from .graph import AROMATIC, Atom, Bond, MolGraph

_BOND_ORDERS = {"-": 1, "=": 2, "#": 3, ":": AROMATIC, "/": 1, "\\": 1}
_ORGANIC_TWO = ("Cl", "Br")
_ORGANIC_ONE = set("BCNOPSFI")
_AROMATIC_ONE = set("bcnops")
_BRACKET_RE = re.compile(
    r"""^(?P<isotope>\d+)?
         (?P<element>\*|[A-Z][a-z]?|as|se|[bcnops])
         (?P<stereo>@{1,2})?
         (?P<hcount>H\d*)?
         (?P<charge>\+{1,3}|-{1,3}|\+\d+|-\d+)?$""",
    re.VERBOSE,
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.atoms: list[Atom] = []
        self.bonds: list[Bond] = []
        self.bond_keys: set[tuple[int, int]] = set()
        self.prev: int | None = None
        self.pending: tuple[int, str | None, int] | None = None  # order, stereo, offset
        self.branches: list[tuple[int, int, int]] = []  # (atom idx, '(' offset, atom count)
        self.rings: dict[int, tuple[int, tuple | None, int]] = {}
        self.dotted = False

    def error(self, cls, message, offset=None):
        raise cls(message, self.pos if offset is None else offset)

    def add_atom(self, atom: Atom) -> None:
        idx = len(self.atoms)
        self.atoms.append(atom)
        if self.prev is not None:
            self.add_bond(self.prev, idx, self.pending)
        elif self.pending is not None:
            self.error(UnknownToken, "bond symbol with no preceding atom", self.pending[2])
        self.pending = None
        self.prev = idx

    def add_bond(self, a: int, b: int, spec: tuple | None) -> None:
        if a == b:
            self.error(UnknownToken, "ring closure bonds an atom to itself")
        key = (min(a, b), max(a, b))
        if key in self.bond_keys:
            self.error(UnknownToken, f"duplicate bond between atoms {a} and {b}")
        self.bond_keys.add(key)
        if spec is not None:
            order, stereo, _ = spec
        else:
            order = AROMATIC if (self.atoms[a].aromatic and self.atoms[b].aromatic) else 1
            stereo = None
        self.bonds.append(Bond(a, b, order, stereo=stereo))

    def take_bracket(self) -> None:
        start = self.pos
        end = self.text.find("]", start)
        if end < 0:
            self.error(UnknownToken, "unterminated bracket atom", start)
        body = self.text[start + 1:end]
        m = _BRACKET_RE.match(body)
        if not m:
            self.error(UnknownToken, f"unparseable bracket atom [{body}]", start)
        element = m.group("element")
        aromatic = element[0].islower() and element != "*"
        if aromatic:
            element = element.capitalize()
        if element != "*" and element not in ATOMIC_WEIGHTS:
            self.error(UnknownToken, f"unknown element {element!r}", start)
        hcount = m.group("hcount")
        if hcount is not None:
            explicit_h = int(hcount[1:]) if len(hcount) > 1 else 1
        else:
            explicit_h = 0
        charge_text = m.group("charge") or ""
        if charge_text in ("", "+", "-", "++", "--", "+++", "---"):
            charge = charge_text.count("+") - charge_text.count("-")
        else:
            charge = int(charge_text)
        isotope = int(m.group("isotope")) if m.group("isotope") else None
        self.add_atom(Atom(element=element, aromatic=aromatic, charge=charge,
                           isotope=isotope, explicit_h=explicit_h, in_bracket=True,
                           stereo=m.group("stereo"), offset=start))
        self.pos = end + 1

    def close_or_open_ring(self, digit: int, offset: int) -> None:
        if self.prev is None:
            self.error(UnknownToken, "ring closure digit before any atom", offset)
        if digit in self.rings:
            other, open_spec, _ = self.rings.pop(digit)
            spec = self.pending
            if spec is not None and open_spec is not None and spec[0] != open_spec[0]:
                self.error(UnknownToken,
                           f"conflicting bond orders on ring closure {digit}", offset)
            self.add_bond(other, self.prev, spec or open_spec)
            self.pending = None
        else:
            self.rings[digit] = (self.prev, self.pending, offset)
            self.pending = None

    def run(self) -> MolGraph:
        text = self.text
        if not text:
            raise EmptyInput("empty SMILES", 0)
        if not text.isascii():
            bad = next(i for i, ch in enumerate(text) if not ch.isascii())
            raise UnknownToken("non-ASCII input", bad)
        n = len(text)
        while self.pos < n:
            ch = text[self.pos]
            if ch == "[":
                self.take_bracket()
                continue
            if text[self.pos:self.pos + 2] in _ORGANIC_TWO:
                self.add_atom(Atom(element=text[self.pos:self.pos + 2], offset=self.pos))
                self.pos += 2
                continue
            if ch in _ORGANIC_ONE:
                self.add_atom(Atom(element=ch, offset=self.pos))
            elif ch in _AROMATIC_ONE:
                self.add_atom(Atom(element=ch.upper(), aromatic=True, offset=self.pos))
            elif ch == "*":
                self.add_atom(Atom(element="*", offset=self.pos))
            elif ch in _BOND_ORDERS:
                if self.pending is not None:
                    self.error(UnknownToken, "two bond symbols in a row")
                if self.prev is None:
                    self.error(UnknownToken, "bond symbol with no preceding atom")
                stereo = ch if ch in ("/", "\\") else None
                self.pending = (_BOND_ORDERS[ch], stereo, self.pos)
            elif ch.isdigit():
                if ch == "0":
                    self.error(UnknownToken, "ring closure digit 0 is not supported")
                self.close_or_open_ring(int(ch), self.pos)
            elif ch == "%":
                if self.pos + 2 >= n or not text[self.pos + 1:self.pos + 3].isdigit():
                    self.error(UnknownToken, "%% needs two digits")
                self.close_or_open_ring(int(text[self.pos + 1:self.pos + 3]), self.pos)
                self.pos += 2
            elif ch == "(":
                if self.prev is None:
                    self.error(UnbalancedParen, "branch before any atom")
                if self.pending is not None:
                    self.error(UnknownToken, "bond symbol before '('")
                self.branches.append((self.prev, self.pos, len(self.atoms)))
            elif ch == ")":
                if not self.branches:
                    self.error(UnbalancedParen, "')' without matching '('")
                if self.pending is not None:
                    self.error(UnknownToken, "dangling bond before ')'")
                opened_at, _, atoms_before = self.branches.pop()
                if len(self.atoms) == atoms_before:
                    self.error(UnbalancedParen, "empty branch")
                self.prev = opened_at
            elif ch == ".":
                if self.prev is None or self.pending is not None:
                    self.error(UnknownToken, "misplaced '.'")
                if self.branches:
                    self.error(UnbalancedParen, "'.' inside a branch")
                self.dotted = True
                self.prev = None
            else:
                self.error(UnknownToken, f"unexpected character {ch!r}")
            self.pos += 1

        if self.pending is not None:
            self.error(UnknownToken, "dangling bond at end of input", self.pending[2])
        if self.branches:
            self.error(UnbalancedParen, "unclosed '('", self.branches[-1][1])
        if self.rings:
            first = min(off for _, _, off in self.rings.values())
            raise UnclosedRing(
                f"ring closure digit(s) {sorted(self.rings)} never closed", first)
        if self.prev is None and not self.atoms:
            raise EmptyInput("no atoms in input", 0)
        if self.atoms and self.dotted and self.text.endswith("."):
            raise UnknownToken("trailing '.'", n - 1)
        return MolGraph(atoms=self.atoms, bonds=self.bonds, dotted=self.dotted)


def parse(smiles: str) -> MolGraph:
    """Parse a SMILES string into a raw molecular graph.

    Ring closures are matched and bond orders assigned; implicit hydrogens
    are not resolved yet (that happens in prepare/validate).
    """
    return _Parser(smiles).run()
