"""SMILES parsing into validated molecular graphs.

Supports the organic subset, bracket atoms (isotope, charge, explicit H
count), single/double/triple/aromatic bonds, branches, ring closures
(digits and ``%nn``), dot-separated fragments, and aromatic lowercase
atoms.  Stereo markers (``/ \\ @ @@``) are parsed and discarded; none of
the downstream features are stereo-aware.  Atom-map suffixes (``:n``)
inside brackets are likewise ignored.

Aromaticity is taken from the input (lowercase atoms are trusted), then
kekulized six-rings of C/N/O/S with alternating single/double bonds are
normalized to aromatic so that e.g. ``C1=CC=CC=C1`` and ``c1ccccc1``
produce identical graphs.

Molecules are immutable by convention once :func:`parse_smiles` returns;
every function in this package treats them as read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    SmilesSyntaxError,
    UnclosedRingError,
    UnsupportedFeatureError,
    ValenceError,
)
from ._hash import fnv1a64

# Bond order codes. Aromatic is its own order; order_value() maps it to 1.5
# when summing toward valences.
SINGLE = 1
DOUBLE = 2
TRIPLE = 3
AROMATIC = 4

_BOND_VALUES = {SINGLE: 1.0, DOUBLE: 2.0, TRIPLE: 3.0, AROMATIC: 1.5}

ORGANIC_SUBSET = ("B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I")
AROMATIC_ORGANIC = ("b", "c", "n", "o", "p", "s")

# Lowest-first standard valences used to fill implicit hydrogens.
STANDARD_VALENCES: dict[str, tuple[int, ...]] = {
    "B": (3,),
    "C": (4,),
    "N": (3, 5),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

ATOMIC_NUMBERS: dict[str, int] = {
    "H": 1, "He": 2, "Li": 3, "Be": 4, "B": 5, "C": 6, "N": 7, "O": 8,
    "F": 9, "Ne": 10, "Na": 11, "Mg": 12, "Al": 13, "Si": 14, "P": 15,
    "S": 16, "Cl": 17, "Ar": 18, "K": 19, "Ca": 20, "Sc": 21, "Ti": 22,
    "V": 23, "Cr": 24, "Mn": 25, "Fe": 26, "Co": 27, "Ni": 28, "Cu": 29,
    "Zn": 30, "Ga": 31, "Ge": 32, "As": 33, "Se": 34, "Br": 35, "Kr": 36,
    "Rb": 37, "Sr": 38, "Y": 39, "Zr": 40, "Nb": 41, "Mo": 42, "Tc": 43,
    "Ru": 44, "Rh": 45, "Pd": 46, "Ag": 47, "Cd": 48, "In": 49, "Sn": 50,
    "Sb": 51, "Te": 52, "I": 53, "Xe": 54, "Cs": 55, "Ba": 56, "La": 57,
    "Ce": 58, "Pr": 59, "Nd": 60, "Pm": 61, "Sm": 62, "Eu": 63, "Gd": 64,
    "Tb": 65, "Dy": 66, "Ho": 67, "Er": 68, "Tm": 69, "Yb": 70, "Lu": 71,
    "Hf": 72, "Ta": 73, "W": 74, "Re": 75, "Os": 76, "Ir": 77, "Pt": 78,
    "Au": 79, "Hg": 80, "Tl": 81, "Pb": 82, "Bi": 83, "Po": 84, "At": 85,
    "Rn": 86, "Fr": 87, "Ra": 88, "Ac": 89, "Th": 90, "Pa": 91, "U": 92,
}


@dataclass
class Atom:
    """One atom of a molecular graph.

    ``explicit_h`` is the count written in a bracket atom spec;
    ``implicit_h`` is filled from the valence model for organic-subset
    atoms written without brackets.  Bracket atoms never receive
    implicit hydrogens.
    """

    element: str
    atomic_number: int
    formal_charge: int = 0
    is_aromatic: bool = False
    explicit_h: int = 0
    implicit_h: int = 0
    isotope: int | None = None
    index: int = -1
    from_bracket: bool = False
    in_ring: bool = False

    @property
    def total_h(self) -> int:
        return self.explicit_h + self.implicit_h


@dataclass
class Bond:
    """Edge between two atom indices; ``order`` is one of the bond codes."""

    a: int
    b: int
    order: int
    in_ring: bool = False

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a

    def order_value(self) -> float:
        return _BOND_VALUES[self.order]


@dataclass
class Molecule:
    """Parsed molecular graph with perceived rings and aromatic flags."""

    atoms: list[Atom] = field(default_factory=list)
    bonds: list[Bond] = field(default_factory=list)
    rings: list[tuple[int, ...]] = field(default_factory=list)
    _adjacency: list[list[tuple[int, int]]] = field(default_factory=list, repr=False)

    @property
    def num_atoms(self) -> int:
        return len(self.atoms)

    @property
    def num_bonds(self) -> int:
        return len(self.bonds)

    def neighbors(self, i: int) -> list[tuple[int, int]]:
        """(neighbor atom index, bond index) pairs for atom ``i``."""
        return self._adjacency[i]

    def degree(self, i: int) -> int:
        """Heavy-atom degree: neighbors that are not explicit hydrogens."""
        return sum(1 for j, _ in self._adjacency[i] if self.atoms[j].atomic_number != 1)

    def total_hydrogens(self, i: int) -> int:
        """Implicit + bracket-spec hydrogens plus explicit [H] neighbor atoms."""
        atom = self.atoms[i]
        return atom.total_h + sum(
            1 for j, _ in self._adjacency[i] if self.atoms[j].atomic_number == 1
        )

    def bond_between(self, i: int, j: int) -> Bond | None:
        for nbr, bidx in self._adjacency[i]:
            if nbr == j:
                return self.bonds[bidx]
        return None

    def num_fragments(self) -> int:
        seen = [False] * self.num_atoms
        count = 0
        for start in range(self.num_atoms):
            if seen[start]:
                continue
            count += 1
            stack = [start]
            seen[start] = True
            while stack:
                cur = stack.pop()
                for nbr, _ in self._adjacency[cur]:
                    if not seen[nbr]:
                        seen[nbr] = True
                        stack.append(nbr)
        return count

    def _rebuild_adjacency(self) -> None:
        self._adjacency = [[] for _ in range(len(self.atoms))]
        for bidx, bond in enumerate(self.bonds):
            self._adjacency[bond.a].append((bond.b, bidx))
            self._adjacency[bond.b].append((bond.a, bidx))


class _Cursor:
    """Character cursor over the SMILES text."""

    __slots__ = ("text", "pos")

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def peek(self, offset: int = 0) -> str:
        p = self.pos + offset
        return self.text[p] if p < len(self.text) else ""

    def take(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        return ch

    def done(self) -> bool:
        return self.pos >= len(self.text)

    def read_digits(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return self.text[start : self.pos]


def parse_smiles(text: str) -> Molecule:
    """Parse a SMILES string into a :class:`Molecule`.

    Args:
        text: SMILES over the supported grammar (see module docstring).

    Returns:
        Molecule with implicit hydrogens assigned, rings perceived and
        aromatic flags set.  Parsing the same string twice yields
        identical graphs.

    Raises:
        SmilesSyntaxError: malformed input, with the failing position.
        UnclosedRingError: a ring-closure digit was never closed.
        ValenceError: an atom's bonds exceed its maximum valence.
        UnsupportedFeatureError: recognised but unsupported construct.
    """
    if not isinstance(text, str):
        raise SmilesSyntaxError(0, "input must be a string")
    if not text:
        raise SmilesSyntaxError(0, "empty SMILES")
    if any(ch.isspace() for ch in text):
        raise SmilesSyntaxError(0, "whitespace is not allowed in SMILES")

    mol = Molecule()
    cur = _Cursor(text)
    prev_atom: int | None = None
    pending_bond: int | None = None
    pending_bond_pos = 0
    branch_stack: list[int] = []
    # ring number -> (atom index, bond order or None, source position)
    open_rings: dict[int, tuple[int, int | None, int]] = {}
    bond_positions: list[int] = []

    def add_atom(atom: Atom) -> int:
        atom.index = len(mol.atoms)
        mol.atoms.append(atom)
        return atom.index

    def add_bond(a: int, b: int, order: int, pos: int) -> None:
        if a == b:
            raise SmilesSyntaxError(pos, "bond from an atom to itself")
        for bond in mol.bonds:
            if {bond.a, bond.b} == {a, b}:
                raise SmilesSyntaxError(pos, f"duplicate bond between atoms {a} and {b}")
        mol.bonds.append(Bond(a, b, order))
        bond_positions.append(pos)

    def link_new_atom(idx: int, pos: int) -> None:
        nonlocal prev_atom, pending_bond
        if prev_atom is not None:
            order = pending_bond
            if order is None:
                if mol.atoms[prev_atom].is_aromatic and mol.atoms[idx].is_aromatic:
                    order = AROMATIC
                else:
                    order = SINGLE
            add_bond(prev_atom, idx, order, pos)
        elif pending_bond is not None:
            raise SmilesSyntaxError(pending_bond_pos, "bond with no preceding atom")
        pending_bond = None
        prev_atom = idx

    while not cur.done():
        ch = cur.peek()
        pos = cur.pos

        if ch in "-=#:":
            if pending_bond is not None:
                raise SmilesSyntaxError(pos, "two bond symbols in a row")
            cur.take()
            pending_bond = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC}[ch]
            pending_bond_pos = pos
            continue

        if ch in "/\\":
            # Directional single bond; direction discarded.
            if pending_bond is not None:
                raise SmilesSyntaxError(pos, "two bond symbols in a row")
            cur.take()
            pending_bond = SINGLE
            pending_bond_pos = pos
            continue

        if ch == ".":
            cur.take()
            if pending_bond is not None:
                raise SmilesSyntaxError(pos, "bond symbol before fragment separator")
            prev_atom = None
            continue

        if ch == "(":
            cur.take()
            if prev_atom is None:
                raise SmilesSyntaxError(pos, "branch start before any atom")
            if pending_bond is not None:
                raise SmilesSyntaxError(pos, "bond symbol before branch start")
            branch_stack.append(prev_atom)
            continue

        if ch == ")":
            cur.take()
            if pending_bond is not None:
                raise SmilesSyntaxError(pos, "dangling bond before branch close")
            if not branch_stack:
                raise SmilesSyntaxError(pos, "unmatched closing parenthesis")
            prev_atom = branch_stack.pop()
            continue

        if ch.isdigit() or ch == "%":
            if ch == "%":
                cur.take()
                d1, d2 = cur.peek(0), cur.peek(1)
                if not (d1.isdigit() and d2.isdigit()):
                    raise SmilesSyntaxError(pos, "%% must be followed by two digits")
                cur.take()
                cur.take()
                ring_num = int(d1 + d2)
            else:
                ring_num = int(cur.take())
            if prev_atom is None:
                raise SmilesSyntaxError(pos, "ring closure before any atom")
            if ring_num in open_rings:
                other, opened_order, opened_pos = open_rings.pop(ring_num)
                order = pending_bond
                if order is not None and opened_order is not None and order != opened_order:
                    raise SmilesSyntaxError(pos, f"conflicting bond orders on ring closure {ring_num}")
                if order is None:
                    order = opened_order
                if order is None:
                    if mol.atoms[other].is_aromatic and mol.atoms[prev_atom].is_aromatic:
                        order = AROMATIC
                    else:
                        order = SINGLE
                add_bond(other, prev_atom, order, pos)
                pending_bond = None
            else:
                open_rings[ring_num] = (prev_atom, pending_bond, pos)
                pending_bond = None
            continue

        if ch == "[":
            atom = _parse_bracket_atom(cur)
            idx = add_atom(atom)
            link_new_atom(idx, pos)
            continue

        if ch.isalpha():
            atom = _parse_organic_atom(cur)
            idx = add_atom(atom)
            link_new_atom(idx, pos)
            continue

        if ch == "*":
            raise UnsupportedFeatureError(
                f"wildcard atom '*' at position {pos} is not valid in molecule SMILES"
            )

        raise SmilesSyntaxError(pos, f"unexpected character {ch!r}")

    if pending_bond is not None:
        raise SmilesSyntaxError(pending_bond_pos, "dangling bond at end of input")
    if branch_stack:
        raise SmilesSyntaxError(len(text) - 1, "unclosed branch parenthesis")
    if open_rings:
        digit = min(open_rings)
        raise UnclosedRingError(digit, open_rings[digit][2])
    if not mol.atoms:
        raise SmilesSyntaxError(0, "no atoms in SMILES")

    mol._rebuild_adjacency()
    mol.rings = perceive_rings(mol)
    _mark_ring_membership(mol)
    _normalize_aromaticity(mol)
    _validate_aromatic_bonds(mol, bond_positions)
    _assign_implicit_hydrogens(mol)
    return mol


def _parse_organic_atom(cur: _Cursor) -> Atom:
    pos = cur.pos
    ch = cur.take()
    if ch.isupper():
        symbol = ch
        if ch in ("C", "B") and cur.peek() in ("l", "r"):
            two = ch + cur.peek()
            if two in ("Cl", "Br"):
                cur.take()
                symbol = two
        if symbol not in ORGANIC_SUBSET:
            raise SmilesSyntaxError(pos, f"element {symbol!r} must be written in brackets")
        return Atom(element=symbol, atomic_number=ATOMIC_NUMBERS[symbol])
    if ch in AROMATIC_ORGANIC:
        symbol = ch.upper()
        return Atom(element=symbol, atomic_number=ATOMIC_NUMBERS[symbol], is_aromatic=True)
    raise SmilesSyntaxError(pos, f"unexpected atom symbol {ch!r}")


def _parse_bracket_atom(cur: _Cursor) -> Atom:
    start = cur.pos
    cur.take()  # '['
    isotope: int | None = None
    digits = cur.read_digits()
    if digits:
        isotope = int(digits)

    ch = cur.peek()
    if not ch:
        raise SmilesSyntaxError(start, "unterminated bracket atom")
    aromatic = False
    if ch.islower():
        # Aromatic element in brackets; 'se'/'as' two-letter aromatics are rare
        # but legal SMILES.
        if ch in ("s", "a") and cur.peek(1) in ("e", "s"):
            two = ch + cur.peek(1)
            if two in ("se", "as"):
                cur.take()
                cur.take()
                symbol = two.capitalize()
                aromatic = True
            else:
                symbol = cur.take().upper()
                aromatic = True
        elif ch in AROMATIC_ORGANIC:
            cur.take()
            symbol = ch.upper()
            aromatic = True
        else:
            raise SmilesSyntaxError(cur.pos, f"unknown aromatic symbol {ch!r}")
    elif ch.isupper():
        cur.take()
        symbol = ch
        nxt = cur.peek()
        if nxt.islower() and (ch + nxt) in ATOMIC_NUMBERS:
            symbol = ch + cur.take()
    else:
        raise SmilesSyntaxError(cur.pos, f"expected element symbol, found {ch!r}")

    if symbol not in ATOMIC_NUMBERS:
        raise SmilesSyntaxError(start, f"unknown element {symbol!r}")

    # Chirality markers: parsed, discarded.
    while cur.peek() == "@":
        cur.take()
        for tag in ("TH1", "TH2", "AL1", "AL2"):
            if cur.text.startswith(tag, cur.pos):
                cur.pos += len(tag)
                break

    explicit_h = 0
    if cur.peek() == "H":
        cur.take()
        digits = cur.read_digits()
        explicit_h = int(digits) if digits else 1

    charge = 0
    ch = cur.peek()
    if ch in "+-":
        sign = 1 if ch == "+" else -1
        cur.take()
        run = 1
        while cur.peek() == ch:
            cur.take()
            run += 1
        digits = cur.read_digits()
        if digits:
            if run > 1:
                raise SmilesSyntaxError(cur.pos, "mixed repeated-sign and numeric charge")
            charge = sign * int(digits)
        else:
            charge = sign * run

    if cur.peek() == ":":
        # Atom-map label; accepted and ignored.
        cur.take()
        if not cur.read_digits():
            raise SmilesSyntaxError(cur.pos, "atom map ':' without digits")

    if cur.peek() != "]":
        raise SmilesSyntaxError(cur.pos, f"expected ']' in bracket atom, found {cur.peek()!r}")
    cur.take()

    return Atom(
        element=symbol,
        atomic_number=ATOMIC_NUMBERS[symbol],
        formal_charge=charge,
        is_aromatic=aromatic,
        explicit_h=explicit_h,
        isotope=isotope,
        from_bracket=True,
    )


# ---------------------------------------------------------------------------
# Ring perception


def perceive_rings(mol: Molecule) -> list[tuple[int, ...]]:
    """Smallest set of smallest rings as ordered atom-index cycles.

    Candidate cycles are the shortest cycle through each bond; cycles are
    then chosen greedily by (length, lowest atom indices) subject to
    linear independence of their bond-incidence vectors over GF(2), until
    ``bonds - atoms + fragments`` rings are selected.
    """
    if not mol._adjacency:
        mol._rebuild_adjacency()
    n_rings = mol.num_bonds - mol.num_atoms + mol.num_fragments()
    if n_rings <= 0:
        return []

    candidates: list[tuple[int, tuple[int, ...], frozenset[int]]] = []
    seen_bond_sets: set[frozenset[int]] = set()
    for bidx, bond in enumerate(mol.bonds):
        cycle = _shortest_cycle_through(mol, bidx)
        if cycle is None:
            continue
        bonds_in_cycle = _cycle_bond_set(mol, cycle)
        if bonds_in_cycle in seen_bond_sets:
            continue
        seen_bond_sets.add(bonds_in_cycle)
        candidates.append((len(cycle), _canonical_rotation(cycle), bonds_in_cycle))

    candidates.sort(key=lambda c: (c[0], c[1]))

    chosen: list[tuple[int, ...]] = []
    basis: list[int] = []  # GF(2) row-echelon bitmasks over bond indices
    for _, cycle, bond_set in candidates:
        vec = 0
        for b in bond_set:
            vec |= 1 << b
        reduced = vec
        for row in basis:
            reduced = min(reduced, reduced ^ row)
        if reduced == 0:
            continue
        basis.append(reduced)
        basis.sort(reverse=True)
        chosen.append(cycle)
        if len(chosen) == n_rings:
            break
    return chosen


def _shortest_cycle_through(mol: Molecule, bond_index: int) -> tuple[int, ...] | None:
    """Shortest cycle containing a bond: BFS between its ends avoiding it."""
    bond = mol.bonds[bond_index]
    src, dst = bond.a, bond.b
    parents: dict[int, int] = {src: -1}
    queue = [src]
    while queue:
        nxt: list[int] = []
        for cur in queue:
            for nbr, bidx in mol.neighbors(cur):
                if bidx == bond_index or nbr in parents:
                    continue
                parents[nbr] = cur
                if nbr == dst:
                    path = [dst]
                    while path[-1] != src:
                        path.append(parents[path[-1]])
                    return tuple(path)
                nxt.append(nbr)
        queue = nxt
    return None


def _cycle_bond_set(mol: Molecule, cycle: tuple[int, ...]) -> frozenset[int]:
    out = set()
    for k in range(len(cycle)):
        a, b = cycle[k], cycle[(k + 1) % len(cycle)]
        for nbr, bidx in mol.neighbors(a):
            if nbr == b:
                out.add(bidx)
                break
    return frozenset(out)


def _canonical_rotation(cycle: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate/reflect a cycle so it starts at its lowest atom index."""
    n = len(cycle)
    best: tuple[int, ...] | None = None
    doubled = cycle + cycle
    for rev in (cycle, tuple(reversed(cycle))):
        doubled = rev + rev
        for i in range(n):
            rot = doubled[i : i + n]
            if best is None or rot < best:
                best = rot
    assert best is not None
    return best


def _mark_ring_membership(mol: Molecule) -> None:
    """Flag every bond (and its atoms) lying on any cycle, via bridge finding."""
    n = mol.num_atoms
    visited = [False] * n
    depth = [0] * n
    low = [0] * n
    is_bridge = [False] * mol.num_bonds

    for root in range(n):
        if visited[root]:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]  # atom, via bond, nbr pointer
        visited[root] = True
        depth[root] = 0
        low[root] = 0
        while stack:
            cur, via, ptr = stack[-1]
            nbrs = mol.neighbors(cur)
            if ptr < len(nbrs):
                stack[-1] = (cur, via, ptr + 1)
                nbr, bidx = nbrs[ptr]
                if bidx == via:
                    continue
                if visited[nbr]:
                    low[cur] = min(low[cur], depth[nbr])
                else:
                    visited[nbr] = True
                    depth[nbr] = depth[cur] + 1
                    low[nbr] = depth[nbr]
                    stack.append((nbr, bidx, 0))
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[cur])
                    if low[cur] > depth[parent]:
                        is_bridge[via] = True

    for bidx, bond in enumerate(mol.bonds):
        bond.in_ring = not is_bridge[bidx]
    ring_atoms = {a for bond in mol.bonds if bond.in_ring for a in (bond.a, bond.b)}
    # Isolated atoms and tree edges leave in_ring False.
    for atom in mol.atoms:
        atom.in_ring = atom.index in ring_atoms


# ---------------------------------------------------------------------------
# Aromaticity and hydrogens


def _normalize_aromaticity(mol: Molecule) -> None:
    """Flag alternating-bond six-rings of C/N/O/S as aromatic.

    This normalizes kekulized inputs; lowercase atoms are already trusted
    as aromatic at parse time.  No attempt is made at full Hückel
    perception (five-rings, fused edge cases stay as written).
    """
    for cycle in mol.rings:
        if len(cycle) != 6:
            continue
        if not all(mol.atoms[i].element in ("C", "N", "O", "S") for i in cycle):
            continue
        orders = []
        ring_bonds = []
        ok = True
        for k in range(6):
            bond = mol.bond_between(cycle[k], cycle[(k + 1) % 6])
            if bond is None:
                ok = False
                break
            ring_bonds.append(bond)
            orders.append(bond.order)
        if not ok:
            continue
        alternating = all(
            {orders[k], orders[(k + 1) % 6]} == {SINGLE, DOUBLE} for k in range(6)
        )
        if not alternating:
            continue
        for i in cycle:
            mol.atoms[i].is_aromatic = True
        for bond in ring_bonds:
            bond.order = AROMATIC


def _validate_aromatic_bonds(mol: Molecule, bond_positions: list[int]) -> None:
    for bidx, bond in enumerate(mol.bonds):
        if bond.order == AROMATIC:
            if not (mol.atoms[bond.a].is_aromatic and mol.atoms[bond.b].is_aromatic):
                raise SmilesSyntaxError(
                    bond_positions[bidx],
                    "aromatic bond between non-aromatic atoms",
                )


def _assign_implicit_hydrogens(mol: Molecule) -> None:
    for atom in mol.atoms:
        order_sum = 0.0
        for _, bidx in mol.neighbors(atom.index):
            order_sum += mol.bonds[bidx].order_value()

        valences = STANDARD_VALENCES.get(atom.element)

        if atom.from_bracket:
            atom.implicit_h = 0
            if valences is not None:
                total = math.floor(order_sum) + atom.explicit_h
                if total > max(valences) + abs(atom.formal_charge):
                    raise ValenceError(
                        atom.index,
                        f"{atom.element} with bond-order sum {total} exceeds "
                        f"valence {max(valences)}",
                    )
            continue

        assert valences is not None  # non-bracket atoms are organic subset
        if atom.is_aromatic:
            # Aromatic organic-subset atoms fill only to their lowest valence.
            atom.implicit_h = max(valences[0] - math.ceil(order_sum), 0)
            continue

        needed = int(order_sum)
        for v in valences:
            if v >= needed:
                atom.implicit_h = v - needed
                break
        else:
            raise ValenceError(
                atom.index,
                f"{atom.element} with bond-order sum {needed} exceeds "
                f"valence {max(valences)}",
            )


# ---------------------------------------------------------------------------
# Atom invariants


def atom_invariant(mol: Molecule, i: int) -> int:
    """Deterministic 64-bit code for an atom's local properties.

    Hashes (atomic number, heavy-atom degree, total H count, formal
    charge, ring membership, aromaticity) with FNV-1a, so the code is
    independent of the atom ordering of the input SMILES and stable
    across platforms and processes.
    """
    atom = mol.atoms[i]
    return fnv1a64(
        (
            atom.atomic_number,
            mol.degree(i),
            mol.total_hydrogens(i),
            atom.formal_charge,
            int(atom.in_ring),
            int(atom.is_aromatic),
        )
    )
