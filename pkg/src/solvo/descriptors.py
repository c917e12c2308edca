"""The six scalar descriptors that head each molecule's feature vector.

Order is fixed: molecular weight, Crippen-type logP, Ertl TPSA, hydrogen
bond donor count, acceptor count, rotatable bonds.

The paper-derived pipeline names only MW/logP/TPSA explicitly; the three
count descriptors complete the six-slot block (the 1197-dimensional
molecule vector minus 1024 Morgan bits and 167 key bits leaves exactly
six slots) and use the most conventional definitions:

* HBD: N/O atoms carrying at least one hydrogen
* HBA: all N/O atoms
* rotatable bonds: non-ring single bonds whose endpoints both have
  heavy-atom degree >= 2, minus the exclusions shipped in
  ``data/rotbond_exclude.tsv`` (amide C-N by default)

logP and TPSA are table-driven: contributions live in ``data/*.tsv`` as
(pattern, value) rows and are never hard-coded here, so the tables can
be audited or swapped without touching code.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import UnknownElementError, UntypedAtomError
from .molgraph import SINGLE, Molecule
from .patterns import Pattern, match, parse_pattern

log = logging.getLogger(__name__)

# IUPAC 2021 conventional standard atomic weights.
ATOMIC_WEIGHTS: dict[str, float] = {
    "H": 1.008, "He": 4.0026, "Li": 6.94, "Be": 9.0122, "B": 10.81,
    "C": 12.011, "N": 14.007, "O": 15.999, "F": 18.998, "Ne": 20.180,
    "Na": 22.990, "Mg": 24.305, "Al": 26.982, "Si": 28.085, "P": 30.974,
    "S": 32.06, "Cl": 35.45, "Ar": 39.95, "K": 39.098, "Ca": 40.078,
    "Ti": 47.867, "Cr": 51.996, "Mn": 54.938, "Fe": 55.845, "Co": 58.933,
    "Ni": 58.693, "Cu": 63.546, "Zn": 65.38, "Ga": 69.723, "Ge": 72.630,
    "As": 74.922, "Se": 78.971, "Br": 79.904, "Kr": 83.798, "Rb": 85.468,
    "Sr": 87.62, "Zr": 91.224, "Mo": 95.95, "Ag": 107.87, "Cd": 112.41,
    "Sn": 118.71, "Sb": 121.76, "Te": 127.60, "I": 126.90, "Xe": 131.29,
    "Cs": 132.91, "Ba": 137.33, "W": 183.84, "Pt": 195.08, "Au": 196.97,
    "Hg": 200.59, "Pb": 207.2, "Bi": 208.98,
}

# Exact masses for isotopes commonly written in SMILES; anything else
# falls back to the bare mass number.
ISOTOPE_MASSES: dict[tuple[str, int], float] = {
    ("H", 1): 1.007825, ("H", 2): 2.014102, ("H", 3): 3.016049,
    ("C", 12): 12.0, ("C", 13): 13.003355, ("C", 14): 14.003242,
    ("N", 14): 14.003074, ("N", 15): 15.000109,
    ("O", 16): 15.994915, ("O", 17): 16.999132, ("O", 18): 17.999160,
    ("S", 33): 32.971459, ("S", 34): 33.967867,
    ("Cl", 37): 36.965903, ("Br", 81): 80.916290,
}


@dataclass(frozen=True)
class DescriptorVector:
    """The six per-molecule scalars, in feature-vector order."""

    mol_weight: float
    logp: float
    tpsa: float
    hbd: int
    hba: int
    rot_bonds: int

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.mol_weight, self.logp, self.tpsa, self.hbd, self.hba, self.rot_bonds],
            dtype=np.float64,
        )


# ---------------------------------------------------------------------------
# Table loading (once per process; tables are immutable afterwards)

_crippen_cache: tuple[list, list] | None = None
_tpsa_cache: list | None = None
_rotexclude_cache: list | None = None


def _read_data_file(name: str) -> str:
    path = resources.files("solvo").joinpath(f"data/{name}")
    text = path.read_text(encoding="utf-8")
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    log.debug("loaded table %s (sha256 %s)", name, digest[:16])
    return text


def _data_rows(text: str) -> list[list[str]]:
    rows = []
    for line in text.splitlines():
        line = line.rstrip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split("\t"))
    return rows


def _crippen_tables() -> tuple[list[tuple[Pattern, float, str]], list[tuple[Pattern, float, str]]]:
    global _crippen_cache
    if _crippen_cache is None:
        atom_rows: list[tuple[Pattern, float, str]] = []
        h_rows: list[tuple[Pattern, float, str]] = []
        for row in _data_rows(_read_data_file("crippen.tsv")):
            section, pattern_text, value, label = row[0], row[1], float(row[2]), row[3]
            compiled = parse_pattern(pattern_text)
            if section == "A":
                atom_rows.append((compiled, value, label))
            elif section == "H":
                h_rows.append((compiled, value, label))
            else:
                raise ValueError(f"bad section {section!r} in crippen.tsv")
        _crippen_cache = (atom_rows, h_rows)
    return _crippen_cache


def _tpsa_table() -> list[tuple[Pattern, float, str]]:
    global _tpsa_cache
    if _tpsa_cache is None:
        _tpsa_cache = [
            (parse_pattern(row[0]), float(row[1]), row[2])
            for row in _data_rows(_read_data_file("tpsa.tsv"))
        ]
    return _tpsa_cache


def _rotbond_excludes() -> list[Pattern]:
    global _rotexclude_cache
    if _rotexclude_cache is None:
        _rotexclude_cache = [
            parse_pattern(row[0])
            for row in _data_rows(_read_data_file("rotbond_exclude.tsv"))
        ]
    return _rotexclude_cache


def _first_match(rows, mol: Molecule, atom_index: int):
    for pattern, value, label in rows:
        if match(pattern, mol, anchor=atom_index, limit=1).any_match:
            return value, label
    return None


# ---------------------------------------------------------------------------
# Descriptors


def mol_weight(mol: Molecule) -> float:
    """Sum of standard atomic weights, honoring isotope labels.

    Implicit and bracket-spec hydrogens contribute the standard H weight;
    explicit ``[H]``/``[2H]`` atoms contribute like any other atom.
    """
    total = 0.0
    for atom in mol.atoms:
        if atom.element not in ATOMIC_WEIGHTS:
            raise UnknownElementError(atom.element)
        if atom.isotope is not None:
            total += ISOTOPE_MASSES.get((atom.element, atom.isotope), float(atom.isotope))
        else:
            total += ATOMIC_WEIGHTS[atom.element]
        total += atom.total_h * ATOMIC_WEIGHTS["H"]
    return total


def crippen_logp(mol: Molecule) -> float:
    """Atom-contribution logP over the shipped Crippen-type table.

    Every heavy atom takes the value of its first matching type row;
    hydrogens (implicit or explicit) take the value of the first H row
    matching the atom that carries them.

    Raises:
        UntypedAtomError: a heavy atom matched no row (table gap).
    """
    atom_rows, h_rows = _crippen_tables()
    total = 0.0
    for atom in mol.atoms:
        if atom.atomic_number == 1:
            nbrs = mol.neighbors(atom.index)
            carrier = nbrs[0][0] if nbrs else None
            total += _hydrogen_contribution(h_rows, mol, carrier)
            continue
        hit = _first_match(atom_rows, mol, atom.index)
        if hit is None:
            raise UntypedAtomError(atom.index, "crippen")
        total += hit[0]
        if atom.total_h:
            total += atom.total_h * _hydrogen_contribution(h_rows, mol, atom.index)
    return total


def _hydrogen_contribution(h_rows, mol: Molecule, carrier: int | None) -> float:
    if carrier is None:
        # Bare hydrogen: the catch-all fallback row.
        return h_rows[-1][1]
    hit = _first_match(h_rows, mol, carrier)
    assert hit is not None  # the '*' fallback row always matches
    return hit[0]


def tpsa(mol: Molecule) -> float:
    """Ertl topological polar surface area over N/O environments.

    Atoms with no table entry contribute zero (logged at debug level).
    """
    table = _tpsa_table()
    total = 0.0
    for atom in mol.atoms:
        if atom.element not in ("N", "O"):
            continue
        hit = _first_match(table, mol, atom.index)
        if hit is None:
            log.debug("tpsa: no environment row for atom %d (%s)", atom.index, atom.element)
            continue
        total += hit[0]
    return total


def hbd_count(mol: Molecule) -> int:
    """N/O atoms with at least one attached hydrogen."""
    return sum(
        1
        for a in mol.atoms
        if a.element in ("N", "O") and mol.total_hydrogens(a.index) > 0
    )


def hba_count(mol: Molecule) -> int:
    """All N/O atoms."""
    return sum(1 for a in mol.atoms if a.element in ("N", "O"))


def rot_bonds(mol: Molecule) -> int:
    """Non-ring single bonds between atoms of heavy degree >= 2.

    Bonds matching a shipped exclusion pattern (amide C-N by default) are
    not counted.  The excluded bond of each pattern is the one between
    its last two atoms.
    """
    excluded: set[frozenset[int]] = set()
    for pattern in _rotbond_excludes():
        for mapping in match(pattern, mol).mappings:
            excluded.add(frozenset((mapping[-2], mapping[-1])))

    count = 0
    for bond in mol.bonds:
        if bond.order != SINGLE or bond.in_ring:
            continue
        if mol.degree(bond.a) < 2 or mol.degree(bond.b) < 2:
            continue
        if frozenset((bond.a, bond.b)) in excluded:
            continue
        count += 1
    return count


def descriptor_vector(mol: Molecule) -> DescriptorVector:
    """All six descriptors in the fixed feature order."""
    return DescriptorVector(
        mol_weight=mol_weight(mol),
        logp=crippen_logp(mol),
        tpsa=tpsa(mol),
        hbd=hbd_count(mol),
        hba=hba_count(mol),
        rot_bonds=rot_bonds(mol),
    )
