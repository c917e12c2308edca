"""Morgan (extended-connectivity) and structural-key fingerprints.

Morgan bits come from iterative neighborhood hashing: identifiers start
from :func:`solvo.molgraph.atom_invariant`, and each iteration hashes
(current identifier, sorted list of (bond order, neighbor identifier)).
Environments covering an identical atom set are deduplicated, keeping
the earliest iteration (ties broken by the smaller identifier), and each
surviving identifier sets bit ``id mod nbits``.  The hash is a fixed
64-bit FNV-1a mix, so fingerprints are bit-identical across runs,
platforms and thread counts.

Structural keys are the shipped 167-entry port of the public 166-key
MDL set (bit 0 reserved).  Definitions live in ``data/maccs_keys.txt``
as patterns in the :mod:`solvo.patterns` grammar or builtin predicates;
keys the grammar cannot express exactly are approximated and flagged
``APPROX`` in their comments.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from ._hash import fnv1a64
from .errors import KeyFileError
from .molgraph import AROMATIC, Molecule, atom_invariant
from .patterns import Pattern, match, parse_pattern

MORGAN_BITS = 1024
MORGAN_RADIUS = 2
KEY_BITS = 167


@dataclass(frozen=True)
class BitVector:
    """Fixed-length bit vector with packed storage."""

    length: int
    packed: bytes

    @classmethod
    def from_indices(cls, length: int, indices) -> "BitVector":
        buf = bytearray((length + 7) // 8)
        for i in indices:
            if not 0 <= i < length:
                raise ValueError(f"bit index {i} out of range for length {length}")
            buf[i // 8] |= 1 << (i % 8)
        return cls(length=length, packed=bytes(buf))

    def get(self, i: int) -> bool:
        return bool(self.packed[i // 8] >> (i % 8) & 1)

    @property
    def set_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if self.get(i))

    @property
    def popcount(self) -> int:
        return sum(byte.bit_count() for byte in self.packed)

    def to_array(self) -> np.ndarray:
        arr = np.zeros(self.length, dtype=np.float64)
        arr[list(self.set_indices)] = 1.0
        return arr


# ---------------------------------------------------------------------------
# Morgan fingerprint


def morgan_environments(mol: Molecule, radius: int) -> list[tuple[int, frozenset[int], int]]:
    """Surviving (iteration, atom set, identifier) environments.

    Debug accessor used by the folding-consistency checks; the
    fingerprint is just ``id mod nbits`` over the identifiers here.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    n = mol.num_atoms
    ids = [atom_invariant(mol, i) for i in range(n)]
    covers = [frozenset((i,)) for i in range(n)]
    envs: list[tuple[int, frozenset[int], int]] = [
        (0, covers[i], ids[i]) for i in range(n)
    ]

    for iteration in range(1, radius + 1):
        new_ids = list(ids)
        new_covers = list(covers)
        for i in range(n):
            nbrs = mol.neighbors(i)
            if not nbrs:
                continue
            pairs = sorted((mol.bonds[b].order, ids[j]) for j, b in nbrs)
            new_ids[i] = fnv1a64((ids[i],) + tuple(pairs))
            cover = covers[i]
            for j, _ in nbrs:
                cover |= covers[j]
            new_covers[i] = cover
            envs.append((iteration, cover, new_ids[i]))
        ids = new_ids
        covers = new_covers

    best: dict[frozenset[int], tuple[int, int]] = {}
    for iteration, cover, ident in envs:
        key = (iteration, ident)
        if cover not in best or key < best[cover]:
            best[cover] = key
    survivors = [(it, cover, ident) for cover, (it, ident) in best.items()]
    survivors.sort(key=lambda e: (e[0], e[2], sorted(e[1])))
    return survivors


def morgan_identifiers(mol: Molecule, radius: int = MORGAN_RADIUS) -> tuple[int, ...]:
    """Unfolded 64-bit identifiers that will set fingerprint bits."""
    return tuple(ident for _, _, ident in morgan_environments(mol, radius))


def morgan_fingerprint(
    mol: Molecule, radius: int = MORGAN_RADIUS, nbits: int = MORGAN_BITS
) -> BitVector:
    """Binary Morgan fingerprint folded to ``nbits`` by modulo.

    Args:
        mol: parsed molecule.
        radius: neighborhood iterations (2 = ECFP4-equivalent default).
        nbits: fold size; must be a power of two.
    """
    if nbits <= 0 or nbits & (nbits - 1):
        raise ValueError("nbits must be a power of two")
    indices = {ident % nbits for ident in morgan_identifiers(mol, radius)}
    return BitVector.from_indices(nbits, indices)


# ---------------------------------------------------------------------------
# Structural keys


@dataclass(frozen=True)
class KeyDefinition:
    key_index: int
    min_count: int
    pattern_text: str
    comment: str
    pattern: Pattern | None  # None for builtins and the reserved slot


_BUILTIN_NAMES = (
    "isotope",
    "fragments",
    "rings",
    "aromatic_rings",
    "aromatic_atoms",
    "charged_atoms",
    "ring_size",
    "ring_min_size",
    "ring_link_bonds",
    "elements",
    "any",
)


def load_key_file(path: str | Path | None = None) -> list[KeyDefinition]:
    """Load and compile a structural-key definition file.

    The file must hold exactly 167 data lines ``index <TAB> min_count
    <TAB> pattern-or-builtin <TAB> comment`` with unique indices 0..166
    and index 0 declared ``RESERVED``.

    Raises:
        KeyFileError: on any malformed line or structural violation.
    """
    if path is None:
        text = resources.files("solvo").joinpath("data/maccs_keys.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")

    defs: dict[int, KeyDefinition] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise KeyFileError(lineno, f"expected 4 tab-separated fields, got {len(parts)}")
        try:
            index = int(parts[0])
            min_count = int(parts[1])
        except ValueError as exc:
            raise KeyFileError(lineno, str(exc)) from None
        spec, comment = parts[2], parts[3]
        if index in defs:
            raise KeyFileError(lineno, f"duplicate key index {index}")
        if not 0 <= index < KEY_BITS:
            raise KeyFileError(lineno, f"key index {index} out of range")
        if index == 0:
            if spec != "RESERVED":
                raise KeyFileError(lineno, "index 0 must be RESERVED")
            defs[0] = KeyDefinition(0, 0, spec, comment, None)
            continue
        if spec == "RESERVED":
            raise KeyFileError(lineno, "only index 0 may be RESERVED")
        if min_count < 1:
            raise KeyFileError(lineno, "min_count must be >= 1")
        if spec.startswith("@"):
            _validate_builtin(spec, lineno)
            defs[index] = KeyDefinition(index, min_count, spec, comment, None)
        else:
            try:
                compiled = parse_pattern(spec)
            except Exception as exc:
                raise KeyFileError(lineno, f"bad pattern {spec!r}: {exc}") from None
            defs[index] = KeyDefinition(index, min_count, spec, comment, compiled)

    if len(defs) != KEY_BITS:
        raise KeyFileError(0, f"expected {KEY_BITS} key definitions, found {len(defs)}")
    return [defs[i] for i in range(KEY_BITS)]


def _split_builtin(spec: str) -> tuple[str, str | None]:
    body = spec[1:]
    if ":" in body:
        name, arg = body.split(":", 1)
        return name, arg
    return body, None


def _validate_builtin(spec: str, lineno: int) -> None:
    name, arg = _split_builtin(spec)
    if name not in _BUILTIN_NAMES:
        raise KeyFileError(lineno, f"unknown builtin {name!r}")
    if name in ("ring_size", "ring_min_size"):
        if not (arg and arg.isdigit()):
            raise KeyFileError(lineno, f"builtin {name} needs a numeric argument")
    if name == "elements" and not arg:
        raise KeyFileError(lineno, "builtin elements needs a symbol list")
    if name == "any":
        if not arg:
            raise KeyFileError(lineno, "builtin any needs patterns")
        for sub in arg.split("|"):
            try:
                parse_pattern(sub)
            except Exception as exc:
                raise KeyFileError(lineno, f"bad pattern {sub!r}: {exc}") from None


def _builtin_count(spec: str, mol: Molecule) -> int:
    name, arg = _split_builtin(spec)
    if name == "isotope":
        return sum(1 for a in mol.atoms if a.isotope is not None)
    if name == "fragments":
        return mol.num_fragments()
    if name == "rings":
        return len(mol.rings)
    if name == "aromatic_rings":
        count = 0
        for ring in mol.rings:
            atoms_ok = all(mol.atoms[i].is_aromatic for i in ring)
            bonds_ok = all(
                (b := mol.bond_between(ring[k], ring[(k + 1) % len(ring)])) is not None
                and b.order == AROMATIC
                for k in range(len(ring))
            )
            if atoms_ok and bonds_ok:
                count += 1
        return count
    if name == "aromatic_atoms":
        return sum(1 for a in mol.atoms if a.is_aromatic)
    if name == "charged_atoms":
        return sum(1 for a in mol.atoms if a.formal_charge != 0)
    if name == "ring_size":
        size = int(arg)  # type: ignore[arg-type]
        return sum(1 for r in mol.rings if len(r) == size)
    if name == "ring_min_size":
        size = int(arg)  # type: ignore[arg-type]
        return sum(1 for r in mol.rings if len(r) >= size)
    if name == "ring_link_bonds":
        return sum(
            1
            for b in mol.bonds
            if not b.in_ring and mol.atoms[b.a].in_ring and mol.atoms[b.b].in_ring
        )
    if name == "elements":
        wanted = set((arg or "").split(","))
        return sum(1 for a in mol.atoms if a.element in wanted)
    if name == "any":
        total = 0
        for sub in (arg or "").split("|"):
            total += match(_compiled_subpattern(sub), mol).match_count
        return total
    raise AssertionError(name)


_subpattern_cache: dict[str, Pattern] = {}


def _compiled_subpattern(text: str) -> Pattern:
    if text not in _subpattern_cache:
        _subpattern_cache[text] = parse_pattern(text)
    return _subpattern_cache[text]


_default_keys: list[KeyDefinition] | None = None


def default_keys() -> list[KeyDefinition]:
    global _default_keys
    if _default_keys is None:
        _default_keys = load_key_file()
    return _default_keys


def structural_keys(mol: Molecule, keys: list[KeyDefinition] | None = None) -> BitVector:
    """167-bit structural-key fingerprint (bit 0 always unset).

    Bit k is set iff key k's pattern reaches ``min_count`` embeddings
    (or its builtin predicate count does).
    """
    table = keys if keys is not None else default_keys()
    indices: list[int] = []
    for kd in table:
        if kd.key_index == 0:
            continue
        if kd.pattern is not None:
            count = match(kd.pattern, mol, limit=kd.min_count).match_count
        else:
            count = _builtin_count(kd.pattern_text, mol)
        if count >= kd.min_count:
            indices.append(kd.key_index)
    return BitVector.from_indices(KEY_BITS, indices)


def find_key(comment_substring: str, keys: list[KeyDefinition] | None = None) -> KeyDefinition:
    """First key whose comment contains the substring (test convenience)."""
    table = keys if keys is not None else default_keys()
    for kd in table:
        if comment_substring.lower() in kd.comment.lower():
            return kd
    raise KeyError(comment_substring)
