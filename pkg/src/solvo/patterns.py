"""Substructure patterns: a documented SMARTS subset and its matcher.

Grammar
-------
Atoms are written as in SMILES (organic subset, lowercase aromatic,
bracket atoms), plus these bracket primitives:

* ``#n``    atomic number
* ``Xn``    heavy-atom degree (exactly n)
* ``Hn``    total hydrogen count (exactly n; bare ``H`` means 1)
* ``R``     ring membership (``!R`` for acyclic)
* ``+``/``-`` formal charge (``+``, ``+2``, ``-0`` for exactly neutral, ...)
* ``*``     wildcard atom
* ``!``     negates the following primitive
* ``;`` / ``&`` conjunction separators (both mean AND; separators are
  optional, adjacent primitives are already conjoined)

Bonds: ``-`` ``=`` ``#`` ``:`` exact order, ``~`` any bond.  A bond
written between two aromatic-case atoms defaults to aromatic, otherwise
to single.  An explicit ``-`` matches single bonds only, never aromatic
ones.  Branches and ring-closure digits work as in SMILES.  Dots
(disconnected queries) are rejected: query graphs must be connected.

Anything else that is legal SMARTS (``,`` disjunction, recursive
``$(...)``, ring-bond ``@``, ...) fails loudly with
:class:`UnsupportedPrimitiveError` rather than silently mis-matching.

Matching enumerates *embeddings*: injective constraint-satisfying maps
from query atoms to molecule atoms, in deterministic order (candidates
tried by ascending molecule atom index).  A benzene query matched
against benzene therefore yields 12 mappings (6 rotations x 2
reflections).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    PatternSyntaxError,
    SearchBudgetExceeded,
    UnsupportedPrimitiveError,
)
from .molgraph import (
    AROMATIC,
    AROMATIC_ORGANIC,
    ATOMIC_NUMBERS,
    DOUBLE,
    ORGANIC_SUBSET,
    SINGLE,
    TRIPLE,
    Molecule,
)

BOND_ANY = 0

DEFAULT_SEARCH_BUDGET = 10**6

# Constraint kinds: ("elem", Z), ("elem_case", (Z, aromatic)),
# ("aromatic", flag), ("degree", n), ("hcount", n), ("ring", flag),
# ("charge", q).  Each carries a negation flag.
_Constraint = tuple[str, object, bool]


@dataclass
class QueryAtom:
    constraints: list[_Constraint] = field(default_factory=list)
    written_aromatic: bool | None = None  # case of the element as written

    def matches(self, mol: Molecule, idx: int) -> bool:
        atom = mol.atoms[idx]
        for kind, value, negated in self.constraints:
            if kind == "elem":
                ok = atom.atomic_number == value
            elif kind == "elem_case":
                z, aromatic = value  # type: ignore[misc]
                ok = atom.atomic_number == z and atom.is_aromatic == aromatic
            elif kind == "aromatic":
                ok = atom.is_aromatic == value
            elif kind == "degree":
                ok = mol.degree(idx) == value
            elif kind == "hcount":
                ok = mol.total_hydrogens(idx) == value
            elif kind == "ring":
                ok = atom.in_ring == value
            elif kind == "charge":
                ok = atom.formal_charge == value
            else:  # pragma: no cover - parser only emits the kinds above
                raise AssertionError(kind)
            if ok == negated:
                return False
        return True


@dataclass
class QueryBond:
    a: int
    b: int
    kind: int  # SINGLE/DOUBLE/TRIPLE/AROMATIC or BOND_ANY

    def matches(self, order: int) -> bool:
        return self.kind == BOND_ANY or self.kind == order


@dataclass
class Pattern:
    """Compiled substructure query."""

    atoms: list[QueryAtom]
    bonds: list[QueryBond]
    source: str
    _adjacency: list[list[tuple[int, int]]] = field(default_factory=list, repr=False)

    @property
    def num_atoms(self) -> int:
        return len(self.atoms)

    def neighbors(self, i: int) -> list[tuple[int, int]]:
        return self._adjacency[i]


@dataclass
class MatchSet:
    """All embeddings of a pattern into one molecule."""

    mappings: list[tuple[int, ...]]

    @property
    def match_count(self) -> int:
        return len(self.mappings)

    @property
    def any_match(self) -> bool:
        return bool(self.mappings)


def parse_pattern(text: str) -> Pattern:
    """Compile pattern text into a :class:`Pattern`.

    Raises:
        PatternSyntaxError: malformed text, with position.
        UnsupportedPrimitiveError: legal SMARTS outside the subset.
    """
    if not text:
        raise PatternSyntaxError(0, "empty pattern")

    atoms: list[QueryAtom] = []
    bonds: list[QueryBond] = []
    pos = 0
    prev_atom: int | None = None
    pending: int | None = None  # bond kind, or None for default
    pending_set = False
    branch_stack: list[int] = []
    open_rings: dict[int, tuple[int, int | None, bool]] = {}

    def bond_kind(a: int, b: int, explicit: int | None, was_set: bool) -> int:
        if was_set and explicit is not None:
            return explicit
        if atoms[a].written_aromatic and atoms[b].written_aromatic:
            return AROMATIC
        return SINGLE

    def attach(idx: int) -> None:
        nonlocal prev_atom, pending, pending_set
        if prev_atom is not None:
            bonds.append(QueryBond(prev_atom, idx, bond_kind(prev_atom, idx, pending, pending_set)))
        elif pending_set:
            raise PatternSyntaxError(pos, "bond with no preceding atom")
        prev_atom = idx
        pending = None
        pending_set = False

    while pos < len(text):
        ch = text[pos]

        if ch in "-=#:~":
            if pending_set:
                raise PatternSyntaxError(pos, "two bond symbols in a row")
            pending = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC, "~": BOND_ANY}[ch]
            pending_set = True
            pos += 1
            continue

        if ch == "(":
            if prev_atom is None:
                raise PatternSyntaxError(pos, "branch before any atom")
            branch_stack.append(prev_atom)
            pos += 1
            continue

        if ch == ")":
            if not branch_stack:
                raise PatternSyntaxError(pos, "unmatched closing parenthesis")
            prev_atom = branch_stack.pop()
            pos += 1
            continue

        if ch.isdigit():
            if prev_atom is None:
                raise PatternSyntaxError(pos, "ring closure before any atom")
            num = int(ch)
            if num in open_rings:
                other, okind, oset = open_rings.pop(num)
                if pending_set and oset and pending != okind:
                    raise PatternSyntaxError(pos, f"conflicting ring-closure bonds for {num}")
                if pending_set:
                    kind = pending  # type: ignore[assignment]
                elif oset:
                    kind = okind  # type: ignore[assignment]
                else:
                    kind = bond_kind(other, prev_atom, None, False)
                bonds.append(QueryBond(other, prev_atom, kind))  # type: ignore[arg-type]
            else:
                open_rings[num] = (prev_atom, pending, pending_set)
            pending = None
            pending_set = False
            pos += 1
            continue

        if ch == "*":
            atoms.append(QueryAtom(constraints=[]))
            attach(len(atoms) - 1)
            pos += 1
            continue

        if ch == "[":
            qatom, consumed = _parse_bracket_query(text, pos)
            atoms.append(qatom)
            attach(len(atoms) - 1)
            pos += consumed
            continue

        if ch.isalpha():
            qatom, consumed = _parse_plain_query_atom(text, pos)
            atoms.append(qatom)
            attach(len(atoms) - 1)
            pos += consumed
            continue

        if ch in ",$@.":
            raise UnsupportedPrimitiveError(ch, pos)

        raise PatternSyntaxError(pos, f"unexpected character {ch!r}")

    if pending_set:
        raise PatternSyntaxError(len(text) - 1, "dangling bond at end of pattern")
    if branch_stack:
        raise PatternSyntaxError(len(text) - 1, "unclosed branch parenthesis")
    if open_rings:
        raise PatternSyntaxError(len(text) - 1, f"unclosed ring closure {min(open_rings)}")
    if not atoms:
        raise PatternSyntaxError(0, "pattern has no atoms")

    pat = Pattern(atoms=atoms, bonds=bonds, source=text)
    pat._adjacency = [[] for _ in atoms]
    for bidx, bond in enumerate(bonds):
        pat._adjacency[bond.a].append((bond.b, bidx))
        pat._adjacency[bond.b].append((bond.a, bidx))

    _check_connected(pat)
    return pat


def _parse_plain_query_atom(text: str, pos: int) -> tuple[QueryAtom, int]:
    ch = text[pos]
    if ch.isupper():
        symbol = ch
        consumed = 1
        if ch in ("C", "B") and pos + 1 < len(text) and text[pos + 1] in ("l", "r"):
            two = ch + text[pos + 1]
            if two in ("Cl", "Br"):
                symbol = two
                consumed = 2
        if symbol not in ORGANIC_SUBSET:
            raise PatternSyntaxError(pos, f"element {symbol!r} must be written in brackets")
        z = ATOMIC_NUMBERS[symbol]
        atom = QueryAtom(constraints=[("elem_case", (z, False), False)], written_aromatic=False)
        return atom, consumed
    if ch in AROMATIC_ORGANIC:
        z = ATOMIC_NUMBERS[ch.upper()]
        atom = QueryAtom(constraints=[("elem_case", (z, True), False)], written_aromatic=True)
        return atom, 1
    raise PatternSyntaxError(pos, f"unexpected atom symbol {ch!r}")


def _parse_bracket_query(text: str, start: int) -> tuple[QueryAtom, int]:
    pos = start + 1  # past '['
    constraints: list[_Constraint] = []
    written_aromatic: bool | None = None
    saw_primitive = False

    while pos < len(text) and text[pos] != "]":
        ch = text[pos]

        if ch in ";&":
            pos += 1
            continue

        negated = False
        if ch == "!":
            negated = True
            pos += 1
            if pos >= len(text):
                raise PatternSyntaxError(pos, "dangling '!'")
            ch = text[pos]

        if ch == "#":
            pos += 1
            digits = _read_digits(text, pos)
            if not digits:
                raise PatternSyntaxError(pos, "'#' needs an atomic number")
            constraints.append(("elem", int(digits), negated))
            pos += len(digits)
        elif ch == "X":
            pos += 1
            digits = _read_digits(text, pos)
            if not digits:
                raise PatternSyntaxError(pos, "'X' needs a degree digit")
            constraints.append(("degree", int(digits), negated))
            pos += len(digits)
        elif ch == "H":
            pos += 1
            digits = _read_digits(text, pos)
            count = int(digits) if digits else 1
            constraints.append(("hcount", count, negated))
            pos += len(digits)
        elif ch == "R":
            pos += 1
            constraints.append(("ring", True, negated))
        elif ch in "+-":
            sign = 1 if ch == "+" else -1
            pos += 1
            run = 1
            while pos < len(text) and text[pos] == ch:
                run += 1
                pos += 1
            digits = _read_digits(text, pos)
            if digits:
                charge = sign * int(digits)
                pos += len(digits)
            else:
                charge = sign * run
            constraints.append(("charge", charge, negated))
        elif ch == "*":
            pos += 1
            if negated:
                raise PatternSyntaxError(pos, "'!*' matches nothing")
        elif ch.isupper():
            symbol = ch
            consumed = 1
            if pos + 1 < len(text) and text[pos + 1].islower():
                two = ch + text[pos + 1]
                # Two-letter element only when not a primitive letter pair
                # like 'Ra' inside e.g. '[!R]a...' -- bracket context only.
                if two in ATOMIC_NUMBERS:
                    symbol = two
                    consumed = 2
            if symbol not in ATOMIC_NUMBERS:
                raise PatternSyntaxError(pos, f"unknown element {symbol!r}")
            constraints.append(("elem_case", (ATOMIC_NUMBERS[symbol], False), negated))
            if not negated and written_aromatic is None:
                written_aromatic = False
            pos += consumed
        elif ch.islower():
            symbol = ch
            consumed = 1
            if ch in ("s", "a") and pos + 1 < len(text) and text[pos + 1] in ("e", "s"):
                two = ch + text[pos + 1]
                if two in ("se", "as"):
                    symbol = two
                    consumed = 2
            if symbol not in AROMATIC_ORGANIC and symbol not in ("se", "as"):
                raise UnsupportedPrimitiveError(symbol, pos)
            z = ATOMIC_NUMBERS[symbol.capitalize() if len(symbol) == 2 else symbol.upper()]
            constraints.append(("elem_case", (z, True), negated))
            if not negated and written_aromatic is None:
                written_aromatic = True
            pos += consumed
        elif ch in ",$@":
            raise UnsupportedPrimitiveError(ch, pos)
        else:
            raise PatternSyntaxError(pos, f"unexpected character {ch!r} in bracket")
        saw_primitive = True

    if pos >= len(text):
        raise PatternSyntaxError(start, "unterminated bracket")
    if not saw_primitive:
        raise PatternSyntaxError(start, "empty bracket atom")
    pos += 1  # ']'
    return QueryAtom(constraints=constraints, written_aromatic=written_aromatic), pos - start


def _read_digits(text: str, pos: int) -> str:
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    return text[pos:end]


def _check_connected(pat: Pattern) -> None:
    seen = {0}
    stack = [0]
    while stack:
        cur = stack.pop()
        for nbr, _ in pat.neighbors(cur):
            if nbr not in seen:
                seen.add(nbr)
                stack.append(nbr)
    if len(seen) != pat.num_atoms:
        raise PatternSyntaxError(0, "query graph must be connected")


# ---------------------------------------------------------------------------
# Matching


def match(
    pattern: Pattern,
    mol: Molecule,
    budget: int = DEFAULT_SEARCH_BUDGET,
    limit: int | None = None,
    anchor: int | None = None,
) -> MatchSet:
    """Find embeddings of ``pattern`` in ``mol`` by backtracking search.

    Args:
        pattern: compiled query.
        mol: parsed molecule.
        budget: cap on explored assignments; exceeding it raises
            :class:`SearchBudgetExceeded` (signals a pathological pair).
        limit: stop after this many embeddings (None = enumerate all).
        anchor: if given, query atom 0 is pinned to this molecule atom
            (used by the descriptor atom-typing tables).

    Returns:
        MatchSet with mappings in deterministic order: candidates are
        tried by ascending molecule atom index at every level.
    """
    order = _visit_order(pattern)
    n_q = pattern.num_atoms
    mappings: list[tuple[int, ...]] = []
    assignment: dict[int, int] = {}
    used: set[int] = set()
    explored = 0

    def candidates_for(q: int) -> list[int]:
        anchored: list[int] | None = None
        for nbr, bidx in pattern.neighbors(q):
            if nbr in assignment:
                mol_nbr = assignment[nbr]
                qbond = pattern.bonds[bidx]
                cands = [
                    j
                    for j, mbidx in mol.neighbors(mol_nbr)
                    if qbond.matches(mol.bonds[mbidx].order)
                ]
                if anchored is None:
                    anchored = cands
                else:
                    anchored = [c for c in anchored if c in cands]
        if anchored is None:
            return list(range(mol.num_atoms))
        return sorted(set(anchored))

    def extend(level: int) -> bool:
        nonlocal explored
        if level == n_q:
            mappings.append(tuple(assignment[q] for q in range(n_q)))
            return limit is not None and len(mappings) >= limit

        q = order[level]
        if level == 0 and anchor is not None:
            cands = [anchor]
        else:
            cands = candidates_for(q)

        for j in cands:
            if j in used:
                continue
            explored += 1
            if explored > budget:
                raise SearchBudgetExceeded(
                    f"pattern {pattern.source!r} exceeded search budget {budget}"
                )
            if not pattern.atoms[q].matches(mol, j):
                continue
            # Verify all bonds back to already-assigned query atoms.
            ok = True
            for nbr, bidx in pattern.neighbors(q):
                if nbr in assignment:
                    mbond = mol.bond_between(j, assignment[nbr])
                    if mbond is None or not pattern.bonds[bidx].matches(mbond.order):
                        ok = False
                        break
            if not ok:
                continue
            assignment[q] = j
            used.add(j)
            stop = extend(level + 1)
            used.discard(j)
            del assignment[q]
            if stop:
                return True
        return False

    extend(0)
    return MatchSet(mappings=mappings)


def has_match(pattern: Pattern, mol: Molecule, budget: int = DEFAULT_SEARCH_BUDGET) -> bool:
    """True if at least one embedding exists."""
    return match(pattern, mol, budget=budget, limit=1).any_match


def match_count(pattern: Pattern, mol: Molecule, budget: int = DEFAULT_SEARCH_BUDGET) -> int:
    return match(pattern, mol, budget=budget).match_count


def _visit_order(pattern: Pattern) -> list[int]:
    """BFS order from query atom 0; queries are connected so this covers all."""
    order = [0]
    seen = {0}
    queue = [0]
    while queue:
        cur = queue.pop(0)
        for nbr, _ in pattern.neighbors(cur):
            if nbr not in seen:
                seen.add(nbr)
                order.append(nbr)
                queue.append(nbr)
    return order
