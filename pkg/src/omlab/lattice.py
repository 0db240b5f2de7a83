"""Finite ortholattices, built from Greechie pasting or explicit tables.

Element indexing: 0 is the bottom, 1 is the top, then atoms, then coatoms.
All operation tables are dense numpy arrays so that order, meet, join and
orthocomplement are O(1) lookups during equation checking.  Every constructor
verifies the ortholattice laws exhaustively before returning; `from_greechie`
additionally requires the orthomodular law, which the loop lemma guarantees
for valid diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .diagram import ALPHABET, GreechieDiagram


class LatticeError(ValueError):
    """A table set fails an ortholattice (or pasting) requirement."""

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class LatticeSource:
    kind: str  # greechie-pasting | explicit-tables | fixture
    provenance: str


@dataclass(frozen=True, eq=False)
class FiniteOrthoLattice:
    size: int
    comp: np.ndarray  # (size,)
    meet: np.ndarray  # (size, size)
    join: np.ndarray  # (size, size)
    leq: np.ndarray  # (size, size) bool
    names: tuple[str, ...]
    source: LatticeSource
    atom_of: dict[int, int] | None = None  # diagram atom -> element index
    name: str | None = None

    zero: int = 0
    one: int = 1

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def element(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise LatticeError("name", f"unknown element name {name!r}") from None

    def atoms(self) -> list[int]:
        """Elements covering the bottom."""
        out = []
        for x in range(self.size):
            if x == self.zero:
                continue
            below = [z for z in range(self.size) if self.leq[z, x] and z != x]
            if below == [self.zero]:
                out.append(x)
        return out

    def __repr__(self) -> str:
        tag = self.name or self.source.provenance
        return f"<FiniteOrthoLattice {tag} size={self.size}>"


def _verify_ortholattice(
    comp: np.ndarray, meet: np.ndarray, join: np.ndarray, names: Sequence[str]
) -> np.ndarray:
    """Check every ortholattice law; return the derived order table."""
    n = len(comp)
    idx = np.arange(n)

    def witness(mask: np.ndarray) -> str:
        flat = np.argwhere(~mask)
        first = tuple(int(v) for v in flat[0])
        return ", ".join(names[v] for v in first)

    if not np.array_equal(comp[comp], idx):
        bad = int(np.nonzero(comp[comp] != idx)[0][0])
        raise LatticeError("involution", f"x'' != x at {names[bad]}")
    if not np.array_equal(meet, meet.T):
        raise LatticeError("commutative", f"meet not commutative at {witness(meet == meet.T)}")
    if not np.array_equal(join, join.T):
        raise LatticeError("commutative", f"join not commutative at {witness(join == join.T)}")
    dm = comp[join[comp[:, None], comp[None, :]]]
    if not np.array_equal(meet, dm):
        raise LatticeError("de-morgan", f"x^y != (x'vy')' at {witness(meet == dm)}")
    ok = join[idx[:, None], meet] == idx[:, None]
    if not ok.all():
        raise LatticeError("absorption", f"xv(x^y) != x at {witness(ok)}")
    ok = meet[idx[:, None], join] == idx[:, None]
    if not ok.all():
        raise LatticeError("absorption", f"x^(xvy) != x at {witness(ok)}")
    assoc = (
        meet[meet[:, :, None], idx[None, None, :]]
        == meet[idx[:, None, None], meet[None, :, :]]
    )
    if not assoc.all():
        x, y, z = (int(v) for v in np.argwhere(~assoc)[0])
        raise LatticeError(
            "associative",
            f"meet not associative at {names[x]}, {names[y]}, {names[z]}",
        )
    leq = meet == idx[:, None]
    # complements behave: x ^ x' = 0 and x v x' = 1 for the derived bounds
    bottoms = np.nonzero((meet == idx[:, None]).all(axis=1))[0]
    if len(bottoms) != 1:
        raise LatticeError("bounds", "no unique bottom element")
    zero = int(bottoms[0])
    one = int(comp[zero])
    if not (meet[one] == idx).all():
        raise LatticeError("bounds", "0' is not the top element")
    if not (meet[idx, comp] == zero).all():
        bad = int(np.nonzero(meet[idx, comp] != zero)[0][0])
        raise LatticeError("complement", f"x ^ x' != 0 at {names[bad]}")
    if zero != 0 or one != 1:
        raise LatticeError("bounds", "element 0 must be the bottom and 1 the top")
    return leq


def orthomodular_witness(L: FiniteOrthoLattice) -> tuple[int, int] | None:
    """First pair x <= y with x v (x' ^ y) != y, or None when orthomodular."""
    n = L.size
    idx = np.arange(n)
    m2 = L.meet[L.comp[:, None], idx[None, :]]
    j = L.join[idx[:, None], m2]
    ok = ~L.leq | (j == idx[None, :])
    if ok.all():
        return None
    x, y = np.argwhere(~ok)[0]
    return int(x), int(y)


def is_orthomodular(L: FiniteOrthoLattice) -> tuple[bool, tuple[int, int] | None]:
    w = orthomodular_witness(L)
    return w is None, w


def commutes(L: FiniteOrthoLattice, a: int, b: int) -> bool:
    """a C b: a = (a^b) v (a^b')."""
    return int(L.join[L.meet[a, b], L.meet[a, L.comp[b]]]) == a


def _pasting_structure(d: GreechieDiagram):
    """Element layout for a pasted diagram: complement pairs from 2-blocks."""
    partner: dict[int, int] = {}
    block_count = [0] * d.n_atoms
    for blk in d.blocks:
        for a in blk:
            block_count[a] += 1
    for blk in d.blocks:
        if len(blk) == 2:
            a, b = blk
            if block_count[a] > 1 or block_count[b] > 1:
                raise LatticeError(
                    "pasting",
                    f"atom of 2-atom block {blk} occurs in another block; "
                    "its complement would be overdetermined",
                )
            partner[a] = b
            partner[b] = a
    return partner


def from_greechie(
    d: GreechieDiagram, *, name: str | None = None
) -> FiniteOrthoLattice:
    """Paste a diagram into an ortholattice and verify it is orthomodular.

    Elements: bottom, top, one per atom, one coatom per atom (except that the
    two atoms of a 2-atom block are each other's complements).  The order is
    generated by a <= b' for distinct co-blocked atoms; meets are unique
    greatest lower bounds (unique by the loop lemma).
    """
    partner = _pasting_structure(d)
    A = d.n_atoms
    elem_of_atom = {a: 2 + a for a in range(A)}
    coatom_elems: dict[int, int] = {}
    nxt = 2 + A
    for a in range(A):
        if a in partner:
            coatom_elems[a] = elem_of_atom[partner[a]]
        else:
            coatom_elems[a] = nxt
            nxt += 1
    n = nxt
    atom_names = ["a" + (ALPHABET[a] if A <= len(ALPHABET) else str(a)) for a in range(A)]
    names = ["0", "1"] + atom_names + [""] * (n - 2 - A)
    comp = np.zeros(n, dtype=np.intp)
    comp[0], comp[1] = 1, 0
    for a in range(A):
        comp[elem_of_atom[a]] = coatom_elems[a]
        comp[coatom_elems[a]] = elem_of_atom[a]
        if a not in partner:
            names[coatom_elems[a]] = atom_names[a] + "'"

    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, 1] = True
    for blk in d.blocks:
        for a in blk:
            for b in blk:
                if a != b:
                    leq[elem_of_atom[a], comp[elem_of_atom[b]]] = True

    meet = np.zeros((n, n), dtype=np.intp)
    for x in range(n):
        for y in range(x, n):
            lb = leq[:, x] & leq[:, y]
            cand = np.nonzero(lb)[0]
            greatest = cand[(lb[:, None] <= leq[:, cand]).all(axis=0)]
            if len(greatest) != 1:
                raise LatticeError(
                    "glb",
                    f"no unique greatest lower bound for ({names[x]}, {names[y]}); "
                    "the diagram does not paste to a lattice",
                )
            meet[x, y] = meet[y, x] = int(greatest[0])
    join = comp[meet[comp[:, None], comp[None, :]]]
    leq_checked = _verify_ortholattice(comp, meet, join, names)
    L = FiniteOrthoLattice(
        size=n,
        comp=comp,
        meet=meet,
        join=join,
        leq=leq_checked,
        names=tuple(names),
        source=LatticeSource("greechie-pasting", str(d)),
        atom_of={a: elem_of_atom[a] for a in range(A)},
        name=name or d.label,
    )
    w = orthomodular_witness(L)
    if w is not None:
        raise LatticeError(
            "orthomodular",
            f"pasting is not orthomodular: witness ({names[w[0]]}, {names[w[1]]})",
        )
    return L


def from_tables(
    comp: Sequence[int],
    meet: Sequence[Sequence[int]],
    join: Sequence[Sequence[int]] | None = None,
    *,
    names: Sequence[str] | None = None,
    name: str | None = None,
    provenance: str = "tables",
) -> FiniteOrthoLattice:
    """Build a lattice from explicit tables; join defaults to the De Morgan dual.

    All invariants are verified exhaustively; violations raise LatticeError
    with witness elements.  Unlike `from_greechie` the result need not be
    orthomodular (O6 is the canonical example).
    """
    comp_a = np.asarray(comp, dtype=np.intp)
    meet_a = np.asarray(meet, dtype=np.intp)
    n = len(comp_a)
    if meet_a.shape != (n, n):
        raise LatticeError("shape", "meet table must be square over the element set")
    if join is None:
        join_a = comp_a[meet_a[comp_a[:, None], comp_a[None, :]]]
    else:
        join_a = np.asarray(join, dtype=np.intp)
    names_t = tuple(names) if names is not None else tuple(f"e{i}" for i in range(n))
    leq = _verify_ortholattice(comp_a, meet_a, join_a, names_t)
    return FiniteOrthoLattice(
        size=n,
        comp=comp_a,
        meet=meet_a,
        join=join_a,
        leq=leq,
        names=names_t,
        source=LatticeSource("explicit-tables", provenance),
        name=name,
    )


def parse_table_file(text: str, *, name: str | None = None) -> FiniteOrthoLattice:
    """Explicit-table text format: `elements:` names, `comp:` line, then the
    meet matrix given row by row in element names."""
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    elems: list[str] = []
    comp_names: list[str] = []
    rows: list[list[str]] = []
    mode = None
    for ln in lines:
        if ln.startswith("name:"):
            name = name or ln.split(":", 1)[1].strip()
        elif ln.startswith("elements:"):
            elems = ln.split(":", 1)[1].split()
        elif ln.startswith("comp:"):
            comp_names = ln.split(":", 1)[1].split()
        elif ln.startswith("meet:"):
            mode = "meet"
        elif mode == "meet":
            rows.append(ln.split())
    if not elems or len(comp_names) != len(elems) or len(rows) != len(elems):
        raise LatticeError("format", "table file needs elements, comp and meet rows")
    index = {e: i for i, e in enumerate(elems)}
    comp = [index[c] for c in comp_names]
    meet = [[index[v] for v in row] for row in rows]
    return from_tables(comp, meet, names=elems, name=name, provenance=name or "table")


def wagon_wheel_diagram(n: int) -> GreechieDiagram:
    """Godowski wheel Gn: a rim of 2n blocks whose spokes tie the hub to the
    middle atom of every second rim block."""
    if n < 3:
        raise ValueError("wagon wheel needs n >= 3")
    corners = list(range(2 * n))
    middles = [2 * n + k for k in range(2 * n)]
    spoke_mid = [4 * n + i for i in range(n)]
    hub = 5 * n
    blocks = [
        (corners[k], middles[k], corners[(k + 1) % (2 * n)]) for k in range(2 * n)
    ]
    blocks += [(middles[2 * i], spoke_mid[i], hub) for i in range(n)]
    from .diagram import diagram_from_blocks

    return diagram_from_blocks(blocks, label=f"G{n}")


def wagon_wheel(n: int) -> FiniteOrthoLattice:
    """Pasted wagon wheel: 5n+1 atoms, 3n blocks, 10n+4 elements."""
    return from_greechie(wagon_wheel_diagram(n), name=f"G{n}")
