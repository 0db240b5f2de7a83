"""Greechie diagrams: atoms plus 2- or 3-atom blocks (maximal orthogonality cliques).

A diagram is valid when blocks pairwise share at most one atom, there is no
loop of order 3 or 4 (cyclic block sequence with pairwise-distinct shared
atoms), every atom lies in a block, and the block-intersection graph is
connected.  The GDF v1 text format writes one diagram per line: blocks are
runs of atom characters (1-9, A-Z, a-z in that order), separated by commas,
terminated by a period; `#` starts a comment line; whitespace is ignored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

ALPHABET = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz"
ATOM_OF_CHAR = {ch: i for i, ch in enumerate(ALPHABET)}
MAX_ATOMS = len(ALPHABET)


class DiagramError(ValueError):
    """Raised when text or a block list violates a diagram invariant.

    `kind` is a stable tag: syntax, alphabet, block-size, duplicate-atom,
    duplicate-block, intersection, loop, disconnected, coverage.
    """

    def __init__(self, kind: str, message: str, pos: int | None = None):
        self.kind = kind
        self.pos = pos
        if pos is not None:
            message = f"{message} (at column {pos + 1})"
        super().__init__(message)


@dataclass(frozen=True)
class GreechieDiagram:
    """Immutable diagram: atoms are 0..n_atoms-1, blocks are sorted index tuples."""

    n_atoms: int
    blocks: tuple[tuple[int, ...], ...]
    label: str | None = None

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def blocks_of_atom(self) -> list[list[int]]:
        """Block indices containing each atom."""
        out: list[list[int]] = [[] for _ in range(self.n_atoms)]
        for bi, blk in enumerate(self.blocks):
            for a in blk:
                out[a].append(bi)
        return out

    def relabeled(self, perm: Sequence[int]) -> "GreechieDiagram":
        """Apply an atom permutation (perm[old] = new) and renormalize."""
        blocks = tuple(
            sorted(tuple(sorted(perm[a] for a in blk)) for blk in self.blocks)
        )
        return GreechieDiagram(self.n_atoms, blocks, self.label)

    def __str__(self) -> str:
        return serialize_diagram(self)


def _normalize_blocks(raw_blocks: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(blk)) for blk in raw_blocks)


def _shared(b1: tuple[int, ...], b2: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a for a in b1 if a in b2)


def _check_loops(blocks: Sequence[tuple[int, ...]]) -> None:
    """Reject loops of order 3 or 4: cyclic block sequences whose consecutive
    shared atoms are pairwise distinct."""
    n = len(blocks)
    share: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            s = _shared(blocks[i], blocks[j])
            if s:
                share[i, j] = share[j, i] = s[0]
                adj[i].append(j)
                adj[j].append(i)
    for i in range(n):
        for j in adj[i]:
            if j < i:
                continue
            for k in adj[j]:
                if k <= i or k == j:
                    continue
                if k in adj[i]:
                    atoms = {share[i, j], share[j, k], share[i, k]}
                    if len(atoms) == 3:
                        raise DiagramError(
                            "loop", f"loop of order 3 through blocks {i},{j},{k}"
                        )
    for quad in itertools.combinations(range(n), 4):
        for order in ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)):
            cyc = [quad[x] for x in order]
            pairs = list(zip(cyc, cyc[1:] + cyc[:1]))
            if all((p in share) for p in pairs):
                atoms = {share[p] for p in pairs}
                if len(atoms) == 4:
                    raise DiagramError(
                        "loop", f"loop of order 4 through blocks {cyc}"
                    )


def _check_connected(n_atoms: int, blocks: Sequence[tuple[int, ...]]) -> None:
    if not blocks:
        raise DiagramError("coverage", "diagram has no blocks")
    n = len(blocks)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    while stack:
        i = stack.pop()
        for j in range(n):
            if not seen[j] and _shared(blocks[i], blocks[j]):
                seen[j] = True
                stack.append(j)
    if not all(seen):
        raise DiagramError("disconnected", "block-intersection graph is disconnected")


def validate_blocks(
    n_atoms: int,
    blocks: Sequence[tuple[int, ...]],
    *,
    check_loops: bool = True,
) -> None:
    """Raise DiagramError unless the block list satisfies every invariant."""
    covered = set()
    seen_blocks = set()
    for blk in blocks:
        if len(set(blk)) != len(blk):
            raise DiagramError("duplicate-atom", f"block {blk} repeats an atom")
        if len(blk) not in (2, 3):
            raise DiagramError("block-size", f"block {blk} must have 2 or 3 atoms")
        if blk in seen_blocks:
            raise DiagramError("duplicate-block", f"block {blk} appears twice")
        seen_blocks.add(blk)
        covered.update(blk)
        for a in blk:
            if not 0 <= a < n_atoms:
                raise DiagramError("coverage", f"atom index {a} out of range")
    if covered != set(range(n_atoms)):
        missing = sorted(set(range(n_atoms)) - covered)
        raise DiagramError("coverage", f"atoms {missing} occur in no block")
    for b1, b2 in itertools.combinations(blocks, 2):
        if len(_shared(b1, b2)) >= 2:
            raise DiagramError(
                "intersection", f"blocks {b1} and {b2} share two or more atoms"
            )
    if check_loops:
        _check_loops(blocks)
    _check_connected(n_atoms, blocks)


def diagram_from_blocks(
    raw_blocks: Iterable[Iterable[int]],
    *,
    label: str | None = None,
    check_loops: bool = True,
) -> GreechieDiagram:
    """Build and validate a diagram from atom-index blocks."""
    blocks = _normalize_blocks(raw_blocks)
    atoms = {a for blk in blocks for a in blk}
    n_atoms = (max(atoms) + 1) if atoms else 0
    validate_blocks(n_atoms, blocks, check_loops=check_loops)
    return GreechieDiagram(n_atoms, blocks, label)


def parse_diagram(
    text: str, *, label: str | None = None, check_loops: bool = True
) -> GreechieDiagram:
    """Parse a one-line GDF v1 diagram; atoms are numbered by first appearance.

    `check_loops=False` skips the loop-lemma check (lattice pasting still
    verifies orthomodularity, so invalid pastings are caught downstream).
    """
    mapping: dict[int, int] = {}
    blocks: list[tuple[int, ...]] = []
    current: list[int] = []
    done = False
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if done:
            raise DiagramError("syntax", f"trailing character {ch!r} after '.'", pos)
        if ch == "#":
            raise DiagramError("syntax", "comment character inside a diagram", pos)
        if ch in (",", "."):
            if not current:
                raise DiagramError("syntax", "empty block", pos)
            blocks.append(tuple(current))
            current = []
            if ch == ".":
                done = True
            continue
        code = ATOM_OF_CHAR.get(ch)
        if code is None:
            raise DiagramError("syntax", f"invalid atom character {ch!r}", pos)
        if code not in mapping:
            mapping[code] = len(mapping)
        current.append(mapping[code])
    if not done:
        raise DiagramError("syntax", "diagram not terminated by '.'", len(text))
    n_atoms = len(mapping)
    norm = _normalize_blocks(blocks)
    validate_blocks(n_atoms, norm, check_loops=check_loops)
    return GreechieDiagram(n_atoms, norm, label)


def serialize_diagram(d: GreechieDiagram) -> str:
    """Render as a GDF v1 line; inverse of parse_diagram up to isomorphism."""
    if d.n_atoms > MAX_ATOMS:
        raise DiagramError(
            "alphabet", f"{d.n_atoms} atoms exceed the {MAX_ATOMS}-symbol alphabet"
        )
    return ",".join("".join(ALPHABET[a] for a in blk) for blk in d.blocks) + "."


def read_gdf(lines: Iterable[str], *, check_loops: bool = True):
    """Yield (line_number, diagram_or_error) for every non-comment GDF line."""
    for ln, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            yield ln, parse_diagram(stripped, check_loops=check_loops)
        except DiagramError as exc:
            yield ln, exc


def is_legless(d: GreechieDiagram) -> bool:
    """True when no block meets the union of the other blocks in fewer than
    two atoms.  Single-block diagrams are legless by convention."""
    if d.n_blocks <= 1:
        return True
    degree = [0] * d.n_atoms
    for blk in d.blocks:
        for a in blk:
            degree[a] += 1
    for blk in d.blocks:
        if sum(1 for a in blk if degree[a] >= 2) < 2:
            return False
    return True
