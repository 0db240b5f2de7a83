"""Canonical labeling of Greechie diagrams.

Colour refinement on the atom/block incidence structure (atom degrees seed the
colouring) followed by individualization backtracking with orbit pruning.
Two diagrams get equal canonical bytes exactly when some atom bijection maps
one block list onto the other; the bytes decode to the GDF line of the
canonically relabeled diagram.

Blocks may carry marks.  Marked blocks take part in refinement and in the
serialized form (rendered with a `*` prefix), which turns "is there an
automorphism mapping block i to block j" into an equality of marked forms --
the test the generator's canonical-augmentation step relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diagram import ALPHABET, MAX_ATOMS, DiagramError, GreechieDiagram


@dataclass(frozen=True)
class CanonicalForm:
    """Total-order key over diagram isomorphism classes."""

    bytes: bytes

    def gdf(self) -> str:
        return self.bytes.decode("ascii")

    def __lt__(self, other: "CanonicalForm") -> bool:
        return self.bytes < other.bytes


def _blocks_of_atom(n_atoms: int, blocks: Sequence[tuple[int, ...]]):
    out: list[list[int]] = [[] for _ in range(n_atoms)]
    for bi, blk in enumerate(blocks):
        for a in blk:
            out[a].append(bi)
    return out


def _canon_ids(signatures: list) -> list[int]:
    """Replace hashable signatures by dense ids in sorted-signature order."""
    order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [order[sig] for sig in signatures]


def refine(
    n_atoms: int,
    blocks: Sequence[tuple[int, ...]],
    atom_colors: list[int],
    block_colors: list[int],
    incidence: Sequence[Sequence[int]],
) -> tuple[list[int], list[int]]:
    """Run colour refinement to a fixed point; ids are isomorphism-invariant."""
    n_ac = len(set(atom_colors))
    n_bc = len(set(block_colors))
    while True:
        block_colors = _canon_ids(
            [
                (block_colors[bi], tuple(sorted(atom_colors[a] for a in blk)))
                for bi, blk in enumerate(blocks)
            ]
        )
        atom_colors = _canon_ids(
            [
                (atom_colors[a], tuple(sorted(block_colors[bi] for bi in incidence[a])))
                for a in range(n_atoms)
            ]
        )
        n_ac2 = len(set(atom_colors))
        n_bc2 = len(set(block_colors))
        if n_ac2 == n_ac and n_bc2 == n_bc:
            return atom_colors, block_colors
        n_ac, n_bc = n_ac2, n_bc2


def refined_colors(
    n_atoms: int,
    blocks: Sequence[tuple[int, ...]],
    marks: frozenset[int] = frozenset(),
) -> tuple[list[int], list[int]]:
    """Stable refinement colours without individualization."""
    incidence = _blocks_of_atom(n_atoms, blocks)
    atom_colors = _canon_ids([len(incidence[a]) for a in range(n_atoms)])
    block_colors = _canon_ids(
        [(len(blk), bi in marks) for bi, blk in enumerate(blocks)]
    )
    return refine(n_atoms, blocks, atom_colors, block_colors, incidence)


def _serialize(
    blocks: Sequence[tuple[int, ...]],
    labeling: Sequence[int],
    marks: frozenset[int],
) -> bytes:
    rows = sorted(
        (tuple(sorted(labeling[a] for a in blk)), bi in marks)
        for bi, blk in enumerate(blocks)
    )
    parts = []
    for atoms, marked in rows:
        body = "".join(ALPHABET[a] for a in atoms)
        parts.append("*" + body if marked else body)
    return (",".join(parts) + ".").encode("ascii")


class _Canonizer:
    def __init__(self, n_atoms, blocks, marks):
        self.n = n_atoms
        self.blocks = blocks
        self.marks = marks
        self.incidence = _blocks_of_atom(n_atoms, blocks)
        self.best: bytes | None = None
        self.best_labeling: list[int] | None = None
        self.automorphisms: list[tuple[int, ...]] = []

    def run(self) -> tuple[bytes, tuple[int, ...]]:
        atom_colors = _canon_ids([len(self.incidence[a]) for a in range(self.n)])
        block_colors = _canon_ids(
            [(len(blk), bi in self.marks) for bi, blk in enumerate(self.blocks)]
        )
        self._search(atom_colors, block_colors, [])
        assert self.best is not None and self.best_labeling is not None
        return self.best, tuple(self.best_labeling)

    def _orbit_hits(self, candidate: int, tried: list[int], prefix: list[int]) -> bool:
        """Does some automorphism fixing the prefix map candidate into tried?"""
        gens = [
            g
            for g in self.automorphisms
            if all(g[p] == p for p in prefix)
        ]
        if not gens:
            return False
        seen = {candidate}
        frontier = [candidate]
        tried_set = set(tried)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y in tried_set:
                    return True
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return False

    def _search(self, atom_colors, block_colors, prefix: list[int]) -> None:
        atom_colors, block_colors = refine(
            self.n, self.blocks, atom_colors, block_colors, self.incidence
        )
        cells: dict[int, list[int]] = {}
        for a, c in enumerate(atom_colors):
            cells.setdefault(c, []).append(a)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                if target is None or len(cells[c]) < len(cells[target]):
                    target = c
        if target is None:
            labeling = [0] * self.n
            for a, c in enumerate(atom_colors):
                labeling[a] = c
            form = _serialize(self.blocks, labeling, self.marks)
            if self.best is None or form < self.best:
                self.best = form
                self.best_labeling = labeling
            elif form == self.best:
                ref = self.best_labeling
                inv = [0] * self.n
                for a in range(self.n):
                    inv[ref[a]] = a
                sigma = tuple(inv[labeling[a]] for a in range(self.n))
                if any(sigma[a] != a for a in range(self.n)):
                    self.automorphisms.append(sigma)
            return
        tried: list[int] = []
        for a in cells[target]:
            if tried and self._orbit_hits(a, tried, prefix):
                continue
            colors2 = list(atom_colors)
            colors2[a] = -1  # sorts before every classmate: individualized
            self._search(_canon_ids(colors2), block_colors, prefix + [a])
            tried.append(a)


def canonical_bytes(
    n_atoms: int,
    blocks: Sequence[tuple[int, ...]],
    marks: frozenset[int] = frozenset(),
) -> tuple[bytes, tuple[int, ...]]:
    """Canonical form bytes plus one atom labeling (old index -> new) achieving it."""
    if n_atoms > MAX_ATOMS:
        raise DiagramError(
            "alphabet", f"{n_atoms} atoms exceed the {MAX_ATOMS}-symbol alphabet"
        )
    return _Canonizer(n_atoms, blocks, marks).run()


def canonical_form(d: GreechieDiagram) -> CanonicalForm:
    """Isomorphism-class key: equal forms iff the diagrams are isomorphic."""
    form, _ = canonical_bytes(d.n_atoms, d.blocks)
    return CanonicalForm(form)


def canonical_labeling(d: GreechieDiagram) -> tuple[CanonicalForm, tuple[int, ...]]:
    form, labeling = canonical_bytes(d.n_atoms, d.blocks)
    return CanonicalForm(form), labeling
