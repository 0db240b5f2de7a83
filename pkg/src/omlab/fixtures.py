"""Named lattice fixtures.

Wagon wheels G3..G7 are generated; O6 and MO2 come from explicit tables;
the remaining diagrams ship as GDF data files.  Fixture correctness is
enforced by the acceptance behaviour matrix (element/block counts plus
equation verdicts), not trusted on transcription alone.
"""

from __future__ import annotations

import functools
from importlib import resources

from .diagram import GreechieDiagram, parse_diagram
from .lattice import (
    FiniteOrthoLattice,
    LatticeSource,
    from_greechie,
    parse_table_file,
    wagon_wheel,
    wagon_wheel_diagram,
)

_GDF_FIXTURES = (
    "Peterson",
    "G5s",
    "G6s1",
    "G6s2",
    "G7s1",
    "G7s2",
    "L28",
    "L36",
    "L38",
    "L38m",
    "L42",
    "Lhat",
    "L46-7",
    "L46-9",
)
_TABLE_FIXTURES = ("O6", "MO2")
_WHEELS = ("G3", "G4", "G5", "G6", "G7")

FIXTURE_NAMES: tuple[str, ...] = _TABLE_FIXTURES + _WHEELS + _GDF_FIXTURES


class UnknownFixture(KeyError):
    pass


def _data_text(filename: str) -> str:
    return resources.files("omlab.data").joinpath(filename).read_text()


@functools.lru_cache(maxsize=None)
def fixture_diagram(name: str) -> GreechieDiagram:
    """The Greechie diagram behind a pasted fixture (table fixtures have none)."""
    if name in _WHEELS:
        return wagon_wheel_diagram(int(name[1:]))
    if name in _GDF_FIXTURES:
        text = _data_text(f"{name}.gdf")
        for line in text.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                return parse_diagram(line, label=name)
        raise UnknownFixture(f"fixture file for {name} holds no diagram")
    raise UnknownFixture(f"fixture {name!r} is not diagram-based")


@functools.lru_cache(maxsize=None)
def fixture(name: str) -> FiniteOrthoLattice:
    """Return the named lattice; raises UnknownFixture for unknown names."""
    if name in _TABLE_FIXTURES:
        L = parse_table_file(_data_text(f"{name}.tbl"), name=name)
        return FiniteOrthoLattice(
            size=L.size,
            comp=L.comp,
            meet=L.meet,
            join=L.join,
            leq=L.leq,
            names=L.names,
            source=LatticeSource("fixture", name),
            name=name,
        )
    if name in _WHEELS:
        return wagon_wheel(int(name[1:]))
    if name in _GDF_FIXTURES:
        L = from_greechie(fixture_diagram(name), name=name)
        return FiniteOrthoLattice(
            size=L.size,
            comp=L.comp,
            meet=L.meet,
            join=L.join,
            leq=L.leq,
            names=L.names,
            source=LatticeSource("fixture", name),
            atom_of=L.atom_of,
            name=name,
        )
    raise UnknownFixture(f"unknown fixture {name!r} (known: {', '.join(FIXTURE_NAMES)})")
