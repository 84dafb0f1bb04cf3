#!/usr/bin/env python3
"""Walkthrough: threshold-cell libraries and area reports.

A k-of-n threshold cell fires when at least k inputs are high.  Any
symmetric component is a short sum of threshold-pair products, so a library
of n(n+1)/2 cells plus an inverter covers everything up to its arity.
"""

from pathlib import Path

from gridsyn import (
    FullRankSet,
    decompose,
    library_inventory,
    map_netlist,
    map_sf,
    parse_pla,
    scell_count,
    verify,
)

for n in (4, 5):
    lib = library_inventory(n)
    print(f"threshold-cell library up to {n} inputs: {len(lib.cells)} cells + inverter")
    print(f"  (a complete symmetric-cell library would need {scell_count(n)} cells)")

print()
print("threshold forms of a few symmetric components:")
for n, ranks, label in ((3, {2, 3}, "carry"), (3, {1, 3}, "sum"), (4, {1, 3}, "parity4"), (4, {0, 1}, "at-most-one")):
    impl = map_sf(FullRankSet(n, frozenset(ranks)))
    terms = []
    for lower, upper in impl.terms:
        lo = f"T{lower}" if lower is not None else "1"
        term = lo if upper is None else f"{lo}.~T{upper}"
        terms.append(term)
    print(f"  {label:<12} ranks {sorted(ranks)} of {n} -> {' + '.join(terms)}")

print()
print("mapped areas with the default cost model (k-of-n cell = n pitches, inverter = 1):")
lib = library_inventory(5)
PLA_DIR = Path(__file__).parent / "pla"
for name in ("fa_carry", "fa_sum", "parity4", "or5", "and5", "majority5"):
    cover = parse_pla((PLA_DIR / f"{name}.pla").read_text())
    nl = decompose(cover)
    result = map_netlist(nl, lib)
    assert verify(result.netlist, cover)
    cells = ", ".join(f"{u.name}x{u.count}" for u in result.cells)
    print(f"  {name:<12} {result.total_pitches:>5g} pitches  ({cells})")
