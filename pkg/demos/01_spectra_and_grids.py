#!/usr/bin/env python3
"""Walkthrough: rank spectra and grid plots of one function, three layouts.

The running example is the product of two exclusive-ors, (a # b)(c # d).
Its rank spectrum is fixed by the function alone, while the grid plot, and
hence the node and link counts that drive layout cost, depend strongly on
the input order and polarity.
"""

from pathlib import Path

from gridsyn import (
    PhaseVector,
    build_grid_dag,
    cover_to_minterms,
    convolve,
    format_spectrum,
    metrics,
    minimize_layout,
    parse_pla,
    phase_minterms,
    render,
    spectrum_of,
)

pla = Path(__file__).parent / "pla" / "xor_pair.pla"
cover = parse_pla(pla.read_text())
s = cover_to_minterms(cover)

print("cubes:", ", ".join(cover.cubes))
print("rank spectrum:", format_spectrum(spectrum_of(s)))
print()

print("identity order a,b,c,d:")
dag = build_grid_dag(s)
print(render(dag))

print("order a,c,b,d (interleaving the pairs breaks the sharing):")
dag2 = build_grid_dag(s, order=(0, 2, 1, 3))
print(render(dag2))

print("inverting b and c (still order a,b,c,d):")
phases = PhaseVector.inverting(4, [1, 2])
dag3 = build_grid_dag(s, phases=phases)
print("rank spectrum after phasing:", format_spectrum(spectrum_of(phase_minterms(s, phases))))
print(render(dag3))

best = minimize_layout(s, mode="exhaustive")
print("exhaustive layout search:", best.metrics, "order:", best.order, "inverted:", best.phases.inverted)
print()

# Spectra of disjoint products multiply as convolutions: the spectrum of
# (a # b) times a 3-input OR comes straight from the factor spectra.
xor_sp = (0, 2, 0)
or3_sp = (0, 3, 3, 1)
print("spectrum of (2-input xor) x (3-input or):", format_spectrum(convolve(xor_sp, or3_sp)))
