#!/usr/bin/env python3
"""Walkthrough: planar functions and the grid template.

A function is planar when some input order and polarity gives it a grid
plot with one node per grid point, which is exactly when it can be laid out
as a programmed sub-grid of the full symmetric template: delete links from
the template and the surviving paths are a planar function by construction.
"""

from gridsyn import (
    MintermSet,
    build_grid_dag,
    derive_pf,
    full_template,
    is_planar_function,
    links_of,
    render,
    survey_planarity,
)

t = full_template(4)
print(f"full 4-input template: {len(t.links)} programmable links (n(n+1) = 20)")

# Programming the template: drop a couple of links and look at what's left.
pf = derive_pf(t, {(0, 0, "zero"), (2, 2, "one")})
print(f"after deleting 2 links: {len(pf)} minterms, "
      f"planar witness: {is_planar_function(pf) is not None}")
print(render(build_grid_dag(pf)))

# Round trip: a planar plot is the template minus its unused links.
xor_pair = MintermSet.from_strings(["1010", "1001", "0110", "0101"])
dag = build_grid_dag(xor_pair)
deleted = t.links - links_of(dag)
assert derive_pf(t, deleted).bits == xor_pair.bits
print(f"the xor-pair plot uses {len(links_of(dag))} of the template's {len(t.links)} links")
print()

for n in (2, 3):
    survey = survey_planarity(n)
    print(f"all {survey.total} functions of {n} inputs planar: {survey.all_planar}")

survey = survey_planarity(4)
print(f"functions of 4 inputs: {survey.planar} of {survey.total} planar")
if not survey.all_planar:
    w = survey.nonplanar_witnesses[0]
    print(f"smallest non-planar truth table: {w:#06x} = minterms "
          f"{MintermSet(4, w).to_strings()}")
