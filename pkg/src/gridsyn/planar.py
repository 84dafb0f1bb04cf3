"""Planar functions: grid plots that need no bridges.

A function is planar when some input order and phase assignment gives it a
grid plot with at most one node per grid point.  Every totally symmetric
function is planar (its plot depends only on grid points), and deleting
links from the full symmetric grid template always yields a planar
function, so the template acts as a programmable cell: the full template of
arity n carries exactly n(n+1) links.

The survey sweeps every function of a small arity.  Its 'direct' mode tries
all n! * 2**n configurations per function; the 'classes' mode partitions
functions into orbits under input permutation plus input complementation
(planarity is invariant under both, since those transforms merely relabel
the configuration space) and decides each orbit once.  Both modes count
identically; 'direct' is the ground truth and 'classes' the fast default.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

from .cubes import MintermSet, PhaseVector
from .gridplot import build_grid_dag, is_planar_plot

_EXHAUSTIVE_WITNESS_CAP = 6
_SURVEY_CAP = 4
_MAX_WITNESSES = 10


@dataclass(frozen=True)
class TemplateGrid:
    """The programmable link set of the full grid of arity n.

    Links are identified by their source grid point (rank, depth) and
    direction: 'one' raises the rank, 'zero' keeps it.
    """

    n: int
    links: frozenset[tuple[int, int, str]]


def full_template(n: int) -> TemplateGrid:
    if n < 0:
        raise ValueError("n must be non-negative")
    links = set()
    for d in range(n):
        for r in range(d + 1):
            links.add((r, d, "one"))
            links.add((r, d, "zero"))
    return TemplateGrid(n, frozenset(links))


def links_of(dag) -> frozenset[tuple[int, int, str]]:
    """Template links actually used by a grid DAG."""
    used = set()
    for node in dag.nodes:
        if node.one is not None:
            used.add((node.rank, node.depth, "one"))
        if node.zero is not None:
            used.add((node.rank, node.depth, "zero"))
    return frozenset(used)


def derive_pf(t: TemplateGrid, deleted: Iterable[tuple[int, int, str]]) -> MintermSet:
    """Minterms of all origin-to-diagonal paths avoiding the deleted links.

    The result is planar by construction: prefixes of equal rank and depth
    share their completion set, so each grid point hosts one node.
    """
    deleted = frozenset(deleted)
    if not deleted.issubset(t.links):
        raise ValueError("deleted links must belong to the template")
    alive = t.links - deleted
    bits = 0
    for v in range(1 << t.n):
        rank = 0
        ok = True
        for d in range(t.n):
            bit = (v >> d) & 1
            if (rank, d, "one" if bit else "zero") not in alive:
                ok = False
                break
            rank += bit
        if ok:
            bits |= 1 << v
    return MintermSet(t.n, bits)


# ---------------------------------------------------------------------------
# planarity decision


def _planar_word_walk(word_bits: int, n: int) -> bool:
    """Planarity of the identity-order plot of a word-set mask.

    Word index encoding puts the first consumed character in the most
    significant position.  Walk the levels keeping one suffix mask per rank;
    two different suffix classes on one rank kill planarity immediately.
    """
    level = {0: word_bits}
    for d in range(n):
        half = 1 << (n - d - 1)
        low = (1 << half) - 1
        nxt: dict[int, int] = {}
        for r, mask in level.items():
            hi = mask >> half
            lo = mask & low
            if hi:
                prev = nxt.get(r + 1)
                if prev is not None and prev != hi:
                    return False
                nxt[r + 1] = hi
            if lo:
                prev = nxt.get(r)
                if prev is not None and prev != lo:
                    return False
                nxt[r] = lo
        level = nxt
    return True


def is_planar_function(
    s: MintermSet, cap: int = _EXHAUSTIVE_WITNESS_CAP
) -> tuple[tuple[int, ...], PhaseVector] | None:
    """Witness (order, phases) making the plot planar, or None.

    Configurations are tried in a fixed order (orders lexicographic, then
    phase tuples lexicographic) and the first witness is returned.
    """
    n = s.n
    if n > cap:
        raise ValueError(f"exhaustive planarity search capped at {cap} inputs")
    for order in permutations(range(n)):
        for ph in product((False, True), repeat=n):
            phases = PhaseVector(ph)
            if is_planar_plot(build_grid_dag(s, order, phases)):
                return (order, phases)
    return None


# ---------------------------------------------------------------------------
# exhaustive survey


@dataclass(frozen=True)
class PlanarSurvey:
    n: int
    total: int
    planar: int
    nonplanar_witnesses: tuple[int, ...]
    mode: str

    @property
    def all_planar(self) -> bool:
        return self.planar == self.total


def _word_tables(n: int) -> list[list[int]]:
    """Index remap per configuration: assignment index -> word index."""
    tables = []
    for order in permutations(range(n)):
        for pmask in range(1 << n):
            table = []
            for v in range(1 << n):
                u = v ^ pmask
                w = 0
                for t in range(n):
                    w = (w << 1) | ((u >> order[t]) & 1)
                table.append(w)
            tables.append(table)
    return tables


def _remap(mask: int, table: Sequence[int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << table[low.bit_length() - 1]
        mask ^= low
    return out


def survey_planarity(n: int, mode: str = "classes") -> PlanarSurvey:
    """Classify every function of arity n as planar or not.

    Deterministic; reports the total, the planar count, and up to ten
    non-planar truth tables (as minterm masks, ascending).
    """
    if not 0 <= n <= _SURVEY_CAP:
        raise ValueError(f"exhaustive survey capped at {_SURVEY_CAP} inputs")
    if mode not in ("classes", "direct"):
        raise ValueError(f"unknown survey mode {mode!r}")
    total = 1 << (1 << n)
    tables = _word_tables(n)
    # identity-order word table (identity permutation comes first, phase 0)
    rev = tables[0]

    nonplanar: list[int] = []
    planar_count = 0

    if mode == "direct":
        for f in range(total):
            if any(_planar_word_walk(_remap(f, t), n) for t in tables):
                planar_count += 1
            elif len(nonplanar) < _MAX_WITNESSES:
                nonplanar.append(f)
        return PlanarSurvey(n, total, planar_count, tuple(nonplanar), mode)

    seen = bytearray(total)
    nonplanar_all: list[int] = []
    for f in range(total):
        if seen[f]:
            continue
        words = {_remap(f, t) for t in tables}
        orbit = {_remap(w, rev) for w in words}  # back to assignment encoding
        planar = any(_planar_word_walk(w, n) for w in words)
        for g in orbit:
            seen[g] = 1
        if planar:
            planar_count += len(orbit)
        else:
            nonplanar_all.extend(orbit)
    nonplanar_all.sort()
    return PlanarSurvey(
        n, total, planar_count, tuple(nonplanar_all[:_MAX_WITNESSES]), mode
    )
