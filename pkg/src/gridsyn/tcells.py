"""Threshold-cell algebra and technology mapping.

A threshold cell T_k of n inputs fires when at least k inputs are 1; as a
symmetric component it is SYM over the contiguous rank set {k..n}.  Any
maximal run [i..j] of full ranks is T_i AND NOT T_{j+1} (the upper factor
disappears when j = n, the lower one when i = 0), so a symmetric function
with m maximal rank intervals maps to a sum of m threshold-pair products.

A complete library up to a maximum arity holds one cell per (arity,
threshold) pair, n(n+1)/2 cells in total, plus an inverter.  Mapping keeps
everything in this one family: AND glue is the 2-input T_2 cell, OR glue
the 2-input T_1 cell.  Areas are counted in cell pitches; the default cost
model (arbitrary but fixed, see README) charges a k-of-n cell n pitches and
the inverter 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .netlist import (
    KIND_AND,
    KIND_CONST,
    KIND_INV,
    KIND_OR,
    KIND_SYM,
    Netlist,
    NetlistBuilder,
    Ref,
)
from .cubes import ParseError
from .spectra import FullRankSet


class MappingError(ValueError):
    """A netlist cannot be mapped onto the given cell library."""


@dataclass(frozen=True)
class ThresholdCell:
    arity: int
    threshold: int

    def __post_init__(self):
        if not 1 <= self.threshold <= self.arity:
            raise ValueError("threshold must lie in [1, arity]")

    @property
    def name(self) -> str:
        return f"t{self.threshold}of{self.arity}"


@dataclass(frozen=True)
class TCellLibrary:
    max_arity: int
    pitch_costs: Mapping[tuple[int, int], float]
    inverter_cost: float = 1.0

    @property
    def cells(self) -> tuple[ThresholdCell, ...]:
        return tuple(
            ThresholdCell(n, k)
            for n in range(1, self.max_arity + 1)
            for k in range(1, n + 1)
        )

    def cost(self, arity: int, threshold: int) -> float:
        try:
            return self.pitch_costs[(arity, threshold)]
        except KeyError:
            raise MappingError(f"no pitch cost for cell t{threshold}of{arity}") from None


def library_inventory(
    max_arity: int,
    pitch_costs: Mapping[tuple[int, int], float] | None = None,
    inverter_cost: float = 1.0,
) -> TCellLibrary:
    """Complete threshold-cell inventory up to an arity, plus an inverter.

    The cell count is max_arity*(max_arity+1)/2.  Default pitch costs: a
    k-of-n cell costs n pitches, the inverter 1.
    """
    if max_arity < 1:
        raise ValueError("library needs max_arity >= 1")
    if pitch_costs is None:
        pitch_costs = {
            (n, k): float(n) for n in range(1, max_arity + 1) for k in range(1, n + 1)
        }
    return TCellLibrary(max_arity, dict(pitch_costs), inverter_cost)


def scell_count(n: int) -> int:
    """Size of a complete symmetric-cell library up to arity n.

    Counts the nonconstant symmetric functions of each arity 2..n up to
    complement (2**k - 1 per arity) plus one inverter.
    """
    if n < 2:
        raise ValueError("symmetric-cell libraries start at arity 2")
    return 1 + sum((1 << k) - 1 for k in range(2, n + 1))


# ---------------------------------------------------------------------------
# symmetric function -> threshold terms


def intervals(f: FullRankSet) -> list[tuple[int, int]]:
    """Maximal closed runs of consecutive full ranks, ascending."""
    out: list[tuple[int, int]] = []
    for r in sorted(f.ranks):
        if out and out[-1][1] == r - 1:
            out[-1] = (out[-1][0], r)
        else:
            out.append((r, r))
    return out


@dataclass(frozen=True)
class SFImpl:
    """Threshold-pair product form of one symmetric component.

    Each term (i, j) reads T_i AND NOT T_j; a missing j means the interval
    reaches rank n, a missing i (constant-1 lower factor) means it starts
    at rank 0.
    """

    arity: int
    terms: tuple[tuple[int | None, int | None], ...]


def map_sf(f: FullRankSet) -> SFImpl:
    """One threshold-pair term per maximal full-rank interval."""
    terms = []
    for lo, hi in intervals(f):
        lower = lo if lo > 0 else None
        upper = hi + 1 if hi < f.n else None
        terms.append((lower, upper))
    return SFImpl(f.n, tuple(terms))


def sf_impl_value(impl: SFImpl, ones: int) -> int:
    """Evaluate the threshold-pair form on a given input popcount."""
    for lower, upper in impl.terms:
        if (lower is None or ones >= lower) and (upper is None or ones < upper):
            return 1
    return 0


# ---------------------------------------------------------------------------
# netlist mapping


def _is_threshold_ranks(ranks: frozenset[int], arity: int) -> int | None:
    """Threshold k when the rank set is exactly {k..arity}, else None."""
    k = min(ranks)
    return k if ranks == frozenset(range(k, arity + 1)) else None


@dataclass(frozen=True)
class CellUse:
    name: str
    arity: int
    threshold: int | None  # None for the inverter
    count: int
    unit_cost: float

    @property
    def total_cost(self) -> float:
        return self.count * self.unit_cost


@dataclass(frozen=True)
class MapResult:
    netlist: Netlist
    cells: tuple[CellUse, ...]
    total_pitches: float


def map_netlist(nl: Netlist, lib: TCellLibrary) -> MapResult:
    """Rewrite a symmetric network into threshold cells and report its area.

    SYM nodes expand into their threshold-pair products; n-ary sums and
    disjoint products become chains of 2-input T_1 / T_2 glue cells.  A SYM
    node wider than the library arity is rejected rather than split.
    Shared nodes are counted once.
    """
    b = NetlistBuilder(nl.input_names)
    mapped: list[Ref] = []

    def res(ref: Ref) -> Ref:
        return ref if ref.kind == "input" else mapped[ref.index]

    def and2(x: Ref, y: Ref) -> Ref:
        return b.sym({2}, (x, y))

    def or2(x: Ref, y: Ref) -> Ref:
        return b.sym({1, 2}, (x, y))

    def chain(refs: Sequence[Ref], gate) -> Ref:
        acc = refs[0]
        for ref in refs[1:]:
            acc = gate(acc, ref)
        return acc

    for node in nl.nodes:
        if node.kind == KIND_CONST:
            mapped.append(b.const(node.value))
        elif node.kind == KIND_INV:
            mapped.append(b.inv(res(node.operands[0])))
        elif node.kind == KIND_OR:
            mapped.append(chain([res(op) for op in node.operands], or2))
        elif node.kind == KIND_AND:
            mapped.append(chain([res(op) for op in node.operands], and2))
        elif node.kind == KIND_SYM:
            k = len(node.operands)
            if k > lib.max_arity:
                raise MappingError(
                    f"symmetric component of {k} inputs exceeds library arity {lib.max_arity}"
                )
            ops = tuple(res(op) for op in node.operands)
            terms: list[Ref] = []
            for lower, upper in map_sf(FullRankSet(k, node.ranks)).terms:
                t_lo = b.sym(range(lower, k + 1), ops) if lower is not None else None
                t_hi = b.inv(b.sym(range(upper, k + 1), ops)) if upper is not None else None
                if t_lo is not None and t_hi is not None:
                    terms.append(and2(t_lo, t_hi))
                elif t_lo is not None:
                    terms.append(t_lo)
                elif t_hi is not None:
                    terms.append(t_hi)
                else:
                    terms.append(b.const(1))
            mapped.append(chain(terms, or2) if terms else b.const(0))
        else:  # pragma: no cover
            raise MappingError(f"unmappable node kind {node.kind!r}")

    out = nl.output if nl.output.kind == "input" else mapped[nl.output.index]
    result = b.finish(out)

    counts: dict[tuple[int, int] | None, int] = {}
    for node in result.nodes:
        if node.kind == KIND_SYM:
            k = len(node.operands)
            t = _is_threshold_ranks(node.ranks, k)
            if t is None:  # pragma: no cover - mapping only emits threshold shapes
                raise MappingError("mapped netlist contains a non-threshold component")
            counts[(k, t)] = counts.get((k, t), 0) + 1
        elif node.kind == KIND_INV:
            counts[None] = counts.get(None, 0) + 1

    uses = []
    total = 0.0
    for key in sorted(counts, key=lambda k: (-1, 0) if k is None else k):
        if key is None:
            use = CellUse("inv", 1, None, counts[None], lib.inverter_cost)
        else:
            arity, threshold = key
            use = CellUse(
                ThresholdCell(arity, threshold).name,
                arity,
                threshold,
                counts[key],
                lib.cost(arity, threshold),
            )
        uses.append(use)
        total += use.total_cost
    return MapResult(result, tuple(uses), total)


# ---------------------------------------------------------------------------
# pitch table files
#
# Plain text, one cell per line: ``name arity threshold cost``.  The special
# name ``inv`` sets the inverter cost (its threshold field is ignored, use
# ``-``).  '#' starts a comment.


def library_from_pitch_table(text: str, max_arity: int | None = None) -> TCellLibrary:
    costs: dict[tuple[int, int], float] = {}
    inverter = 1.0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 4:
            raise ParseError("expected 'name arity threshold cost'", lineno)
        name, arity_s, thr_s, cost_s = fields
        try:
            cost = float(cost_s)
        except ValueError:
            raise ParseError(f"bad cost {cost_s!r}", lineno) from None
        if cost <= 0:
            raise ParseError("cost must be positive", lineno)
        if name.lower() == "inv":
            inverter = cost
            continue
        try:
            arity, thr = int(arity_s), int(thr_s)
        except ValueError:
            raise ParseError("arity and threshold must be integers", lineno) from None
        if not 1 <= thr <= arity:
            raise ParseError("threshold must lie in [1, arity]", lineno)
        costs[(arity, thr)] = cost
    if not costs:
        raise ParseError("pitch table lists no threshold cells")
    top = max(a for a, _ in costs)
    return TCellLibrary(max_arity or top, costs, inverter)
