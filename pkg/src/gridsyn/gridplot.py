"""Grid plots: minterms as lattice paths, shared through a minimal DAG.

Every minterm of an n-input function is drawn as an n-step path in an
orthogonal grid: in input order, a 1 steps right (raising the rank) and a 0
steps down.  All paths start at the origin and end on the n-th diagonal, at
the point determined by their rank.  Sharing common prefixes and suffixes
turns the path bundle into a DAG whose size measures how well the chosen
input order and polarity expose structure:

- node identity is (grid point, suffix set): two prefixes occupy the same
  node iff they have equal depth, equal rank, and accept exactly the same
  completions.  Prefixes with equal suffix sets at different ranks remain
  distinct nodes, since they sit at different grid points.
- a grid point hosting two or more nodes needs a bridge when drawn in the
  plane; a plot whose points all host a single node is planar.

The node count N (origin excluded) is the primary layout-optimization
objective; the link count L breaks ties.

Internally a node's suffix set is a bit mask over the ``2**k`` possible
completions (k characters left to read), with the next character to read in
the most significant position, so splitting on the next character is a
single shift or mask of a big integer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, NamedTuple, Sequence

from .cubes import (
    CapacityError,
    DEFAULT_EXPANSION_CAP,
    MintermSet,
    PhaseVector,
)


@dataclass(frozen=True)
class GridNode:
    """One suffix class pinned to a grid point.

    ``one`` and ``zero`` are node indices at the next depth, or None.
    ``suffix_key`` identifies the suffix class (the completion-set mask).
    """

    rank: int
    depth: int
    suffix_key: int
    one: int | None
    zero: int | None

    @property
    def point(self) -> tuple[int, int]:
        return (self.rank, self.depth)


class PlotMetrics(NamedTuple):
    node_count: int
    link_count: int

    def __str__(self) -> str:
        return f"N={self.node_count} L={self.link_count}"


@dataclass(frozen=True)
class GridDag:
    """Minimal stratified acceptor of a fixed-length word set on the grid."""

    n: int
    order: tuple[int, ...]
    phases: PhaseVector
    nodes: tuple[GridNode, ...]
    levels: tuple[tuple[int, ...], ...]

    @property
    def origin(self) -> int:
        return 0

    def accepting(self) -> tuple[int, ...]:
        return self.levels[self.n] if self.n < len(self.levels) else ()

    def links(self) -> Iterator[tuple[int, int, int]]:
        """Yield (source node id, bit value, target node id)."""
        for i, node in enumerate(self.nodes):
            if node.one is not None:
                yield (i, 1, node.one)
            if node.zero is not None:
                yield (i, 0, node.zero)


def _word_of(v: int, n: int, order: Sequence[int], phase_mask: int) -> int:
    """Encode assignment ``v`` as a word index, first consumed input most significant."""
    u = v ^ phase_mask
    w = 0
    for t in range(n):
        w = (w << 1) | ((u >> order[t]) & 1)
    return w


def build_grid_dag(
    s: MintermSet,
    order: Sequence[int] | None = None,
    phases: PhaseVector | None = None,
    cap: int = DEFAULT_EXPANSION_CAP,
) -> GridDag:
    """Build the minimal grid DAG of a minterm set under an order and phasing.

    The DAG accepts exactly the reordered, rephased minterm words; prefixes
    merge iff they share depth, rank, and suffix set.
    """
    n = s.n
    if n > cap:
        raise CapacityError(f"grid construction capped at {cap} inputs")
    order = tuple(order) if order is not None else tuple(range(n))
    if sorted(order) != list(range(n)):
        raise ValueError("order is not a permutation of the inputs")
    if phases is None:
        phases = PhaseVector.none(n)
    if phases.n != n:
        raise ValueError("phase vector length mismatch")

    word_bits = 0
    pmask = phases.mask
    for v in s.members():
        word_bits |= 1 << _word_of(v, n, order, pmask)

    # Forward pass: discover the (rank, suffix-mask) keys of every level.
    level_keys: list[set[tuple[int, int]]] = [{(0, word_bits)}]
    cur = level_keys[0]
    for d in range(n):
        half = 1 << (n - d - 1)
        low = (1 << half) - 1
        nxt: set[tuple[int, int]] = set()
        for r, mask in cur:
            if not mask:
                continue
            hi = mask >> half
            lo = mask & low
            if hi:
                nxt.add((r + 1, hi))
            if lo:
                nxt.add((r, lo))
        level_keys.append(nxt)
        cur = nxt

    ids: list[dict[tuple[int, int], int]] = []
    flat: list[tuple[int, int, int]] = []  # (rank, depth, mask)
    next_id = 0
    for d, keys in enumerate(level_keys):
        idmap = {}
        for key in sorted(keys):
            idmap[key] = next_id
            flat.append((key[0], d, key[1]))
            next_id += 1
        ids.append(idmap)

    nodes = []
    for rank, depth, mask in flat:
        one = zero = None
        if depth < n and mask:
            half = 1 << (n - depth - 1)
            hi = mask >> half
            lo = mask & ((1 << half) - 1)
            if hi:
                one = ids[depth + 1][(rank + 1, hi)]
            if lo:
                zero = ids[depth + 1][(rank, lo)]
        nodes.append(GridNode(rank=rank, depth=depth, suffix_key=mask, one=one, zero=zero))

    levels = tuple(
        tuple(ids[d][key] for key in sorted(level_keys[d])) for d in range(n + 1)
    )
    return GridDag(n=n, order=order, phases=phases, nodes=tuple(nodes), levels=levels)


def metrics(g: GridDag) -> PlotMetrics:
    """Node count (origin excluded) and link count."""
    links = sum((node.one is not None) + (node.zero is not None) for node in g.nodes)
    return PlotMetrics(len(g.nodes) - 1, links)


def bridge_points(g: GridDag) -> dict[tuple[int, int], int]:
    """Grid points hosting more than one node, with their multiplicities."""
    counts: dict[tuple[int, int], int] = {}
    for node in g.nodes:
        counts[node.point] = counts.get(node.point, 0) + 1
    return {pt: k for pt, k in sorted(counts.items()) if k > 1}


def is_planar_plot(g: GridDag) -> bool:
    """True iff every grid point hosts at most one node."""
    for level in g.levels:
        ranks = [g.nodes[i].rank for i in level]
        if len(ranks) != len(set(ranks)):
            return False
    return True


def _msb_word_to_index(w: int, length: int) -> int:
    """Convert a word (first character most significant) to assignment-index form."""
    idx = 0
    for t in range(length):
        if (w >> (length - 1 - t)) & 1:
            idx |= 1 << t
    return idx


def _suffix_minterms(node: GridNode, n: int) -> MintermSet:
    k = n - node.depth
    bits = 0
    mask = node.suffix_key
    while mask:
        low = mask & -mask
        w = low.bit_length() - 1
        bits |= 1 << _msb_word_to_index(w, k)
        mask ^= low
    return MintermSet(k, bits)


def _prefix_words(g: GridDag, depth: int) -> dict[int, set[int]]:
    """Set of length-``depth`` words (MSB-first) reaching each node at ``depth``."""
    cur: dict[int, set[int]] = {g.origin: {0}}
    for _ in range(depth):
        nxt: dict[int, set[int]] = {}
        for nid, words in cur.items():
            node = g.nodes[nid]
            if node.one is not None:
                nxt.setdefault(node.one, set()).update((w << 1) | 1 for w in words)
            if node.zero is not None:
                nxt.setdefault(node.zero, set()).update(w << 1 for w in words)
        cur = nxt
    return cur


def _prefix_minterms(words: set[int], depth: int) -> MintermSet:
    bits = 0
    for w in words:
        bits |= 1 << _msb_word_to_index(w, depth)
    return MintermSet(depth, bits)


def planar_factor(g: GridDag, depth: int) -> tuple[MintermSet, MintermSet] | None:
    """Split F = G * H at a depth hosting a single node, if any.

    G is the set of prefix paths (over the first ``depth`` ordered, phased
    inputs) and H the node's suffix set; both are in the reordered domain.
    """
    if not 0 < depth < g.n:
        raise ValueError("factor depth must satisfy 0 < depth < n")
    level = g.levels[depth]
    if len(level) != 1:
        return None
    nid = level[0]
    words = _prefix_words(g, depth).get(nid, set())
    return (_prefix_minterms(words, depth), _suffix_minterms(g.nodes[nid], g.n))


def rank_cut(
    g: GridDag, depth: int
) -> list[tuple[int, MintermSet, MintermSet]] | None:
    """Per-rank factor terms at a depth where every grid point hosts one node.

    Returns [(rank, prefix set, suffix set), ...] with F the disjoint sum of
    the per-rank products, or None when some grid point hosts several nodes.
    """
    if not 0 < depth < g.n:
        raise ValueError("cut depth must satisfy 0 < depth < n")
    level = g.levels[depth]
    ranks = [g.nodes[i].rank for i in level]
    if len(ranks) != len(set(ranks)):
        return None
    prefixes = _prefix_words(g, depth)
    out = []
    for nid in sorted(level, key=lambda i: g.nodes[i].rank):
        node = g.nodes[nid]
        out.append(
            (
                node.rank,
                _prefix_minterms(prefixes.get(nid, set()), depth),
                _suffix_minterms(node, g.n),
            )
        )
    return out


def path_counts(g: GridDag) -> dict[int, int]:
    """Number of accepted paths from the origin to each node."""
    counts = {g.origin: 1}
    for i, node in enumerate(g.nodes):
        c = counts.get(i, 0)
        if not c:
            continue
        if node.one is not None:
            counts[node.one] = counts.get(node.one, 0) + c
        if node.zero is not None:
            counts[node.zero] = counts.get(node.zero, 0) + c
    return counts


def pascal_counts(n: int) -> list[list[int]]:
    """Path multiplicities of the full (tautology) plot, by depth.

    Row d entry r counts the paths from the origin to grid point (r, d);
    each entry is the sum of its two predecessors, so the n-th row is the
    binomial diagonal.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    rows = [[1]]
    for _ in range(n):
        prev = rows[-1]
        row = [1]
        for r in range(1, len(prev)):
            row.append(prev[r - 1] + prev[r])
        row.append(1)
        if len(prev) == 1:
            row = [1, 1]
        rows.append(row)
    return rows


class LayoutResult(NamedTuple):
    order: tuple[int, ...]
    phases: PhaseVector
    metrics: PlotMetrics


def minimize_layout(
    s: MintermSet,
    mode: str = "exhaustive",
    seed: int = 0,
    cap: int = DEFAULT_EXPANSION_CAP,
) -> LayoutResult:
    """Search input orders and phases minimizing the node count N.

    Ties break on smaller L, then on the lexicographically smallest
    (order, phases) pair.  ``exhaustive`` sweeps all n! * 2**n configurations
    (n <= 8); ``greedy`` hill-climbs with pairwise order swaps and single
    phase flips from the identity plus n seeded random restarts.
    """
    n = s.n
    if mode == "exhaustive":
        if n > 8:
            raise ValueError("exhaustive layout search requires n <= 8")
        best = None
        for order in permutations(range(n)):
            for ph in product((False, True), repeat=n):
                m = metrics(build_grid_dag(s, order, PhaseVector(ph), cap=cap))
                key = (m.node_count, m.link_count, order, ph)
                if best is None or key < best:
                    best = key
        assert best is not None
        return LayoutResult(best[2], PhaseVector(best[3]), PlotMetrics(best[0], best[1]))
    if mode != "greedy":
        raise ValueError(f"unknown search mode {mode!r}")

    rng = random.Random(seed)

    def measure(order: tuple[int, ...], ph: tuple[bool, ...]) -> PlotMetrics:
        return metrics(build_grid_dag(s, order, PhaseVector(ph), cap=cap))

    def climb(order: tuple[int, ...], ph: tuple[bool, ...]):
        cur_m = measure(order, ph)
        while True:
            best_neighbor = None
            for i in range(n):
                for j in range(i + 1, n):
                    cand = list(order)
                    cand[i], cand[j] = cand[j], cand[i]
                    cand_t = tuple(cand)
                    m = measure(cand_t, ph)
                    k = (m.node_count, m.link_count, cand_t, ph)
                    if best_neighbor is None or k < best_neighbor:
                        best_neighbor = k
            for i in range(n):
                cand_ph = tuple(p ^ (idx == i) for idx, p in enumerate(ph))
                m = measure(order, cand_ph)
                k = (m.node_count, m.link_count, order, cand_ph)
                if best_neighbor is None or k < best_neighbor:
                    best_neighbor = k
            if best_neighbor is None or best_neighbor[:2] >= (cur_m.node_count, cur_m.link_count):
                return (cur_m.node_count, cur_m.link_count, order, ph)
            cur_m = PlotMetrics(best_neighbor[0], best_neighbor[1])
            order, ph = best_neighbor[2], best_neighbor[3]

    starts = [(tuple(range(n)), (False,) * n)]
    for _ in range(n):
        order = list(range(n))
        rng.shuffle(order)
        ph = tuple(bool(rng.getrandbits(1)) for _ in range(n))
        starts.append((tuple(order), ph))
    best = min(climb(order, ph) for order, ph in starts)
    return LayoutResult(best[2], PhaseVector(best[3]), PlotMetrics(best[0], best[1]))


# ---------------------------------------------------------------------------
# rendering


def render(g: GridDag, style: str = "ascii") -> str:
    if style == "ascii":
        return render_ascii(g)
    if style == "svg":
        return render_svg(g)
    raise ValueError(f"unknown render style {style!r}")


def _cell(node: GridNode) -> tuple[int, int]:
    # column = rank (right steps), row = depth - rank (down steps)
    return (node.rank, node.depth - node.rank)


def render_ascii(g: GridDag) -> str:
    """Deterministic character drawing: 'o' nodes, '*' accepting, '=' bridges."""
    mult: dict[tuple[int, int], int] = {}
    for node in g.nodes:
        mult[node.point] = mult.get(node.point, 0) + 1

    max_col = max((node.rank for node in g.nodes), default=0)
    max_row = max((node.depth - node.rank for node in g.nodes), default=0)
    width = max_col * 4 + 4
    height = max_row * 2 + 1
    canvas = [[" "] * width for _ in range(height)]

    for node in g.nodes:
        col, row = _cell(node)
        x, y = col * 4, row * 2
        if node.one is not None:
            canvas[y][x + 1 : x + 4] = "---"
        if node.zero is not None:
            canvas[y + 1][x] = "|"
    for node in g.nodes:
        col, row = _cell(node)
        x, y = col * 4, row * 2
        if mult[node.point] > 1:
            canvas[y][x] = "="
        elif node.depth == g.n:
            canvas[y][x] = "*"
            for k, ch in enumerate(str(node.rank)):
                canvas[y][x + 1 + k] = ch
        else:
            canvas[y][x] = "o"

    m = metrics(g)
    lines = ["".join(row).rstrip() for row in canvas]
    lines.append("")
    lines.append(str(m))
    acc_ranks = sorted(g.nodes[i].rank for i in g.accepting())
    lines.append("accepting ranks: " + (",".join(map(str, acc_ranks)) if acc_ranks else "none"))
    bridges = bridge_points(g)
    if bridges:
        lines.append(
            "bridges: " + " ".join(f"(r={r},d={d})x{k}" for (r, d), k in bridges.items())
        )
    else:
        lines.append("bridges: none")
    return "\n".join(lines) + "\n"


def render_svg(g: GridDag) -> str:
    """Self-contained SVG rendering of the plot."""
    step = 60
    pad = 30
    mult: dict[tuple[int, int], int] = {}
    for node in g.nodes:
        mult[node.point] = mult.get(node.point, 0) + 1

    def xy(node: GridNode) -> tuple[int, int]:
        col, row = _cell(node)
        return (pad + col * step, pad + row * step)

    max_col = max((node.rank for node in g.nodes), default=0)
    max_row = max((node.depth - node.rank for node in g.nodes), default=0)
    w = pad * 2 + max_col * step + step
    h = pad * 2 + max_row * step + step
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" font-family="monospace" font-size="12">'
    ]
    for node in g.nodes:
        x, y = xy(node)
        for target, label in ((node.one, "1"), (node.zero, "0")):
            if target is None:
                continue
            tx, ty = xy(g.nodes[target])
            parts.append(
                f'<line x1="{x}" y1="{y}" x2="{tx}" y2="{ty}" stroke="black" stroke-width="1.5"/>'
            )
    for node in g.nodes:
        x, y = xy(node)
        bridged = mult[node.point] > 1
        fill = "red" if bridged else ("black" if node.depth == g.n else "white")
        parts.append(
            f'<circle cx="{x}" cy="{y}" r="6" fill="{fill}" stroke="black" stroke-width="1.5"/>'
        )
        if node.depth == g.n:
            parts.append(f'<text x="{x + 10}" y="{y + 4}">{node.rank}</text>')
    m = metrics(g)
    parts.append(f'<text x="{pad}" y="{h - 8}">{m}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
