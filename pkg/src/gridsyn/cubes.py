"""Cube covers, minterm sets, and the PLA text format.

Conventions used throughout the package:

- A cube is a plain string over ``{'0', '1', '-'}`` with one character per
  circuit input; character ``j`` constrains input ``j`` (the leftmost
  character is input 0).
- A complete input assignment is encoded as an integer index in which input
  ``i`` maps to bit ``i`` (input 0 is the least significant bit).  The
  minterm string ``"1010"`` over inputs ``a,b,c,d`` therefore has index 5.
- Truth tables over all ``2**n`` assignments are stored as arbitrary-size
  integers: bit ``v`` of the mask is the function value on assignment ``v``.
  All set operations on minterms are plain bitwise arithmetic.

Every value type here is immutable; operations return new objects.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

CUBE_CHARS = frozenset("01-")

#: Largest input count for which exact truth-table expansion is attempted by
#: default.  A 24-input table is a 16M-bit integer, which is still desk scale.
DEFAULT_EXPANSION_CAP = 24


class ParseError(ValueError):
    """Malformed PLA (or other structured) text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class CapacityError(RuntimeError):
    """An exact expansion would exceed the configured input-count cap."""


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class Cover:
    """An ordered list of cubes over named inputs (two-level sum of products)."""

    input_names: tuple[str, ...]
    cubes: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "input_names", tuple(self.input_names))
        object.__setattr__(self, "cubes", tuple(self.cubes))
        if len(set(self.input_names)) != len(self.input_names):
            raise ValueError("duplicate input names")
        n = len(self.input_names)
        for cube in self.cubes:
            if len(cube) != n:
                raise ValueError(f"cube {cube!r} has width {len(cube)}, expected {n}")
            if not CUBE_CHARS.issuperset(cube):
                bad = next(ch for ch in cube if ch not in CUBE_CHARS)
                raise ValueError(f"invalid cube character {bad!r} in {cube!r}")

    @property
    def n(self) -> int:
        return len(self.input_names)

    @property
    def m(self) -> int:
        return len(self.cubes)


@dataclass(frozen=True)
class MintermSet:
    """A set of complete assignments on which a function is 1.

    ``bits`` is the truth-table mask: bit ``v`` set means assignment ``v``
    is a minterm.
    """

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative input count")
        if self.bits < 0 or self.bits.bit_length() > (1 << self.n):
            raise ValueError("minterm index out of range for input count")

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, index: int) -> bool:
        return 0 <= index < (1 << self.n) and (self.bits >> index) & 1 == 1

    def members(self) -> Iterator[int]:
        """Yield minterm indices in ascending order."""
        v = self.bits
        while v:
            low = v & -v
            yield low.bit_length() - 1
            v ^= low

    def to_strings(self) -> tuple[str, ...]:
        return tuple(index_to_minterm(v, self.n) for v in self.members())

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "MintermSet":
        bits = 0
        for v in indices:
            if not 0 <= v < (1 << n):
                raise ValueError(f"minterm index {v} out of range for n={n}")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def from_strings(cls, strings: Iterable[str], n: int | None = None) -> "MintermSet":
        strings = tuple(strings)
        if n is None:
            if not strings:
                raise ValueError("cannot infer input count from an empty set")
            n = len(strings[0])
        return cls.from_indices(n, (minterm_index(s) for s in strings))

    @classmethod
    def universe(cls, n: int) -> "MintermSet":
        return cls(n, (1 << (1 << n)) - 1)


@dataclass(frozen=True)
class PhaseVector:
    """Per-input polarity choice; ``True`` means the input is inverted."""

    phases: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "phases", tuple(bool(p) for p in self.phases))

    @property
    def n(self) -> int:
        return len(self.phases)

    @property
    def mask(self) -> int:
        return sum(1 << i for i, p in enumerate(self.phases) if p)

    @property
    def inverted(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.phases) if p)

    @classmethod
    def none(cls, n: int) -> "PhaseVector":
        return cls((False,) * n)

    @classmethod
    def inverting(cls, n: int, indices: Iterable[int]) -> "PhaseVector":
        chosen = set(indices)
        if not chosen.issubset(range(n)):
            raise ValueError("phase index out of range")
        return cls(tuple(i in chosen for i in range(n)))


# ---------------------------------------------------------------------------
# index helpers


def minterm_index(s: str) -> int:
    """Index of a 0/1 minterm string (leftmost character is input 0)."""
    idx = 0
    for j, ch in enumerate(s):
        if ch == "1":
            idx |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid minterm character {ch!r}")
    return idx


def index_to_minterm(index: int, n: int) -> str:
    return "".join("1" if (index >> j) & 1 else "0" for j in range(n))


@functools.lru_cache(maxsize=None)
def assignment_masks(n: int) -> tuple[int, ...]:
    """Truth-table mask of each input variable over all ``2**n`` assignments.

    ``assignment_masks(n)[i]`` has bit ``v`` set iff bit ``i`` of ``v`` is 1.
    """
    size = 1 << n
    masks = []
    for i in range(n):
        w = 1 << i
        block = ((1 << w) - 1) << w
        span = 2 * w
        m = block
        while span < size:
            m |= m << span
            span *= 2
        masks.append(m)
    return tuple(masks)


def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


def cube_mask(cube: str, masks: Sequence[int], full: int) -> int:
    """Truth-table mask of one cube, given per-input masks."""
    acc = full
    for j, ch in enumerate(cube):
        if ch == "1":
            acc &= masks[j]
        elif ch == "0":
            acc &= ~masks[j] & full
        if not acc:
            break
    return acc


def cover_mask(cover: Cover, masks: Sequence[int], full: int) -> int:
    acc = 0
    for cube in cover.cubes:
        acc |= cube_mask(cube, masks, full)
    return acc


def popcount_class_masks(masks: Sequence[int], full: int) -> list[int]:
    """Partition a truth table by how many of the given masks are 1.

    Returns ``classes`` with ``classes[j]`` the mask of assignments on which
    exactly ``j`` of the inputs described by ``masks`` are 1.  Runs in
    O(len(masks)**2) big-integer operations, never per-assignment.
    """
    classes = [full]
    for m in masks:
        inv = ~m & full
        nxt = [classes[0] & inv]
        for j in range(1, len(classes)):
            nxt.append((classes[j] & inv) | (classes[j - 1] & m))
        nxt.append(classes[-1] & m)
        classes = nxt
    return classes


# ---------------------------------------------------------------------------
# cover operations


def cover_to_minterms(cover: Cover, cap: int = DEFAULT_EXPANSION_CAP) -> MintermSet:
    """Exact union of all minterms covered by any cube."""
    if cover.n > cap:
        raise CapacityError(f"exact expansion capped at {cap} inputs (cover has {cover.n})")
    full = full_mask(cover.n)
    return MintermSet(cover.n, cover_mask(cover, assignment_masks(cover.n), full))


def eval_cover(cover: Cover, assignment: Sequence[int]) -> int:
    """1 iff some cube matches the assignment (don't-care matches both)."""
    if len(assignment) != cover.n:
        raise ValueError(f"assignment length {len(assignment)} != input count {cover.n}")
    for cube in cover.cubes:
        if all(ch == "-" or (ch == "1") == bool(v) for ch, v in zip(cube, assignment)):
            return 1
    return 0


_FLIP = str.maketrans("01", "10")


def apply_phase(cover: Cover, p: PhaseVector) -> Cover:
    """Swap 0 and 1 in every column whose input is inverted."""
    if p.n != cover.n:
        raise ValueError("phase vector length mismatch")
    flip = set(p.inverted)
    if not flip:
        return cover
    cubes = tuple(
        "".join(ch.translate(_FLIP) if j in flip else ch for j, ch in enumerate(cube))
        for cube in cover.cubes
    )
    return Cover(cover.input_names, cubes)


def permute_inputs(cover: Cover, perm: Sequence[int]) -> Cover:
    """Reorder columns so that new column ``j`` is old column ``perm[j]``."""
    perm = tuple(perm)
    if sorted(perm) != list(range(cover.n)):
        raise ValueError("not a permutation of the inputs")
    names = tuple(cover.input_names[perm[j]] for j in range(cover.n))
    cubes = tuple("".join(cube[perm[j]] for j in range(cover.n)) for cube in cover.cubes)
    return Cover(names, cubes)


def phase_minterms(s: MintermSet, p: PhaseVector) -> MintermSet:
    """Image of a minterm set under complementing the inverted inputs."""
    if p.n != s.n:
        raise ValueError("phase vector length mismatch")
    mask = p.mask
    if not mask:
        return s
    return MintermSet.from_indices(s.n, (v ^ mask for v in s.members()))


def permute_minterms(s: MintermSet, perm: Sequence[int]) -> MintermSet:
    """Image of a minterm set under reordering inputs (see permute_inputs)."""
    perm = tuple(perm)
    if sorted(perm) != list(range(s.n)):
        raise ValueError("not a permutation of the inputs")
    out = 0
    for v in s.members():
        w = 0
        for j in range(s.n):
            if (v >> perm[j]) & 1:
                w |= 1 << j
        out |= 1 << w
    return MintermSet(s.n, out)


def minterms_to_cover(s: MintermSet, input_names: Sequence[str] | None = None) -> Cover:
    """One full cube per minterm, in ascending index order."""
    names = tuple(input_names) if input_names is not None else default_names(s.n)
    return Cover(names, tuple(index_to_minterm(v, s.n) for v in s.members()))


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n))


def cube_dc_count(cube: str) -> int:
    return cube.count("-")


def literal_density(cover: Cover) -> float:
    """Percentage of non-don't-care literal positions in the whole cube table."""
    total = cover.n * cover.m
    if total == 0:
        return 0.0
    fixed = sum(cover.n - cube_dc_count(cube) for cube in cover.cubes)
    return 100.0 * fixed / total


# ---------------------------------------------------------------------------
# PLA text format
#
# Accepted dialect (UTF-8, '#' starts a comment):
#
#     .i 4            declared input count
#     .o 1            declared output count (optional for single output)
#     .ilb a b c d    input names (optional)
#     .ob f           output names (optional)
#     .p 4            declared cube count (optional, checked)
#     1010 1          cube line: input field, optional output field
#     ...
#     .e              end marker (optional)
#
# A bare cube-per-line body with no header is also accepted; the input count
# is inferred from the first cube.


def parse_pla_outputs(text: str) -> list[tuple[str, Cover]]:
    """Parse a (possibly multi-output) PLA into one cover per output."""
    declared_n: int | None = None
    declared_out: int | None = None
    declared_p: int | None = None
    names: tuple[str, ...] | None = None
    out_names: tuple[str, ...] | None = None
    rows: list[tuple[str, str | None, int]] = []
    ended = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError("content after end marker", lineno)
        if line.startswith("."):
            tok = line.split()
            key = tok[0]
            if key == ".i":
                declared_n = _parse_int(tok, lineno, ".i")
                if declared_n <= 0:
                    raise ParseError("input count must be positive", lineno)
            elif key == ".o":
                declared_out = _parse_int(tok, lineno, ".o")
                if declared_out <= 0:
                    raise ParseError("output count must be positive", lineno)
            elif key == ".ilb":
                names = tuple(tok[1:])
            elif key == ".ob":
                out_names = tuple(tok[1:])
            elif key == ".p":
                declared_p = _parse_int(tok, lineno, ".p")
            elif key in (".e", ".end"):
                ended = True
            else:
                raise ParseError(f"unknown directive {key!r}", lineno)
            continue
        fields = line.split()
        if len(fields) == 1:
            rows.append((fields[0], None, lineno))
        elif len(fields) == 2:
            rows.append((fields[0], fields[1], lineno))
        else:
            raise ParseError("expected 'cube' or 'cube outputs'", lineno)

    if declared_n is None:
        if not rows:
            raise ParseError("no inputs declared and no cubes to infer them from")
        declared_n = len(rows[0][0])
        if declared_n == 0:
            raise ParseError("zero inputs", rows[0][2])
    n = declared_n

    has_out = rows[0][1] is not None if rows else declared_out is not None
    num_out = declared_out if declared_out is not None else (len(rows[0][1]) if rows and has_out else 1)

    cubes: list[str] = []
    out_fields: list[str] = []
    for cube, out, lineno in rows:
        if len(cube) != n:
            raise ParseError(f"cube width {len(cube)} does not match input count {n}", lineno)
        if not CUBE_CHARS.issuperset(cube):
            bad = next(ch for ch in cube if ch not in CUBE_CHARS)
            raise ParseError(f"invalid cube character {bad!r}", lineno)
        if (out is not None) != has_out:
            raise ParseError("mixed cube lines with and without an output field", lineno)
        if out is None:
            out = "1" * num_out
        if len(out) != num_out:
            raise ParseError(f"output field width {len(out)} does not match output count {num_out}", lineno)
        if not set(out).issubset({"0", "1"}):
            raise ParseError("output field must use only 0/1 (output don't-cares unsupported)", lineno)
        cubes.append(cube)
        out_fields.append(out)

    if declared_p is not None and declared_p != len(cubes):
        raise ParseError(f".p declares {declared_p} cubes but {len(cubes)} given")
    if names is None:
        names = default_names(n)
    if len(names) != n:
        raise ParseError(f".ilb lists {len(names)} names for {n} inputs")
    if len(set(names)) != n:
        raise ParseError("duplicate input names")
    if out_names is None:
        out_names = tuple(f"f{k}" for k in range(num_out))
    if len(out_names) != num_out:
        raise ParseError(f".ob lists {len(out_names)} names for {num_out} outputs")

    result = []
    for k, out_name in enumerate(out_names):
        selected = tuple(c for c, o in zip(cubes, out_fields) if o[k] == "1")
        result.append((out_name, Cover(names, selected)))
    return result


def parse_pla(text: str) -> Cover:
    """Parse a single-output PLA."""
    outputs = parse_pla_outputs(text)
    if len(outputs) != 1:
        raise ParseError(f"expected a single-output PLA, found {len(outputs)} outputs")
    return outputs[0][1]


def write_pla(cover: Cover, output_name: str = "f0") -> str:
    """Emit the dialect accepted by parse_pla, preserving cube order."""
    lines = [
        f".i {cover.n}",
        ".ilb " + " ".join(cover.input_names),
        ".o 1",
        ".ob " + output_name,
        f".p {cover.m}",
    ]
    lines.extend(f"{cube} 1" for cube in cover.cubes)
    lines.append(".e")
    return "\n".join(lines) + "\n"


def _parse_int(tokens: list[str], lineno: int, directive: str) -> int:
    if len(tokens) != 2:
        raise ParseError(f"{directive} expects one integer argument", lineno)
    try:
        return int(tokens[1])
    except ValueError:
        raise ParseError(f"{directive} expects an integer, got {tokens[1]!r}", lineno) from None
