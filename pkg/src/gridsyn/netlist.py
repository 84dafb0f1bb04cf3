"""Netlists of symmetric components, inverters, disjoint products and sums.

Node kinds:

- ``SYM``: a totally symmetric component; fires iff the popcount of its
  operand values lies in its rank set.
- ``INV``: inverter.
- ``AND_DISJOINT``: product whose operands have pairwise disjoint input
  supports (checked at construction).
- ``OR``: n-ary sum, kept flat rather than as a tree.
- ``CONST``: constant 0 or 1.

Operands are references either to earlier nodes (``n3``) or directly to
circuit inputs (``i0``), so a bare literal needs no node at all.  The
builder interns structurally identical nodes, which in particular shares
one inverter per phased input, and applies local simplifications so that
emitted netlists are canonical: no nested ORs, no constant operands, no
single-operand gates, no degenerate rank sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cubes import ParseError

KIND_SYM = "SYM"
KIND_INV = "INV"
KIND_AND = "AND_DISJOINT"
KIND_OR = "OR"
KIND_CONST = "CONST"

_KINDS = (KIND_SYM, KIND_INV, KIND_AND, KIND_OR, KIND_CONST)


class NetlistError(ValueError):
    """Structural violation while building or reading a netlist."""


@dataclass(frozen=True)
class Ref:
    """Reference to a node (kind 'node') or a circuit input (kind 'input')."""

    kind: str
    index: int

    @property
    def token(self) -> str:
        return ("n" if self.kind == "node" else "i") + str(self.index)


def node_ref(index: int) -> Ref:
    return Ref("node", index)


def input_ref(index: int) -> Ref:
    return Ref("input", index)


@dataclass(frozen=True)
class NetNode:
    kind: str
    operands: tuple[Ref, ...] = ()
    ranks: frozenset[int] | None = None
    value: int | None = None


@dataclass(frozen=True)
class Netlist:
    """An immutable DAG; nodes are topologically ordered by index."""

    input_names: tuple[str, ...]
    nodes: tuple[NetNode, ...]
    output: Ref

    @property
    def n(self) -> int:
        return len(self.input_names)

    def phased_inputs(self) -> frozenset[int]:
        """Inputs that feed a shared boundary inverter."""
        out = set()
        for node in self.nodes:
            if node.kind == KIND_INV and node.operands[0].kind == "input":
                out.add(node.operands[0].index)
        return frozenset(out)

    def sym_nodes(self) -> list[NetNode]:
        return [node for node in self.nodes if node.kind == KIND_SYM]


def _supports(nodes: Sequence[NetNode]) -> list[frozenset[int]]:
    sup: list[frozenset[int]] = []

    def ref_support(ref: Ref) -> frozenset[int]:
        if ref.kind == "input":
            return frozenset((ref.index,))
        return sup[ref.index]

    for node in nodes:
        acc: set[int] = set()
        for op in node.operands:
            acc |= ref_support(op)
        sup.append(frozenset(acc))
    return sup


def netlist_supports(nl: Netlist) -> list[frozenset[int]]:
    """Input support of every node, in node order."""
    return _supports(nl.nodes)


class NetlistBuilder:
    """Construct a netlist bottom-up with interning and local simplification."""

    def __init__(self, input_names: Sequence[str]):
        self.input_names = tuple(input_names)
        self._nodes: list[NetNode] = []
        self._intern: dict[tuple, int] = {}
        self._support: list[frozenset[int]] = []

    # -- reference constructors

    def input(self, index: int) -> Ref:
        if not 0 <= index < len(self.input_names):
            raise NetlistError(f"input index {index} out of range")
        return input_ref(index)

    def const(self, value: int) -> Ref:
        if value not in (0, 1):
            raise NetlistError("constants must be 0 or 1")
        return self._add(NetNode(KIND_CONST, value=value))

    def inv(self, ref: Ref) -> Ref:
        node = self._resolve(ref)
        if node is not None:
            if node.kind == KIND_CONST:
                return self.const(1 - node.value)
            if node.kind == KIND_INV:
                return node.operands[0]
        return self._add(NetNode(KIND_INV, (ref,)))

    def sym(self, ranks: Iterable[int], operands: Sequence[Ref]) -> Ref:
        operands = tuple(operands)
        if not operands:
            raise NetlistError("symmetric node needs at least one operand")
        k = len(operands)
        ranks = frozenset(ranks)
        if not ranks.issubset(range(k + 1)):
            raise NetlistError(f"rank set {sorted(ranks)} out of range for arity {k}")
        if not ranks:
            return self.const(0)
        if len(ranks) == k + 1:
            return self.const(1)
        if k == 1:
            return operands[0] if ranks == {1} else self.inv(operands[0])
        return self._add(NetNode(KIND_SYM, operands, ranks=ranks))

    def and_disjoint(self, operands: Sequence[Ref]) -> Ref:
        flat: list[Ref] = []
        for ref in operands:
            node = self._resolve(ref)
            if node is not None and node.kind == KIND_CONST:
                if node.value == 0:
                    return self.const(0)
                continue
            if node is not None and node.kind == KIND_AND:
                flat.extend(node.operands)
            else:
                flat.append(ref)
        if not flat:
            return self.const(1)
        if len(flat) == 1:
            return flat[0]
        union: set[int] = set()
        total = 0
        for ref in flat:
            s = self._ref_support(ref)
            union |= s
            total += len(s)
        if total != len(union):
            raise NetlistError("disjoint product with overlapping operand supports")
        return self._add(NetNode(KIND_AND, tuple(flat)))

    def or_(self, operands: Sequence[Ref]) -> Ref:
        flat: list[Ref] = []
        seen: set[Ref] = set()
        for ref in operands:
            node = self._resolve(ref)
            if node is not None and node.kind == KIND_CONST:
                if node.value == 1:
                    return self.const(1)
                continue
            children = node.operands if node is not None and node.kind == KIND_OR else (ref,)
            for child in children:
                if child not in seen:
                    seen.add(child)
                    flat.append(child)
        if not flat:
            return self.const(0)
        if len(flat) == 1:
            return flat[0]
        return self._add(NetNode(KIND_OR, tuple(flat)))

    # -- assembly

    def finish(self, output: Ref) -> Netlist:
        """Freeze the netlist, dropping nodes unreachable from the output."""
        reachable: set[int] = set()

        def mark(ref: Ref):
            if ref.kind != "node" or ref.index in reachable:
                return
            reachable.add(ref.index)
            for op in self._nodes[ref.index].operands:
                mark(op)

        mark(output)
        keep = sorted(reachable)
        remap = {old: new for new, old in enumerate(keep)}

        def remap_ref(ref: Ref) -> Ref:
            return node_ref(remap[ref.index]) if ref.kind == "node" else ref

        nodes = tuple(
            NetNode(
                self._nodes[old].kind,
                tuple(remap_ref(op) for op in self._nodes[old].operands),
                ranks=self._nodes[old].ranks,
                value=self._nodes[old].value,
            )
            for old in keep
        )
        return Netlist(self.input_names, nodes, remap_ref(output))

    # -- internals

    def _resolve(self, ref: Ref) -> NetNode | None:
        return self._nodes[ref.index] if ref.kind == "node" else None

    def _ref_support(self, ref: Ref) -> frozenset[int]:
        if ref.kind == "input":
            return frozenset((ref.index,))
        return self._support[ref.index]

    def _add(self, node: NetNode) -> Ref:
        key = (node.kind, node.operands, node.ranks, node.value)
        idx = self._intern.get(key)
        if idx is None:
            idx = len(self._nodes)
            self._nodes.append(node)
            acc: set[int] = set()
            for op in node.operands:
                acc |= self._ref_support(op)
            self._support.append(frozenset(acc))
            self._intern[key] = idx
        return node_ref(idx)


# ---------------------------------------------------------------------------
# evaluation


def evaluate_netlist(nl: Netlist, assignment: Sequence[int]) -> int:
    """Bottom-up evaluation on one complete input assignment."""
    if len(assignment) != nl.n:
        raise ValueError(f"assignment length {len(assignment)} != input count {nl.n}")
    values: list[int] = []

    def val(ref: Ref) -> int:
        return int(bool(assignment[ref.index])) if ref.kind == "input" else values[ref.index]

    for node in nl.nodes:
        if node.kind == KIND_CONST:
            values.append(node.value)
        elif node.kind == KIND_INV:
            values.append(1 - val(node.operands[0]))
        elif node.kind == KIND_AND:
            values.append(int(all(val(op) for op in node.operands)))
        elif node.kind == KIND_OR:
            values.append(int(any(val(op) for op in node.operands)))
        elif node.kind == KIND_SYM:
            ones = sum(val(op) for op in node.operands)
            values.append(int(ones in node.ranks))
        else:  # pragma: no cover
            raise NetlistError(f"unknown node kind {node.kind!r}")
    return val(nl.output)


def netlist_mask(nl: Netlist, input_masks: Sequence[int], full: int) -> int:
    """Evaluate the netlist on every assignment at once.

    ``input_masks[i]`` is the truth-table mask of input ``i`` over the
    assignment space described by ``full``.  Symmetric nodes use a running
    popcount partition, so the whole netlist costs O(nodes * arity**2)
    big-integer operations.
    """
    masks: list[int] = []

    def val(ref: Ref) -> int:
        return input_masks[ref.index] if ref.kind == "input" else masks[ref.index]

    for node in nl.nodes:
        if node.kind == KIND_CONST:
            masks.append(full if node.value else 0)
        elif node.kind == KIND_INV:
            masks.append(~val(node.operands[0]) & full)
        elif node.kind == KIND_AND:
            acc = full
            for op in node.operands:
                acc &= val(op)
            masks.append(acc)
        elif node.kind == KIND_OR:
            acc = 0
            for op in node.operands:
                acc |= val(op)
            masks.append(acc)
        elif node.kind == KIND_SYM:
            classes = [full]
            for op in node.operands:
                m = val(op)
                inv = ~m & full
                nxt = [classes[0] & inv]
                for j in range(1, len(classes)):
                    nxt.append((classes[j] & inv) | (classes[j - 1] & m))
                nxt.append(classes[-1] & m)
                classes = nxt
            acc = 0
            for r in node.ranks:
                acc |= classes[r]
            masks.append(acc)
        else:  # pragma: no cover
            raise NetlistError(f"unknown node kind {node.kind!r}")
    return val(nl.output)


# ---------------------------------------------------------------------------
# serialization
#
# Text format, one node per line:
#
#     inputs: a b c
#     0 SYM [1,3] i0 i1 i2
#     1 INV n0
#     output: n1
#
# Tokens iK reference inputs, nK reference earlier nodes.  SYM nodes carry
# their rank set; CONST nodes carry their value.


def netlist_to_text(nl: Netlist) -> str:
    lines = ["inputs: " + " ".join(nl.input_names)]
    for i, node in enumerate(nl.nodes):
        parts = [str(i), node.kind]
        if node.kind == KIND_SYM:
            parts.append("[" + ",".join(map(str, sorted(node.ranks))) + "]")
        if node.kind == KIND_CONST:
            parts.append(str(node.value))
        parts.extend(op.token for op in node.operands)
        lines.append(" ".join(parts))
    lines.append("output: " + nl.output.token)
    return "\n".join(lines) + "\n"


def _parse_ref(token: str, num_nodes: int, num_inputs: int, lineno: int) -> Ref:
    if len(token) < 2 or token[0] not in "ni":
        raise ParseError(f"bad operand token {token!r}", lineno)
    try:
        idx = int(token[1:])
    except ValueError:
        raise ParseError(f"bad operand token {token!r}", lineno) from None
    if token[0] == "i":
        if not 0 <= idx < num_inputs:
            raise ParseError(f"input reference {token} out of range", lineno)
        return input_ref(idx)
    if not 0 <= idx < num_nodes:
        raise ParseError(f"node reference {token} must point to an earlier node", lineno)
    return node_ref(idx)


def netlist_from_text(text: str) -> Netlist:
    input_names: tuple[str, ...] | None = None
    nodes: list[NetNode] = []
    output: Ref | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("inputs:"):
            input_names = tuple(line[len("inputs:"):].split())
            continue
        if line.startswith("output:"):
            if input_names is None:
                raise ParseError("output before inputs", lineno)
            token = line[len("output:"):].strip()
            output = _parse_ref(token, len(nodes), len(input_names), lineno)
            continue
        if input_names is None:
            raise ParseError("node line before inputs", lineno)
        parts = line.split()
        try:
            idx = int(parts[0])
        except ValueError:
            raise ParseError(f"expected node index, got {parts[0]!r}", lineno) from None
        if idx != len(nodes):
            raise ParseError(f"node index {idx} out of sequence", lineno)
        if len(parts) < 2 or parts[1] not in _KINDS:
            raise ParseError("expected a node kind", lineno)
        kind = parts[1]
        rest = parts[2:]
        ranks = None
        value = None
        if kind == KIND_SYM:
            if not rest or not (rest[0].startswith("[") and rest[0].endswith("]")):
                raise ParseError("SYM node needs a [rank,...] set", lineno)
            body = rest[0][1:-1]
            ranks = frozenset(int(tok) for tok in body.split(",") if tok)
            rest = rest[1:]
        if kind == KIND_CONST:
            if len(rest) != 1 or rest[0] not in ("0", "1"):
                raise ParseError("CONST node needs a single 0/1 value", lineno)
            value = int(rest[0])
            rest = []
        operands = tuple(_parse_ref(tok, len(nodes), len(input_names), lineno) for tok in rest)
        if kind == KIND_INV and len(operands) != 1:
            raise ParseError("INV takes exactly one operand", lineno)
        if kind == KIND_SYM:
            if not operands:
                raise ParseError("SYM needs operands", lineno)
            if not ranks.issubset(range(len(operands) + 1)):
                raise ParseError("SYM rank set out of range for its arity", lineno)
        nodes.append(NetNode(kind, operands, ranks=ranks, value=value))
    if input_names is None:
        raise ParseError("missing inputs line")
    if output is None:
        raise ParseError("missing output line")
    return Netlist(input_names, tuple(nodes), output)


def netlist_to_json_dict(nl: Netlist) -> dict:
    nodes = []
    for i, node in enumerate(nl.nodes):
        entry: dict = {"id": i, "kind": node.kind}
        if node.ranks is not None:
            entry["ranks"] = sorted(node.ranks)
        if node.value is not None:
            entry["value"] = node.value
        entry["operands"] = [op.token for op in node.operands]
        nodes.append(entry)
    return {"inputs": list(nl.input_names), "nodes": nodes, "output": nl.output.token}


def netlist_to_expr(nl: Netlist) -> str:
    """Human-readable expression for reports."""

    def name(ref: Ref) -> str:
        if ref.kind == "input":
            return nl.input_names[ref.index]
        return rendered[ref.index]

    rendered: list[str] = []
    for node in nl.nodes:
        if node.kind == KIND_CONST:
            rendered.append(str(node.value))
        elif node.kind == KIND_INV:
            rendered.append("~" + name(node.operands[0]))
        elif node.kind == KIND_AND:
            rendered.append("(" + " & ".join(name(op) for op in node.operands) + ")")
        elif node.kind == KIND_OR:
            rendered.append("(" + " + ".join(name(op) for op in node.operands) + ")")
        else:
            ranks = ",".join(map(str, sorted(node.ranks)))
            rendered.append(f"SYM[{ranks}](" + ", ".join(name(op) for op in node.operands) + ")")
    return name(nl.output)
