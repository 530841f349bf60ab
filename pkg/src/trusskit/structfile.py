"""The structure file format shared by the command-line tools.

Layout (UTF-8, whitespace-delimited, ``#`` starts a comment):

    kind <heap|group|pretruss|ring|nearring|brace>
    elements <e1> <e2> ...
    [name <label>]
    [derive_heap_from_group]
    <block>:
    <row>
    ...

Blocks are ``group:``, ``mul:`` and ``ternary:`` with one row per line and
entries given as element labels.  A ternary block has n*n rows ordered by
row index i*n + j with columns k.  Kinds are verified on load by the
matching axiom checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import StructureFileError
from .groups import FiniteGroup, group_from_table
from .heaps import FiniteHeap, heap_from_group, heap_from_table
from .trusses import (
    FinitePreTruss,
    pretruss,
    truss_from_brace,
    truss_from_near_ring,
    truss_from_ring,
)

KINDS = ("heap", "group", "pretruss", "ring", "nearring", "brace")
BLOCKS = ("group", "mul", "ternary")


@dataclass(frozen=True, eq=False)
class StructureFile:
    kind: str
    elements: tuple[str, ...]
    blocks: dict[str, list[list[str]]]
    name: Optional[str] = None
    derive_heap_from_group: bool = False


def _tokenize(text: str) -> list[tuple[int, list[str]]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = body.split()
        if tokens:
            lines.append((lineno, tokens))
    return lines


def parse_structure(text: str) -> StructureFile:
    lines = _tokenize(text)
    if not lines:
        raise StructureFileError("empty structure file")
    lineno, tokens = lines[0]
    if tokens[0] != "kind" or len(tokens) != 2:
        raise StructureFileError("expected 'kind <kind>'", lineno, 1)
    kind = tokens[1]
    if kind not in KINDS:
        raise StructureFileError(
            f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", lineno, 2
        )
    if len(lines) < 2:
        raise StructureFileError("missing 'elements' line", lineno)
    lineno, tokens = lines[1]
    if tokens[0] != "elements" or len(tokens) < 2:
        raise StructureFileError("expected 'elements <e1> <e2> ...'", lineno, 1)
    elements = tuple(tokens[1:])
    if len(set(elements)) != len(elements):
        raise StructureFileError("duplicate element labels", lineno)

    name: Optional[str] = None
    derive = False
    blocks: dict[str, list[list[str]]] = {}
    current: Optional[str] = None
    expected_rows = {"group": len(elements), "mul": len(elements),
                     "ternary": len(elements) ** 2}
    for lineno, tokens in lines[2:]:
        head = tokens[0]
        if head == "name" and current is None:
            if len(tokens) != 2:
                raise StructureFileError("expected 'name <label>'", lineno, 1)
            name = tokens[1]
            continue
        if head == "derive_heap_from_group" and current is None:
            derive = True
            continue
        if head.endswith(":") and head[:-1] in BLOCKS and len(tokens) == 1:
            current = head[:-1]
            if current in blocks:
                raise StructureFileError(f"duplicate block {current!r}", lineno, 1)
            blocks[current] = []
            continue
        if current is None:
            raise StructureFileError(
                f"unexpected token {head!r} outside any table block", lineno, 1
            )
        if len(tokens) != len(elements):
            raise StructureFileError(
                f"row has {len(tokens)} entries, expected {len(elements)}", lineno,
                len(tokens),
            )
        for col, tok in enumerate(tokens, start=1):
            if tok not in elements:
                raise StructureFileError(f"unknown element label {tok!r}", lineno, col)
        blocks[current].append(tokens)
    for block, rows in blocks.items():
        if len(rows) != expected_rows[block]:
            raise StructureFileError(
                f"block {block!r} has {len(rows)} rows, expected {expected_rows[block]}"
            )
    return StructureFile(kind, elements, blocks, name, derive)


def load_structure(path) -> StructureFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise StructureFileError(f"cannot read {path}: {exc}") from exc
    return parse_structure(text)


def _table(sf: StructureFile, block: str) -> np.ndarray:
    if block not in sf.blocks:
        raise StructureFileError(f"kind {sf.kind!r} needs a {block!r} block")
    lut = {e: i for i, e in enumerate(sf.elements)}
    return np.array(
        [[lut[tok] for tok in row] for row in sf.blocks[block]], dtype=np.int64
    )


@dataclass(frozen=True, eq=False)
class LoadedStructure:
    kind: str
    structure: Union[FiniteHeap, FiniteGroup, FinitePreTruss]


def build_structure(sf: StructureFile) -> LoadedStructure:
    """Construct and verify the declared kind; axiom failures raise
    :class:`trusskit.errors.AxiomError` carrying a witness or report."""
    n = len(sf.elements)
    if sf.kind == "heap":
        t = _table(sf, "ternary").reshape(n, n, n)
        return LoadedStructure("heap", heap_from_table(sf.elements, t))
    if sf.kind == "group":
        return LoadedStructure(
            "group", group_from_table(sf.elements, _table(sf, "group"), sf.name or "group")
        )
    if sf.kind == "pretruss":
        if sf.derive_heap_from_group:
            grp = group_from_table(sf.elements, _table(sf, "group"), sf.name or "group")
            heap = heap_from_group(grp)
        else:
            heap = heap_from_table(sf.elements, _table(sf, "ternary").reshape(n, n, n))
        return LoadedStructure("pretruss", pretruss(heap, _table(sf, "mul")))
    if sf.kind == "ring":
        add = group_from_table(sf.elements, _table(sf, "group"), "additive")
        return LoadedStructure("ring", truss_from_ring(add, _table(sf, "mul")))
    if sf.kind == "nearring":
        add = group_from_table(sf.elements, _table(sf, "group"), "additive")
        return LoadedStructure("nearring", truss_from_near_ring(add, _table(sf, "mul")))
    if sf.kind == "brace":
        add = group_from_table(sf.elements, _table(sf, "group"), "additive")
        mul = group_from_table(sf.elements, _table(sf, "mul"), "multiplicative")
        return LoadedStructure("brace", truss_from_brace(add, mul))
    raise StructureFileError(f"unknown kind {sf.kind!r}")


def serialize_pretruss(t: FinitePreTruss, name: Optional[str] = None) -> str:
    """Render a pre-truss as a structure file of kind ``pretruss``."""
    n = t.size
    lines = ["kind pretruss", "elements " + " ".join(t.elements)]
    if name:
        lines.append(f"name {name}")
    lines.append("ternary:")
    for i in range(n):
        for j in range(n):
            lines.append(" ".join(t.elements[t.ternary(i, j, k)] for k in range(n)))
    lines.append("mul:")
    for i in range(n):
        lines.append(" ".join(t.elements[t.product(i, j)] for j in range(n)))
    return "\n".join(lines) + "\n"
