"""Line-oriented text format for fusion rings.

    ring <name>
    rank <r>
    names <n0> <n1> ... <n{r-1}>        # n0 is the unit label
    dual <d0> <d1> ... <d{r-1}>         # 0-based involution, d0 = 0
    N <i> <j> : <m0> <m1> ... <m{r-1}>  # for all 1 <= i, j <= r-1
    end

Unit rows are implied; '#' starts a comment; serialization is canonical
and byte-stable, so files double as golden fixtures.
"""

from __future__ import annotations

import numpy as np

from .rings import FusionRing

MAX_FILE_RANK = 8


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse(text: str) -> FusionRing:
    """Parse and fully validate one ring document."""
    stream = list(_tokens(text))
    pos = 0

    def expect(keyword: str):
        nonlocal pos
        if pos >= len(stream):
            raise ParseError(f"unexpected end of document, expected '{keyword}'")
        lineno, parts = stream[pos]
        if parts[0] != keyword:
            raise ParseError(f"expected '{keyword}', found '{parts[0]}'", lineno)
        pos += 1
        return lineno, parts[1:]

    lineno, rest = expect("ring")
    if len(rest) != 1:
        raise ParseError("ring line needs exactly one name", lineno)
    name = rest[0]

    lineno, rest = expect("rank")
    if len(rest) != 1 or not rest[0].isdigit():
        raise ParseError("rank line needs one integer", lineno)
    rank = int(rest[0])
    if not 1 <= rank <= MAX_FILE_RANK:
        raise ParseError(f"rank must be between 1 and {MAX_FILE_RANK}", lineno)

    lineno, names = expect("names")
    if len(names) != rank:
        raise ParseError(f"expected {rank} names, found {len(names)}", lineno)

    lineno, rest = expect("dual")
    try:
        dual = [int(v) for v in rest]
    except ValueError:
        raise ParseError("dual entries must be integers", lineno) from None
    if len(dual) != rank:
        raise ParseError(f"expected {rank} dual entries, found {len(dual)}", lineno)

    n = np.zeros((rank, rank, rank), dtype=np.int64)
    for j in range(rank):
        n[0, j, j] = 1
    for i in range(1, rank):
        n[i, 0, i] = 1
    seen: set[tuple[int, int]] = set()
    while pos < len(stream) and stream[pos][1][0] == "N":
        lineno, parts = stream[pos]
        pos += 1
        body = parts[1:]
        if len(body) < 3 or body[2] != ":":
            raise ParseError("N line must look like 'N i j : m0 ... '", lineno)
        try:
            i, j = int(body[0]), int(body[1])
            row = [int(v) for v in body[3:]]
        except ValueError:
            raise ParseError("N line entries must be integers", lineno) from None
        if not (1 <= i < rank and 1 <= j < rank):
            raise ParseError(f"N indices ({i},{j}) out of range", lineno)
        if (i, j) in seen:
            raise ParseError(f"duplicate N line for ({i},{j})", lineno)
        if len(row) != rank:
            raise ParseError(f"expected {rank} coefficients, found {len(row)}", lineno)
        if any(v < 0 for v in row):
            raise ParseError("coefficients must be nonnegative", lineno)
        seen.add((i, j))
        n[i, j] = row

    expect("end")
    if pos != len(stream):
        raise ParseError("content after 'end'", stream[pos][0])

    for i in range(1, rank):
        for j in range(1, rank):
            if (i, j) not in seen:
                raise ParseError(f"missing N line for ({i},{j})")

    try:
        ring = FusionRing(n, dual=dual, names=names, name=name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    ring.validate()
    return ring


def serialize(ring: FusionRing) -> str:
    name = ring.name or "unnamed"
    if any(c.isspace() for c in name):
        name = "_".join(name.split())
    lines = [
        f"ring {name}",
        f"rank {ring.rank}",
        "names " + " ".join(ring.names),
        "dual " + " ".join(str(d) for d in ring.dual),
    ]
    for i in range(1, ring.rank):
        for j in range(1, ring.rank):
            row = " ".join(str(int(v)) for v in ring.N[i, j])
            lines.append(f"N {i} {j} : {row}")
    lines.append("end")
    return "\n".join(lines) + "\n"
