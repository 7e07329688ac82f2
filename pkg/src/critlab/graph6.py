"""Bit-exact graph6 encoding for graphs on at most 62 vertices."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator, TextIO

from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 text; ``offset`` is the byte position at fault."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def to_graph6(g: Graph) -> str:
    out = [chr(63 + g.n)]
    value = 0
    nbits = 0
    # upper triangle, column-major: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            value = (value << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + value))
                value = 0
                nbits = 0
    if nbits:
        out.append(chr(63 + (value << (6 - nbits))))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside 63..126", base + i)
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error(f"multi-byte vertex count exceeds the {MAX_VERTICES}-vertex cap", base)
    if n > MAX_VERTICES:
        raise Graph6Error(f"vertex count {n} exceeds {MAX_VERTICES}", base)
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(s) != expected:
        raise Graph6Error(f"expected {expected} bytes for n={n}, got {len(s)}", base + min(len(s), expected))
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = (ord(s[-1]) - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("nonzero padding bits", base + len(s) - 1)
    return Graph(n, tuple(adj))


def read_graph6_lines(stream: TextIO) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, text)`` for every non-blank line, 1-based."""
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if line:
            yield lineno, line


def load_graph6_file(path: str | Path) -> list[Graph]:
    with open(path, encoding="ascii") as fh:
        out = []
        for lineno, line in read_graph6_lines(fh):
            try:
                out.append(from_graph6(line))
            except Graph6Error as exc:
                raise Graph6Error(f"{path}:{lineno}: {exc}", exc.offset) from exc
        return out


def write_graph6_file(path: str | Path, graphs: Iterable[Graph]) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + "\n")
