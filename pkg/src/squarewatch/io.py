"""graph6 and plain adjacency-list reading and writing."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .errors import Graph6ParseError, GraphInputError
from .graph import Graph

HEADER = b">>graph6<<"
_MAX_N = (1 << 36) - 1


def _encode_n(n: int) -> bytes:
    if n < 0 or n > _MAX_N:
        raise GraphInputError(f"graph6 cannot encode n={n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def encode_graph6(g: Graph) -> bytes:
    """graph6 bytes for ``g`` without header or newline."""
    bits = []
    for j in range(1, g.n):
        row = g.neighbors(j)
        bits.extend(1 if i in row else 0 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + sum(b << (5 - k) for k, b in enumerate(bits[i : i + 6])) for i in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def decode_graph6(data: bytes | str) -> Graph:
    """Parse a single graph6 record (header and surrounding whitespace allowed)."""
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    start = 0
    raw = data.rstrip(b"\r\n \t")
    if raw.startswith(HEADER):
        start = len(HEADER)
    for i in range(start, len(raw)):
        if not 63 <= raw[i] <= 126:
            raise Graph6ParseError(f"byte {raw[i]!r} outside the graph6 range 63..126", i)
    if start >= len(raw):
        raise Graph6ParseError("empty graph6 record", start)
    pos = start
    if raw[pos] != 126:
        n, pos = raw[pos] - 63, pos + 1
    elif pos + 1 < len(raw) and raw[pos + 1] == 126:
        if len(raw) < pos + 8:
            raise Graph6ParseError("truncated 8-byte size header", len(raw))
        n = 0
        for b in raw[pos + 2 : pos + 8]:
            n = (n << 6) | (b - 63)
        pos += 8
    else:
        if len(raw) < pos + 4:
            raise Graph6ParseError("truncated 4-byte size header", len(raw))
        n = 0
        for b in raw[pos + 1 : pos + 4]:
            n = (n << 6) | (b - 63)
        pos += 4
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = raw[pos:]
    if len(body) != nbytes:
        off = pos + min(len(body), nbytes)
        raise Graph6ParseError(f"expected {nbytes} adjacency bytes for n={n}, got {len(body)}", off)
    pad = nbytes * 6 - nbits
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise Graph6ParseError("nonzero padding bits", pos + nbytes - 1)
    rows: list[list[int]] = [[] for _ in range(n)]
    k = 0
    for j in range(1, n):
        for i in range(j):
            if ((body[k // 6] - 63) >> (5 - k % 6)) & 1:
                rows[i].append(j)
                rows[j].append(i)
            k += 1
    return Graph(n, tuple(tuple(sorted(r)) for r in rows))


def iter_graph6(stream: Iterable[bytes | str]) -> Iterator[tuple[int, Graph | Graph6ParseError]]:
    """Yield ``(line_number, graph or parse error)`` for each non-blank line."""
    for lineno, line in enumerate(stream, 1):
        if isinstance(line, str):
            line = line.encode("ascii", errors="replace")
        if not line.strip():
            continue
        try:
            yield lineno, decode_graph6(line)
        except Graph6ParseError as exc:
            yield lineno, exc


def write_graph6(graphs: Iterable[Graph], out: TextIO) -> None:
    for g in graphs:
        out.write(encode_graph6(g).decode("ascii") + "\n")


def format_adjacency(g: Graph) -> str:
    """``n m`` on the first line, then one ``u v`` line per edge."""
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_adjacency(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise GraphInputError("empty adjacency-list input")
    try:
        n, m = (int(t) for t in rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphInputError(f"malformed adjacency-list input: {exc}") from None
    if len(edges) != m:
        raise GraphInputError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def read_graphs(text: str) -> list[tuple[str, Graph | GraphInputError]]:
    """Read either format; graph6 yields one entry per line, adjacency lists one entry."""
    stripped = text.strip()
    first = stripped.split("\n", 1)[0].strip() if stripped else ""
    if first and len(first.split()) == 2 and all(t.isdigit() for t in first.split()):
        try:
            return [("1", parse_adjacency(text))]
        except GraphInputError as exc:
            return [("1", exc)]
    return [(str(i), g) for i, g in iter_graph6(text.splitlines())]
