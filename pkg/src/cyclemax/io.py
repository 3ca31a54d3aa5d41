"""Plain edge-list and graph6 serialisation.

Edge list: first line ``"n m"``, then ``m`` lines ``"u v"`` (zero-indexed),
written with ``u < v`` in lexicographic order. graph6 follows the format used by
nauty/networkx, including the optional ``>>graph6<<`` header on input.
"""

from __future__ import annotations

from .graph import Graph, GraphError

GRAPH6_HEADER = ">>graph6<<"


class GraphFormatError(GraphError):
    pass


def read_edge_list(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        return Graph(0, ())
    try:
        header = [int(x) for x in lines[0]]
        body = [tuple(int(x) for x in ln) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"non-integer token in edge list: {exc}") from None
    if len(header) != 2:
        raise GraphFormatError("edge list header must be 'n m'")
    n, m = header
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}")
    if any(len(e) != 2 for e in body):
        raise GraphFormatError("each edge line must hold exactly two vertices")
    edges = [(u, v) for u, v in body]
    if len({tuple(sorted(e)) for e in edges}) != len(edges):
        raise GraphFormatError("repeated edge in edge list")
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise GraphFormatError("graph too large for graph6")


def _decode_n(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise GraphFormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) > 1 and data[1] == 126:
        digits, rest = data[2:8], data[8:]
    else:
        digits, rest = data[1:4], data[4:]
    if len(digits) not in (3, 6):
        raise GraphFormatError("truncated graph6 size field")
    n = 0
    for c in digits:
        n = (n << 6) | (c - 63)
    return n, rest


def write_graph6(g: Graph, header: bool = False) -> str:
    bits = [g.adj[j] >> i & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + sum(b << (5 - k) for k, b in enumerate(bits[i : i + 6]))
        for i in range(0, len(bits), 6)
    )
    out = (_encode_n(g.n) + body).decode("ascii")
    return (GRAPH6_HEADER + out) if header else out


def read_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    data = s.encode("ascii")
    if any(not 63 <= c <= 126 for c in data):
        raise GraphFormatError("graph6 characters must lie in '?'..'~'")
    n, body = _decode_n(data)
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def detect_format(text: str) -> str:
    """``"edgelist"`` when the first non-blank byte is a digit (or the text is
    blank), ``"graph6"`` otherwise. Digits never occur in graph6 data."""
    s = text.lstrip()
    if not s or s[0].isdigit() or s[0] == "#":
        return "edgelist"
    return "graph6"


def read_graph(text: str, fmt: str = "auto") -> Graph:
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "edgelist":
        return read_edge_list(text)
    if fmt == "graph6":
        return read_graph6(text)
    raise GraphFormatError(f"unknown graph format {fmt!r}")
