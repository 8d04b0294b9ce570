"""The graphs G(q, t) and their exact counting formulas.

Vertices are the H-orbits of nonzero pairs (a, b) in F x F, represented by
the orbit member minimizing ``(enc(a), enc(b))``.  Two vertices are adjacent
when ``a*x + b*y`` lies in H.  Rows of the adjacency matrix are stored as
Python ints used as bitsets (bit ``v`` of ``adj[u]`` is the edge ``uv``).
"""

from __future__ import annotations

import io
from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import HeaderMismatch, MalformedFile, NotPrimePower, ZeroPair
from .field import FieldElement, FieldSpec, Subgroup, make_field, prime_power, subgroup

_ROW_CHUNK = 256


class Vertex(NamedTuple):
    a: FieldElement
    b: FieldElement
    index: int


@dataclass(frozen=True, eq=False)
class FurediGraph:
    field: FieldSpec
    H: Subgroup
    vertices: tuple[Vertex, ...]
    adj: tuple[int, ...]
    loop_count: int

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def t(self) -> int:
        return self.H.order

    @property
    def n(self) -> int:
        return len(self.vertices)

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, u: int) -> list[int]:
        return bits_to_list(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits_to_list(self.adj[u] >> (u + 1) << (u + 1))]

    def adjacency_matrix(self) -> np.ndarray:
        return rows_to_matrix(self.adj, self.n)

    def __repr__(self):
        return f"G({self.q},{self.t}) n={self.n} m={count_edges(self)}"


def bits_to_list(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def matrix_to_rows(matrix: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(np.asarray(matrix, dtype=bool), axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def rows_to_matrix(rows, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    buf = np.frombuffer(b"".join(r.to_bytes(nbytes, "little") for r in rows), dtype=np.uint8)
    return np.unpackbits(buf.reshape(len(rows), nbytes), axis=1, bitorder="little")[:, :n].astype(bool)


def canonical_rep(a: FieldElement, b: FieldElement, H: Subgroup) -> tuple[FieldElement, FieldElement]:
    """Orbit representative of (a, b): the minimum of (h*a, h*b) over h in H."""
    if not a and not b:
        raise ZeroPair("(0, 0) is not a vertex")
    return min(((h * a, h * b) for h in H), key=lambda pair: (pair[0].enc, pair[1].enc))


def _canonical_keys(F: FieldSpec, H: Subgroup) -> np.ndarray:
    q = F.q
    keys = np.arange(1, q * q, dtype=np.int64)
    a, b = keys // q, keys % q
    best = np.full_like(keys, q * q)
    for h in H.encs:
        best = np.minimum(best, F.vmul(h, a) * q + F.vmul(h, b))
    return np.unique(best)


def build_graph(F: FieldSpec, t: int) -> FurediGraph:
    """Construct G(q, t) over ``F``; loops ``a*a + b*b in H`` are dropped and counted."""
    H = subgroup(F, t)
    q = F.q
    keys = _canonical_keys(F, H)
    n = len(keys)
    if n * t != q * q - 1:
        raise AssertionError(f"found {n} orbits, expected (q^2-1)/t = {(q * q - 1) // t}")
    A, B = keys // q, keys % q
    member = H.membership
    rows: list[int] = []
    loops = 0
    for lo in range(0, n, _ROW_CHUNK):
        hi = min(lo + _ROW_CHUNK, n)
        s = F.vadd(F.vmul(A[lo:hi, None], A[None, :]), F.vmul(B[lo:hi, None], B[None, :]))
        block = member[s]
        idx = np.arange(lo, hi)
        loops += int(block[idx - lo, idx].sum())
        block[idx - lo, idx] = False
        rows.extend(matrix_to_rows(block))
    vertices = tuple(Vertex(FieldElement(F, int(x)), FieldElement(F, int(y)), i)
                     for i, (x, y) in enumerate(zip(A.tolist(), B.tolist())))
    return FurediGraph(F, H, vertices, tuple(rows), loops)


def furedi_graph(q: int, t: int) -> FurediGraph:
    """G(q, t) for a prime power ``q``."""
    p, k = prime_power(q)
    return build_graph(make_field(p, k), t)


def count_edges(G) -> int:
    rows = G.adj if hasattr(G, "adj") else G
    return sum(r.bit_count() for r in rows) // 2


def degree_histogram(G) -> dict[int, int]:
    return dict(sorted(Counter(G.degrees()).items()))


def norm_subgroup_order(q: int, r: int) -> int:
    """``1 + q + ... + q**(r-2)``, the order of the norm-one subgroup of GF(q^(r-1))."""
    return sum(q ** i for i in range(r - 1))


def expected_edge_count_g2(q: int) -> int:
    """Exact edge count of G(q^2, q+1)."""
    p, _ = prime_power(q)
    poly = q ** 5 - q ** 4 + q ** 3 - 2 * q ** 2
    return (poly + 1) // 2 if p % 2 else poly // 2


def expected_loop_count_g2(q: int) -> int:
    """Number of classes of G(q^2, q+1) of degree q^2 - 1, i.e. with a loop removed."""
    p, _ = prime_power(q)
    return q * q - 1 if p % 2 else q * q


def expected_vertex_count_general(q: int, r: int) -> int:
    """Vertex count (q^(r-1) + 1)(q - 1) of G(q^(r-1), 1 + q + ... + q^(r-2))."""
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    return (q ** (r - 1) + 1) * (q - 1)


def edge_lower_bound(q: int, t: int) -> float:
    """(q^2 - 1)(q - 1) / 2t, the bound implied by the minimum degree."""
    return (q * q - 1) * (q - 1) / (2 * t)


# -- file format ---------------------------------------------------------------

def _header(G: FurediGraph, m: int) -> str:
    F = G.field
    return f"# furedi p={F.p} k={F.k} q={F.q} t={G.t} n={G.n} m={m} loops={G.loop_count}"


def format_graph(G: FurediGraph) -> str:
    edges = G.edges()
    out = io.StringIO()
    out.write(_header(G, len(edges)) + "\n")
    out.write(f'# vertices: {G.n} lines of "idx enc_a enc_b" follow\n')
    for v in G.vertices:
        out.write(f"{v.index} {v.a.enc} {v.b.enc}\n")
    for u, v in edges:
        out.write(f"{u} {v}\n")
    return out.getvalue()


def format_dimacs(G: FurediGraph) -> str:
    edges = G.edges()
    lines = [f"c {_header(G, len(edges))[2:]}", f"p edge {G.n} {len(edges)}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in edges]
    return "\n".join(lines) + "\n"


def export_graph(G: FurediGraph, path, dimacs: bool = False) -> None:
    text = format_dimacs(G) if dimacs else format_graph(G)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise MalformedFile(f"expected {count} integers, got {line!r}", lineno)
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise MalformedFile(f"non-integer field in {line!r}", lineno) from None


def parse_graph(text: str) -> FurediGraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith("# furedi "):
        raise MalformedFile("missing '# furedi' header", 1)
    meta = {}
    for item in lines[0].split()[2:]:
        key, sep, value = item.partition("=")
        if not sep:
            raise MalformedFile(f"bad header item {item!r}", 1)
        try:
            meta[key] = int(value)
        except ValueError:
            raise MalformedFile(f"bad header value {item!r}", 1) from None
    missing = {"p", "k", "q", "t", "n", "m", "loops"} - meta.keys()
    if missing:
        raise MalformedFile(f"header lacks {sorted(missing)}", 1)
    try:
        F = make_field(meta["p"], meta["k"])
        H = subgroup(F, meta["t"])
    except (NotPrimePower, ValueError) as exc:
        raise MalformedFile(f"header parameters invalid: {exc}", 1) from None
    if F.q != meta["q"]:
        raise HeaderMismatch(f"q={meta['q']} but p^k={F.q}", 1)
    n, m = meta["n"], meta["m"]
    if len(lines) < 2 or not lines[1].startswith("# vertices:"):
        raise MalformedFile("missing '# vertices:' line", 2)
    body = lines[2:]
    if len(body) != n + m:
        raise HeaderMismatch(f"header declares n={n} m={m} but body has {len(body)} lines", 3)

    vertices = []
    for i, line in enumerate(body[:n]):
        lineno = i + 3
        idx, ea, eb = _ints(line, lineno, 3)
        if idx != i:
            raise MalformedFile(f"vertex index {idx} out of order, expected {i}", lineno)
        if not (0 <= ea < F.q and 0 <= eb < F.q) or (ea, eb) == (0, 0):
            raise MalformedFile(f"invalid vertex pair ({ea}, {eb})", lineno)
        vertices.append(Vertex(FieldElement(F, ea), FieldElement(F, eb), i))

    rows = [0] * n
    prev = None
    for j, line in enumerate(body[n:]):
        lineno = n + j + 3
        u, v = _ints(line, lineno, 2)
        if not 0 <= u < v < n:
            raise MalformedFile(f"edge ({u}, {v}) must satisfy 0 <= u < v < n", lineno)
        if prev is not None:
            if (u, v) == prev:
                raise MalformedFile(f"duplicate edge ({u}, {v})", lineno)
            if (u, v) < prev:
                raise MalformedFile(f"edge ({u}, {v}) out of sorted order", lineno)
        prev = (u, v)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return FurediGraph(F, H, tuple(vertices), tuple(rows), meta["loops"])


def import_graph(path) -> FurediGraph:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_graph(fh.read())
