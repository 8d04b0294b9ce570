"""Tables of edge densities of G(q, t) against the Turán lower-bound constants.

Every family is an instance of G(q^(r-1), t * (1 + q + ... + q^(r-2))),
which is K_{r, t^(r-1) (r-1)! + 1}-free and has about
(1/2) t^((r-1)/r) n^(2 - 1/r) edges.  The ``ratio`` column is
m / n^(2 - 1/r) and ``target`` is the limiting constant.  Finite q only
shows a trend; nothing about the limit is asserted here.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import astuple, dataclass, fields
from decimal import ROUND_HALF_EVEN, Decimal

from .errors import HypothesisViolated
from .graph import count_edges, furedi_graph, norm_subgroup_order

FAMILIES = ("k33", "k2t", "general")
_SIX_PLACES = Decimal("0.000001")


def round6(x: float) -> Decimal:
    return Decimal(x).quantize(_SIX_PLACES, rounding=ROUND_HALF_EVEN)


@dataclass(frozen=True)
class BoundsRow:
    q: int
    t: int
    r: int
    n: int
    m: int
    a: int
    b: int
    ratio: Decimal
    target: Decimal


def family_params(family: str, t: int | None = None, r: int | None = None) -> tuple[int, int]:
    """Resolve a family name to its ``(t, r)``."""
    if family == "k33":
        return 1, 3
    if family == "k2t":
        if t is None:
            raise HypothesisViolated("family k2t needs --t")
        return t, 2
    if family == "general":
        if r is None:
            raise HypothesisViolated("family general needs --r")
        return (1 if t is None else t), r
    raise ValueError(f"unknown family {family!r}")


def forbidden_pair(t: int, r: int) -> tuple[int, int]:
    return r, t ** (r - 1) * math.factorial(r - 1) + 1


def bounds_row(q: int, t: int, r: int) -> BoundsRow:
    if r < 2:
        raise HypothesisViolated(f"r must be at least 2, got {r}")
    if t < 1 or (q - 1) % t:
        raise HypothesisViolated(f"t={t} does not divide q-1={q - 1}")
    G = furedi_graph(q ** (r - 1), t * norm_subgroup_order(q, r))
    m = count_edges(G)
    a, b = forbidden_pair(t, r)
    ratio = m / G.n ** (2 - 1 / r)
    target = 0.5 * t ** ((r - 1) / r)
    return BoundsRow(q, t, r, G.n, m, a, b, round6(ratio), round6(target))


_COLUMNS = [f.name for f in fields(BoundsRow)]


def format_table(rows: list[BoundsRow]) -> str:
    cells = [_COLUMNS] + [[str(v) for v in astuple(row)] for row in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(_COLUMNS))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in cells]
    return "\n".join(lines) + "\n"


def format_csv(rows: list[BoundsRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_COLUMNS)
    for row in rows:
        writer.writerow(astuple(row))
    return out.getvalue()
