"""Exhaustive K_{a,b} certification and brute-force lemma oracles.

A graph contains K_{a,b} (a <= b) exactly when some a-set of vertices has at
least b common neighbours: a common neighbour of S is adjacent to all of S
and, the graph being loopless, lies outside S.  The certifier therefore
computes the maximum common-neighbourhood size over all a-subsets.

Subsets are enumerated in lexicographic order of their sorted index tuples.
A branch is abandoned as soon as its running intersection is no larger than
the best value found so far, which keeps the first maximizer found (the
lexicographically smallest one) as the witness.  For the process pool the
work is split by smallest index; partial results are merged by value, then
by smaller witness, so the outcome does not depend on the worker count.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BadArity, BudgetExceeded, HypothesisViolated
from .field import field_of_order, make_field, norm_exponent, prime_power, subgroup
from .graph import FurediGraph, count_edges, furedi_graph, norm_subgroup_order

DEFAULT_BUDGET = 50_000_000
DEFAULT_SAMPLES = 10_000


def default_workers() -> int:
    return int(os.environ.get("TURAN_WORKERS", "1"))


def _rows(G) -> tuple[int, ...]:
    return tuple(G.adj) if hasattr(G, "adj") else tuple(G)


def common_neighbors(G, subset: Sequence[int]) -> int:
    """Bitset of vertices adjacent to every member of ``subset``."""
    rows = _rows(G)
    inter = (1 << len(rows)) - 1
    for v in subset:
        inter &= rows[v]
    return inter


# -- subset search -------------------------------------------------------------

def _extend(adj, n, depth, start, inter, prefix, state):
    # state = [best, witness]; extends prefix by `depth` more indices >= start
    if depth == 1:
        best = state[0]
        for k in range(start, n):
            c = (inter & adj[k]).bit_count()
            if c > best:
                best = c
                state[0], state[1] = c, prefix + (k,)
        return
    for k in range(start, n - depth + 1):
        nxt = inter & adj[k]
        if nxt.bit_count() > state[0]:
            _extend(adj, n, depth - 1, k + 1, nxt, prefix + (k,), state)


_worker_graph: tuple = ()


def _init_worker(adj, n, a):
    global _worker_graph
    _worker_graph = (adj, n, a)


def _scan_first(i):
    adj, n, a = _worker_graph
    state = [-1, ()]
    if a == 1:
        state = [adj[i].bit_count(), (i,)]
    else:
        _extend(adj, n, a - 1, i + 1, adj[i], (i,), state)
    return state[0], state[1]


def _merge(x, y):
    if x[0] != y[0]:
        return x if x[0] > y[0] else y
    return x if x[1] <= y[1] else y


def max_common_neighbors(G, a: int, *, workers: int = 1,
                         budget: Optional[int] = DEFAULT_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Exact max over a-subsets S of |N(S)|, with the lexicographically smallest maximizer."""
    adj = _rows(G)
    n = len(adj)
    if not 1 <= a <= n:
        raise BadArity(f"subset size {a} outside 1..{n}")
    total = math.comb(n, a)
    if budget is not None and total > budget:
        raise BudgetExceeded(total, budget)
    firsts = range(n - a + 1)
    if workers <= 1:
        state = [-1, ()]
        _extend(adj, n, a, 0, (1 << n) - 1, (), state)
        return state[0], state[1]
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                             initargs=(adj, n, a)) as pool:
        result = (-1, ())
        for part in pool.map(_scan_first, firsts):
            result = _merge(result, part)
    return result


@dataclass(frozen=True)
class FreenessCertificate:
    a: int
    b: int
    max_common: int
    witness: tuple[int, ...]
    subsets_scanned: int
    n: int
    m: int
    p: Optional[int] = None
    k: Optional[int] = None
    t: Optional[int] = None
    kind: str = "certificate"

    @property
    def verdict(self) -> str:
        return "free" if self.max_common <= self.b - 1 else "not_free"

    @property
    def free(self) -> bool:
        return self.verdict == "free"

    def record(self) -> str:
        return format_record(
            kind=self.kind, p=self.p, k=self.k, t=self.t, a=self.a, b=self.b,
            n=self.n, m=self.m, max_common=self.max_common, verdict=self.verdict,
            witness=self.witness, subsets_scanned=self.subsets_scanned, seed=None)


def format_record(**fields) -> str:
    def fmt(v):
        if v is None:
            return "-"
        if isinstance(v, bool):
            return str(v).lower()
        if isinstance(v, (tuple, list)):
            if not v:
                return "-"
            sep = "/" if isinstance(v[0], (tuple, list)) else ","
            return sep.join(fmt(x) for x in v)
        return str(v)
    return " ".join(f"{key}={fmt(value)}" for key, value in fields.items())


def certify_kab_free(G, a: int, b: int, *, workers: int = 1,
                     budget: Optional[int] = DEFAULT_BUDGET,
                     kind: str = "certificate") -> FreenessCertificate:
    """Decide K_{a,b}-freeness of ``G`` by exhaustive search over min(a,b)-subsets."""
    if min(a, b) < 1:
        raise BadArity(f"K_{{{a},{b}}} needs both sides nonempty")
    a, b = min(a, b), max(a, b)
    adj = _rows(G)
    best, witness = max_common_neighbors(adj, a, workers=workers, budget=budget)
    meta = {}
    if isinstance(G, FurediGraph):
        meta = dict(p=G.field.p, k=G.field.k, t=G.t)
    return FreenessCertificate(a, b, best, witness, math.comb(len(adj), a),
                               len(adj), count_edges(adj), kind=kind, **meta)


def find_kab_naive(G, a: int, b: int) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Reference search: try every disjoint (A, B) with |A| = a, |B| = b.

    Deliberately avoids neighbourhood intersection; each candidate pair is
    tested edge by edge on the adjacency matrix (vectorized over B).
    """
    M = G.adjacency_matrix() if hasattr(G, "adjacency_matrix") else np.asarray(G, dtype=bool)
    n = len(M)
    if a + b > n:
        return None
    all_Bs = np.array(list(itertools.combinations(range(n), b)), dtype=np.intp)
    for A in itertools.combinations(range(n), a):
        Bs = all_Bs[~np.isin(all_Bs, A).any(axis=1)]
        complete = np.ones(len(Bs), dtype=bool)
        for u in A:
            complete &= M[u][Bs].all(axis=1)
        hits = np.flatnonzero(complete)
        if len(hits):
            return A, tuple(int(v) for v in Bs[hits[0]])
    return None


# -- lemma oracles -------------------------------------------------------------

@dataclass(frozen=True)
class LemmaReport:
    lemma: str
    q: int
    r: Optional[int]
    t: Optional[int]
    max_solutions: int
    bound: int
    exhaustive: bool
    systems_scanned: int
    witness: tuple
    counterexample: Optional[tuple] = None
    seed: Optional[int] = None
    quadratic_agrees: Optional[bool] = None

    @property
    def holds(self) -> bool:
        return self.max_solutions <= self.bound

    def record(self) -> str:
        quad = None if self.quadratic_agrees is None else ("agree" if self.quadratic_agrees else "disagree")
        return format_record(
            kind=f"lemma-{self.lemma}", q=self.q, r=self.r, t=self.t,
            max_solutions=self.max_solutions, bound=self.bound,
            verdict="holds" if self.holds else "violated",
            mode="exhaustive" if self.exhaustive else "sampled",
            systems_scanned=self.systems_scanned, witness=self.witness,
            counterexample=self.counterexample, quadratic=quad, seed=self.seed)


def lemma_L_counts(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Solution counts of a*x + b*y = 1 over x, y in H (|H| = q+1) in GF(q^2).

    Returns ``(brute, quadratic)``, each indexed ``[a-1, b-1]`` over nonzero
    encodings.  ``brute`` scans H x H directly.  ``quadratic`` finds the roots
    x in GF(q^2) of ``a x^2 - (a^(q+1) - b^(q+1) + 1) x + a^q`` and keeps those
    with x in H and y = (1 - a x) / b in H.
    """
    F = field_of_order(q * q)
    H = subgroup(F, q + 1)
    member = H.membership
    nz = np.arange(1, F.q, dtype=np.int64)
    a, b = nz[:, None], nz[None, :]

    brute = np.zeros((len(nz), len(nz)), dtype=np.int64)
    for x in H.encs:
        ax = F.vmul(a, x)
        for y in H.encs:
            brute += F.vadd(ax, F.vmul(b, y)) == 1

    lin = F.vneg(F.vadd(F.vsub(F.vpow(a, q + 1), F.vpow(b, q + 1)), 1))
    const = F.vpow(a, q)
    binv = F.vinv(b)
    quad = np.zeros_like(brute)
    for x in range(F.q):
        value = F.vadd(F.vadd(F.vmul(a, F.vmul(x, x)), F.vmul(lin, x)), const)
        y = F.vmul(F.vsub(1, F.vmul(a, x)), binv)
        quad += (value == 0) & bool(member[x]) & member[y]
    return brute, quad


def verify_lemma_L(q: int) -> LemmaReport:
    """Exhaustively count solutions of a*x + b*y = 1 in the order-(q+1) subgroup."""
    prime_power(q)
    brute, quad = lemma_L_counts(q)
    best = int(brute.max())
    i, j = np.argwhere(brute == best)[0]
    witness = (int(i) + 1, int(j) + 1)
    return LemmaReport(
        "L", q, None, q + 1, best, 2, True, brute.size * (q + 1) ** 2, witness,
        counterexample=witness if best > 2 else None,
        quadratic_agrees=bool(np.array_equal(brute, quad)))


def _max_multiplicity(keys: np.ndarray) -> np.ndarray:
    """Per row, the largest number of equal entries."""
    s = np.sort(keys, axis=1)
    width = s.shape[1]
    mult = np.ones(len(s), dtype=np.int64)
    for j in range(2, width + 1):
        hit = (s[:, j - 1:] == s[:, :width - j + 1]).any(axis=1)
        if not hit.any():
            break
        mult[hit] = j
    return mult


def lemma_AG_norms(q: int, r: int):
    """Field GF(q^r), the norm of every element, and the subfield values of the norm."""
    p, e = prime_power(q)
    F = make_field(p, e * r)
    norms = F.vpow(np.arange(F.q, dtype=np.int64), norm_exponent(F, e))
    values, index = np.unique(norms, return_inverse=True)
    return F, norms, values, index.reshape(-1)


def verify_lemma_AG(q: int, r: int, mode: str = "exhaustive", sample_size: int = DEFAULT_SAMPLES,
                    seed: int = 0, budget: Optional[int] = DEFAULT_BUDGET,
                    chunk: int = 2048) -> LemmaReport:
    """Max number of x in GF(q^r) solving N(x + d_i) = c_i for all i.

    Every x solves exactly one system for a given d-tuple, namely the one with
    c_i = N(x + d_i).  Grouping the x's by that c-tuple therefore counts the
    solutions of all q^r systems sharing the d-tuple at once; c-tuples not
    hit have no solutions.  ``sampled`` mode draws d-tuples from a seeded
    generator instead of enumerating all ordered distinct ones.
    """
    if r < 1:
        raise BadArity(f"r must be positive, got {r}")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    p, e = prime_power(q)
    Q = q ** r
    ctuples = q ** r
    if mode == "exhaustive":
        n_d = math.perm(Q, r)
        if budget is not None and n_d * ctuples > budget:
            raise BudgetExceeded(n_d * ctuples, budget)
    F, norms, values, cidx = lemma_AG_norms(q, r)
    if len(values) != q:
        raise AssertionError(f"norm image has {len(values)} values, expected {q}")
    xs = np.arange(Q, dtype=np.int64)
    place = q ** np.arange(r, dtype=np.int64)

    if mode == "exhaustive":
        d_iter = itertools.permutations(range(Q), r)
        scanned = n_d
    else:
        rng = np.random.default_rng(seed)
        d_iter = (tuple(int(v) for v in rng.choice(Q, size=r, replace=False)) for _ in range(sample_size))
        scanned = sample_size

    best, witness = -1, ()
    while True:
        ds = np.array(list(itertools.islice(d_iter, chunk)), dtype=np.int64)
        if not len(ds):
            break
        # keys[s, x] encodes the c-tuple solved by x for d-tuple s
        shifted = F.vadd(xs[None, None, :], ds[:, :, None])
        keys = np.einsum("six,i->sx", cidx[shifted], place)
        mult = _max_multiplicity(keys)
        top = int(mult.max())
        if top > best:
            row = int(np.argmax(mult == top))
            uniq, counts = np.unique(keys[row], return_counts=True)
            key = int(uniq[np.argmax(counts == top)])
            cs = tuple(int(values[(key // q ** i) % q]) for i in range(r))
            best, witness = top, (tuple(int(v) for v in ds[row]), cs)
    bound = math.factorial(r)
    return LemmaReport(
        "AG", q, r, None, best, bound, mode == "exhaustive", scanned * ctuples,
        witness, counterexample=witness if best > bound else None,
        seed=None if mode == "exhaustive" else seed)


# -- theorem suite -------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    name: str
    q: int
    t: int
    a: int
    b: int

    @property
    def n(self) -> int:
        return (self.q * self.q - 1) // self.t


def theorem_claims(q: int, t: Optional[int] = None, r: Optional[int] = None) -> list[Claim]:
    """The graphs and forbidden K_{a,b} named by each freeness theorem at (q, t, r)."""
    prime_power(q)
    if t is not None and (t < 1 or (q - 1) % t):
        raise HypothesisViolated(f"t={t} does not divide q-1={q - 1}")
    if r is not None and r < 2:
        raise HypothesisViolated(f"r must be at least 2, got {r}")
    claims = []
    if t is not None:
        claims.append(Claim("theorem-1", q, t, 2, t + 1))
    claims.append(Claim("theorem-2", q * q, q + 1, 3, 3))
    if t is not None:
        claims.append(Claim("theorem-4", q * q, t * (q + 1), 3, 2 * t * t + 1))
    if r is not None:
        s = norm_subgroup_order(q, r)
        claims.append(Claim("theorem-5", q ** (r - 1), s, r, math.factorial(r - 1) + 1))
        if t is not None:
            claims.append(Claim("theorem-6", q ** (r - 1), t * s, r,
                                t ** (r - 1) * math.factorial(r - 1) + 1))
    return claims


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    status: str  # pass / fail / budget_exceeded
    result: object = None
    detail: str = ""

    def record(self) -> str:
        if self.result is not None:
            return f"{self.result.record()} status={self.status}"
        return format_record(kind=self.name, status=self.status, detail=self.detail.replace(" ", "_"))


def theorem_suite(q: int, t: Optional[int] = None, r: Optional[int] = None, *,
                  workers: int = 1, budget: Optional[int] = DEFAULT_BUDGET,
                  samples: int = DEFAULT_SAMPLES, seed: int = 0) -> list[SuiteEntry]:
    """Certify every theorem instance at (q, t, r) and run both lemma oracles."""
    entries = []
    for c in theorem_claims(q, t, r):
        need = math.comb(c.n, min(c.a, c.b))
        if budget is not None and need > budget:
            entries.append(SuiteEntry(c.name, "budget_exceeded", None,
                                      f"G({c.q},{c.t}) needs {need} subsets"))
            continue
        cert = certify_kab_free(furedi_graph(c.q, c.t), c.a, c.b,
                                workers=workers, budget=budget, kind=c.name)
        entries.append(SuiteEntry(c.name, "pass" if cert.free else "fail", cert))

    rep = verify_lemma_L(q)
    entries.append(SuiteEntry("lemma-L", "pass" if rep.holds and rep.quadratic_agrees else "fail", rep))
    if r is not None:
        try:
            rep = verify_lemma_AG(q, r, "exhaustive", budget=budget)
        except BudgetExceeded:
            rep = verify_lemma_AG(q, r, "sampled", sample_size=samples, seed=seed)
        entries.append(SuiteEntry("lemma-AG", "pass" if rep.holds else "fail", rep))
    return entries
