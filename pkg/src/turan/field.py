"""Finite fields GF(p^k) in a polynomial basis over GF(p).

Elements are residues of polynomials modulo a fixed monic irreducible
``modulus``.  An element with coefficients ``(c_0, ..., c_{k-1})`` (constant
term first) is encoded as the integer ``sum(c_i * p**i)``, so encodings run
over ``range(q)`` and zero encodes as 0.

Two arithmetic routes exist on purpose:

* ``FieldElement`` operators do schoolbook polynomial arithmetic.  Slow but
  obviously correct; everything else is checked against it.
* ``FieldSpec.vmul`` / ``vadd`` / ... work on (arrays of) encodings through
  log/antilog tables built lazily from the generator.  The graph builder and
  the lemma oracles use these.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterator

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    InvalidSubfield,
    NotPrime,
    NotPrimePower,
    OrderDoesNotDivide,
    OutOfRange,
    SizeLimitExceeded,
)

DEFAULT_SIZE_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split a prime power ``q`` into ``(p, k)`` with ``q == p**k``."""
    if q < 2:
        raise NotPrimePower(q)
    p = prime_factors(q)[0]
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NotPrimePower(q)
    return p, k


# -- polynomials over GF(p): coefficient lists, constant term first ----------

def _digits(n: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _undigits(coeffs, p: int) -> int:
    n = 0
    for c in reversed(coeffs):
        n = n * p + c
    return n


def _poly_rem(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of ``num`` modulo the monic polynomial ``den``."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            shift = i - dd
            for j in range(dd + 1):
                num[shift + j] = (num[shift + j] - c * den[j]) % p
    return num[:dd]


def _monic_polys(p: int, d: int) -> Iterator[list[int]]:
    """Monic degree-``d`` polynomials in increasing encoding of the lower coefficients."""
    for n in range(p ** d):
        yield _digits(n, p, d) + [1]


def _irreducibles_up_to(p: int, d: int) -> list[list[int]]:
    found: list[list[int]] = []
    for deg in range(1, d + 1):
        for f in _monic_polys(p, deg):
            if _is_irreducible(f, p, found):
                found.append(f)
    return found


def _is_irreducible(f: list[int], p: int, smaller: list[list[int]]) -> bool:
    deg = len(f) - 1
    for g in smaller:
        gdeg = len(g) - 1
        if 2 * gdeg > deg:
            break
        if not any(_poly_rem(f, g, p)):
            return False
    return True


def find_modulus(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``k`` with the smallest lower-coefficient encoding."""
    smaller = _irreducibles_up_to(p, k // 2)
    for f in _monic_polys(p, k):
        if _is_irreducible(f, p, smaller):
            return tuple(f)
    raise AssertionError(f"no irreducible of degree {k} over GF({p})")  # pragma: no cover


class FieldSpec:
    """A concrete GF(p^k) with fixed modulus and primitive element.

    Build instances with :func:`make_field`.  Instances are immutable; the
    lookup tables are computed on first use and then shared.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)
        self._generator_enc: int | None = None

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __call__(self, enc: int) -> FieldElement:
        return decode(self, enc)

    def __iter__(self) -> Iterator[FieldElement]:
        return (FieldElement(self, i) for i in range(self.q))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self, self._generator_enc)

    # scalar polynomial route, on encodings

    def _add(self, u: int, v: int) -> int:
        if self.p == 2:
            return u ^ v
        p = self.p
        return _undigits([(x + y) % p for x, y in zip(_digits(u, p, self.k), _digits(v, p, self.k))], p)

    def _neg(self, u: int) -> int:
        p = self.p
        return _undigits([(-x) % p for x in _digits(u, p, self.k)], p)

    def _mul(self, u: int, v: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return u * v % p
        a, b = _digits(u, p, k), _digits(v, p, k)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        prod = [c % p for c in prod]
        return _undigits(_poly_rem(prod, list(self.modulus), p), p)

    def _pow(self, u: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul(result, u)
            u = self._mul(u, u)
            e >>= 1
        return result

    # table route, vectorized over encodings

    @functools.cached_property
    def exp_table(self) -> np.ndarray:
        """``exp_table[i]`` is the encoding of ``generator**i`` for ``0 <= i < q-1``."""
        g = self._generator_enc
        out = np.empty(self.q - 1, dtype=np.int64)
        x = 1
        for i in range(self.q - 1):
            out[i] = x
            x = self._mul(x, g)
        return out

    @functools.cached_property
    def log_table(self) -> np.ndarray:
        """Discrete log base the generator; ``log_table[0] == -1``."""
        out = np.full(self.q, -1, dtype=np.int64)
        out[self.exp_table] = np.arange(self.q - 1, dtype=np.int64)
        return out

    @functools.cached_property
    def _digit_table(self) -> np.ndarray:
        enc = np.arange(self.q, dtype=np.int64)
        return np.stack([(enc // self.p ** i) % self.p for i in range(self.k)], axis=1)

    @functools.cached_property
    def _place_values(self) -> np.ndarray:
        return self.p ** np.arange(self.k, dtype=np.int64)

    def vadd(self, u, v):
        u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
        if self.p == 2:
            return u ^ v
        if self.k == 1:
            return (u + v) % self.p
        d = (self._digit_table[u] + self._digit_table[v]) % self.p
        return d @ self._place_values

    def vneg(self, u):
        u = np.asarray(u, dtype=np.int64)
        if self.p == 2:
            return u
        if self.k == 1:
            return (-u) % self.p
        return ((-self._digit_table[u]) % self.p) @ self._place_values

    def vsub(self, u, v):
        return self.vadd(u, self.vneg(v))

    def vmul(self, u, v):
        u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
        log = self.log_table
        out = self.exp_table[(log[u] + log[v]) % (self.q - 1)]
        return np.where((u == 0) | (v == 0), 0, out)

    def vpow(self, u, e: int):
        u = np.asarray(u, dtype=np.int64)
        out = self.exp_table[(self.log_table[u] * (e % (self.q - 1))) % (self.q - 1)]
        if e == 0:
            return np.ones_like(out)
        return np.where(u == 0, 0, out)

    def vinv(self, u):
        u = np.asarray(u, dtype=np.int64)
        if np.any(u == 0):
            raise DivisionByZero("inverse of zero")
        return self.exp_table[(-self.log_table[u]) % (self.q - 1)]


@functools.total_ordering
class FieldElement:
    """An element of a :class:`FieldSpec`, stored by its integer encoding."""

    __slots__ = ("field", "enc")

    def __init__(self, field: FieldSpec, enc: int):
        self.field = field
        self.enc = int(enc)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_digits(self.enc, self.field.p, self.field.k))

    def __repr__(self):
        return f"{self.field!r}({self.enc})"

    def __int__(self):
        return self.enc

    def __index__(self):
        return self.enc

    def __hash__(self):
        return hash(self.enc)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.enc == other.enc
        if isinstance(other, int):
            return self.enc == other
        return NotImplemented

    def __lt__(self, other):
        return self.enc < self._check(other).enc

    def __bool__(self):
        return self.enc != 0

    def _check(self, other) -> FieldElement:
        if isinstance(other, int):
            return decode(self.field, other)
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine field element with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        return FieldElement(self.field, self.field._add(self.enc, self._check(other).enc))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.enc))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        return FieldElement(self.field, self.field._mul(self.enc, self._check(other).enc))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.enc == 0:
            raise DivisionByZero(f"inverse of zero in {self.field!r}")
        return FieldElement(self.field, self.field._pow(self.enc, self.field.q - 2))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, self.field._pow(self.enc, e))


# functional spellings of the operators

def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def power(x: FieldElement, e: int) -> FieldElement:
    return x ** e


def encode(x: FieldElement) -> int:
    return x.enc


def decode(F: FieldSpec, n: int) -> FieldElement:
    if not 0 <= n < F.q:
        raise OutOfRange(f"{n} is not an encoding in {F!r} (size {F.q})")
    return FieldElement(F, n)


def _find_generator(F: FieldSpec) -> int:
    exps = [(F.q - 1) // ell for ell in prime_factors(F.q - 1)]
    for g in range(1, F.q):
        if all(F._pow(g, e) != 1 for e in exps):
            return g
    raise AssertionError("multiplicative group has no generator")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int = 1, max_size: int = DEFAULT_SIZE_LIMIT) -> FieldSpec:
    """Return the canonical GF(p^k).

    The modulus is the monic irreducible whose lower coefficients have the
    smallest encoding; the generator is the primitive element with the
    smallest encoding.  Results are cached, so repeated calls share tables.
    """
    if not is_prime(p):
        raise NotPrime(p)
    if k < 1:
        raise InvalidSubfield(f"extension degree must be positive, got {k}")
    if p ** k > max_size:
        raise SizeLimitExceeded(f"GF({p}^{k}) has {p ** k} elements, limit is {max_size}")
    F = FieldSpec(p, k, find_modulus(p, k))
    F._generator_enc = _find_generator(F)
    return F


def field_of_order(q: int, max_size: int = DEFAULT_SIZE_LIMIT) -> FieldSpec:
    p, k = prime_power(q)
    return make_field(p, k, max_size)


def norm(x: FieldElement, subfield_degree: int) -> FieldElement:
    """Norm of ``x`` down to the subfield of size ``p**subfield_degree``.

    This is ``x ** (1 + s + ... + s**(r-1))`` with ``s = p**subfield_degree``
    and ``r = k // subfield_degree``.
    """
    return x ** norm_exponent(x.field, subfield_degree)


def norm_exponent(F: FieldSpec, subfield_degree: int) -> int:
    if subfield_degree < 1 or F.k % subfield_degree:
        raise InvalidSubfield(f"degree {subfield_degree} does not divide {F.k}")
    s = F.p ** subfield_degree
    return sum(s ** i for i in range(F.k // subfield_degree))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """The multiplicative subgroup of order ``order`` in ``field``.

    ``membership`` is a boolean map over encodings, so ``membership[enc]``
    answers ``x in H`` in constant time, also for whole arrays of encodings.
    """

    order: int
    field: FieldSpec
    elements: tuple[FieldElement, ...]
    membership: np.ndarray = dc_field(repr=False)

    def __contains__(self, x) -> bool:
        enc = x.enc if isinstance(x, FieldElement) else int(x)
        return 0 <= enc < self.field.q and bool(self.membership[enc])

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.order

    @property
    def encs(self) -> np.ndarray:
        return np.array([h.enc for h in self.elements], dtype=np.int64)


@functools.lru_cache(maxsize=None)
def subgroup(F: FieldSpec, t: int) -> Subgroup:
    """The unique order-``t`` subgroup of the cyclic group F*."""
    if t < 1 or (F.q - 1) % t:
        raise OrderDoesNotDivide(t, F.q - 1)
    step = F.generator ** ((F.q - 1) // t)
    elems, x = [], F.one
    for _ in range(t):
        elems.append(x)
        x = x * step
    elems.sort()
    membership = np.zeros(F.q, dtype=bool)
    membership[[h.enc for h in elems]] = True
    membership.setflags(write=False)
    return Subgroup(t, F, tuple(elems), membership)
