"""Exact truncated rings Pert_{n,k}(lambda) and Def_{n,k}(epsilon).

Both rings are quotients of polynomial rings by monomial ideals, so elements
are stored as sparse ``{monomial: Fraction}`` maps and reduced eagerly while
multiplying:

* ``Pert_{n,k}``: monomials are exponent tuples of length ``n``; every
  monomial of total degree above ``k`` is zero.
* ``Def_{n,k}``: monomials are tuples of ``(slot, index)`` pairs sorted by
  slot; a product that repeats a slot is zero.

Indices and slots are 0-based in Python.  The canonical text form is
1-based: ``"l1^2*l2"`` for a Pert monomial and ``"e1_2*e3_1"`` for a Def
monomial (slot first, then index).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

__all__ = [
    "PertRingSpec",
    "PertElem",
    "DefRingSpec",
    "DefElem",
    "as_rational",
    "format_rational",
    "parse_rational",
    "invert_unit",
    "constant_term",
    "RingSpecMismatch",
]


class RingSpecMismatch(ValueError):
    """Operands live in different rings."""


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: the library is exact by construction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(q: Fraction) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# shared machinery


class _TruncatedElem:
    """Immutable sparse element; subclasses define the monomial product."""

    __slots__ = ("spec", "_terms", "_hash")

    def __init__(self, spec, terms: Mapping | None = None):
        self.spec = spec
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = as_rational(c)
                if c:
                    clean[spec._normalize(mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, spec, terms: dict):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj._terms = terms
        obj._hash = None
        return obj

    # -- access -----------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Copy of the monomial -> coefficient map in canonical order."""
        return {m: self._terms[m] for m in sorted(self._terms, key=self.spec.sort_key)}

    def items(self):
        return self.terms.items()

    def coefficient(self, mono) -> Fraction:
        return self._terms.get(self.spec._normalize(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get(self.spec.unit_monomial, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree_part(self, d: int):
        """Homogeneous component of degree ``d`` (factor count for Def)."""
        deg = self.spec.monomial_degree
        return self._raw(self.spec, {m: c for m, c in self._terms.items() if deg(m) == d})

    def max_degree(self) -> int:
        deg = self.spec.monomial_degree
        return max((deg(m) for m in self._terms), default=-1)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, _TruncatedElem):
            if other.spec != self.spec:
                raise RingSpecMismatch(f"{self.spec} vs {other.spec}")
            return other
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.spec.const(c)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.spec, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return self._raw(self.spec, {})
        return self._raw(self.spec, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, _TruncatedElem):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        return self._raw(self.spec, self.spec._multiply(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _TruncatedElem):
            return self * invert_unit(other)
        return self.scale(1 / as_rational(other))

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers are defined")
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, _TruncatedElem):
            return self.spec == other.spec and self._terms == other._terms
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({self.spec.unit_monomial: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, frozenset(self._terms.items())))
        return self._hash

    # -- text ---------------------------------------------------------------

    def to_map(self) -> dict[str, str]:
        """Canonical serialization: monomial string -> rational string."""
        fmt = self.spec.format_monomial
        return {fmt(m): format_rational(c) for m, c in self.items()}

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = self.spec.format_monomial(m)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"{type(self).__name__}({self.spec.n}, {self.spec.k}: {self})"


# ---------------------------------------------------------------------------
# Pert_{n,k}


@dataclass(frozen=True)
class PertRingSpec:
    """``K[lambda^1..lambda^n]`` modulo all monomials of degree ``k + 1``."""

    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError(f"k must be a positive integer, got {self.k!r}")

    @property
    def unit_monomial(self) -> tuple[int, ...]:
        return (0,) * self.n

    def _normalize(self, mono) -> tuple[int, ...]:
        mono = tuple(mono)
        if len(mono) != self.n or any((not isinstance(e, int)) or e < 0 for e in mono):
            raise ValueError(f"bad exponent vector {mono!r} for Pert_{{{self.n},{self.k}}}")
        if sum(mono) > self.k:
            raise ValueError(f"monomial {mono!r} has degree above {self.k}")
        return mono

    @staticmethod
    def monomial_degree(mono) -> int:
        return sum(mono)

    @staticmethod
    def sort_key(mono):
        # graded-lex with lambda^1 > lambda^2 > ...
        return (sum(mono), tuple(-e for e in mono))

    def _multiply(self, a: dict, b: dict) -> dict:
        k = self.k
        out: dict = {}
        bdeg = [(m, c, sum(m)) for m, c in b.items()]
        for ma, ca in a.items():
            da = sum(ma)
            for mb, cb, db in bdeg:
                if da + db > k:
                    continue
                m = tuple(x + y for x, y in zip(ma, mb))
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    # -- constructors -------------------------------------------------------

    def zero(self) -> PertElem:
        return PertElem._raw(self, {})

    def one(self) -> PertElem:
        return self.const(1)

    def const(self, c) -> PertElem:
        c = as_rational(c)
        return PertElem._raw(self, {self.unit_monomial: c} if c else {})

    def gen(self, alpha: int) -> PertElem:
        """The generator ``lambda^alpha`` (0-based)."""
        if not 0 <= alpha < self.n:
            raise IndexError(f"generator index {alpha} out of range for n={self.n}")
        e = [0] * self.n
        e[alpha] = 1
        return PertElem._raw(self, {tuple(e): Fraction(1)})

    def monomial(self, indices: Iterable[int], coeff=1) -> PertElem:
        """``coeff * lambda^{i_1} ... lambda^{i_d}`` for a multiset of indices."""
        e = [0] * self.n
        for i in indices:
            if not 0 <= i < self.n:
                raise IndexError(f"generator index {i} out of range for n={self.n}")
            e[i] += 1
        if sum(e) > self.k:
            return self.zero()
        return PertElem(self, {tuple(e): coeff})

    def element(self, terms: Mapping) -> PertElem:
        return PertElem(self, terms)

    # -- text ---------------------------------------------------------------

    def format_monomial(self, mono) -> str:
        parts = []
        for i, e in enumerate(mono):
            if e == 1:
                parts.append(f"l{i + 1}")
            elif e > 1:
                parts.append(f"l{i + 1}^{e}")
        return "*".join(parts)

    def parse_monomial(self, text: str) -> tuple[int, ...]:
        e = [0] * self.n
        text = text.strip()
        if not text:
            return tuple(e)
        last = 0
        for factor in text.split("*"):
            m = re.fullmatch(r"\s*l(\d+)(?:\^(\d+))?\s*", factor)
            if m is None:
                raise ValueError(f"malformed Pert monomial {text!r}")
            i = int(m.group(1))
            p = int(m.group(2) or 1)
            if not 1 <= i <= self.n or p < 1 or i <= last:
                raise ValueError(f"non-canonical Pert monomial {text!r}")
            last = i
            e[i - 1] = p
        return self._normalize(e)

    def from_map(self, data: Mapping[str, str]) -> PertElem:
        terms = {}
        for key, val in data.items():
            mono = self.parse_monomial(key)
            if mono in terms:
                raise ValueError(f"duplicate monomial {key!r}")
            terms[mono] = as_rational(val)
        return PertElem(self, terms)

    def __str__(self):
        return f"Pert_{{{self.n},{self.k}}}"


class PertElem(_TruncatedElem):
    """Element of ``Pert_{n,k}(lambda)``."""

    __slots__ = ()

    def partial_derivative(self, alpha: int) -> PertElem:
        """Formal derivative with respect to ``lambda^alpha``."""
        if not 0 <= alpha < self.spec.n:
            raise IndexError(f"variable index {alpha} out of range for n={self.spec.n}")
        out = {}
        for m, c in self._terms.items():
            e = m[alpha]
            if e:
                m2 = m[:alpha] + (e - 1,) + m[alpha + 1:]
                out[m2] = c * e
        return PertElem._raw(self.spec, out)

    def truncate(self, k: int) -> PertElem:
        """Image under the projection ``Pert_{n,K} -> Pert_{n,k}`` (k <= K)."""
        if k > self.spec.k:
            raise ValueError("truncation can only lower the order")
        spec = PertRingSpec(self.spec.n, k)
        return PertElem._raw(spec, {m: c for m, c in self._terms.items() if sum(m) <= k})

    def substitute(self, images, one=None):
        """Evaluate with ``lambda^alpha -> images[alpha]`` in the images' ring."""
        if len(images) != self.spec.n:
            raise ValueError(f"need {self.spec.n} images, got {len(images)}")
        if one is None:
            one = images[0].spec.one()
        return evaluate_terms(self._terms, images, one)


# ---------------------------------------------------------------------------
# Def_{n,k}


@lru_cache(maxsize=1 << 16)
def _slot_mask(mono: tuple) -> int:
    m = 0
    for s, _ in mono:
        m |= 1 << s
    return m


@dataclass(frozen=True)
class DefRingSpec:
    """``K[eps_i^alpha]`` modulo ``eps_i^alpha * eps_i^beta`` for every slot ``i``."""

    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError(f"k must be a positive integer, got {self.k!r}")

    unit_monomial = ()

    def _normalize(self, mono) -> tuple[tuple[int, int], ...]:
        pairs = tuple(sorted((int(s), int(a)) for s, a in mono))
        slots = [s for s, _ in pairs]
        if len(set(slots)) != len(slots):
            raise ValueError(f"monomial {mono!r} repeats a slot (it is zero in the ring)")
        for s, a in pairs:
            if not (0 <= s < self.k and 0 <= a < self.n):
                raise ValueError(f"factor (slot={s}, index={a}) out of range for {self}")
        return pairs

    @staticmethod
    def monomial_degree(mono) -> int:
        return len(mono)

    @staticmethod
    def sort_key(mono):
        return (len(mono), mono)

    def _multiply(self, a: dict, b: dict) -> dict:
        out: dict = {}
        bm = [(m, c, _slot_mask(m)) for m, c in b.items()]
        for ma, ca in a.items():
            maska = _slot_mask(ma)
            for mb, cb, maskb in bm:
                if maska & maskb:
                    continue
                m = tuple(sorted(ma + mb)) if ma and mb else (ma or mb)
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    # -- constructors -------------------------------------------------------

    def zero(self) -> DefElem:
        return DefElem._raw(self, {})

    def one(self) -> DefElem:
        return self.const(1)

    def const(self, c) -> DefElem:
        c = as_rational(c)
        return DefElem._raw(self, {(): c} if c else {})

    def gen(self, slot: int, alpha: int) -> DefElem:
        """The generator ``eps_slot^alpha`` (both 0-based)."""
        return DefElem(self, {((slot, alpha),): 1})

    def monomial(self, pairs, coeff=1) -> DefElem:
        pairs = list(pairs)
        slots = [s for s, _ in pairs]
        if len(set(slots)) != len(slots):
            return self.zero()
        return DefElem(self, {tuple(pairs): coeff})

    def element(self, terms: Mapping) -> DefElem:
        return DefElem(self, terms)

    def slot_sum(self, alpha: int) -> DefElem:
        """``eps_1^alpha + ... + eps_k^alpha``."""
        return DefElem._raw(self, {((i, alpha),): Fraction(1) for i in range(self.k)})

    # -- text ---------------------------------------------------------------

    def format_monomial(self, mono) -> str:
        return "*".join(f"e{s + 1}_{a + 1}" for s, a in mono)

    def parse_monomial(self, text: str):
        text = text.strip()
        if not text:
            return ()
        pairs = []
        last = 0
        for factor in text.split("*"):
            m = re.fullmatch(r"\s*e(\d+)_(\d+)\s*", factor)
            if m is None:
                raise ValueError(f"malformed Def monomial {text!r}")
            s, a = int(m.group(1)), int(m.group(2))
            if s <= last:
                raise ValueError(f"non-canonical Def monomial {text!r}")
            last = s
            pairs.append((s - 1, a - 1))
        return self._normalize(pairs)

    def from_map(self, data: Mapping[str, str]) -> DefElem:
        terms = {}
        for key, val in data.items():
            mono = self.parse_monomial(key)
            if mono in terms:
                raise ValueError(f"duplicate monomial {key!r}")
            terms[mono] = as_rational(val)
        return DefElem(self, terms)

    def __str__(self):
        return f"Def_{{{self.n},{self.k}}}"


class DefElem(_TruncatedElem):
    """Element of ``Def_{n,k}(epsilon)``."""

    __slots__ = ()

    def slots_used(self) -> int:
        """Bitmask of slots occurring in any monomial."""
        mask = 0
        for m in self._terms:
            mask |= _slot_mask(m)
        return mask

    def promote(self, spec: DefRingSpec) -> DefElem:
        """Re-read the element in another Def ring along the slot inclusion."""
        if spec.n != self.spec.n:
            raise RingSpecMismatch(f"{self.spec} vs {spec}")
        if self.slots_used() >> spec.k:
            raise ValueError(f"element uses slots beyond {spec}")
        return DefElem._raw(spec, dict(self._terms))

    def split_slot(self, slot: int) -> tuple[DefElem, list[DefElem]]:
        """Write ``self = rest + sum_alpha eps_slot^alpha * parts[alpha]``."""
        rest: dict = {}
        parts: list[dict] = [{} for _ in range(self.spec.n)]
        bit = 1 << slot
        for m, c in self._terms.items():
            if _slot_mask(m) & bit:
                alpha = next(a for s, a in m if s == slot)
                parts[alpha][tuple(p for p in m if p[0] != slot)] = c
            else:
                rest[m] = c
        return DefElem._raw(self.spec, rest), [DefElem._raw(self.spec, p) for p in parts]


# ---------------------------------------------------------------------------
# generic helpers


def evaluate_terms(terms: Mapping[tuple, Fraction], values, one):
    """Evaluate a sparse exponent-vector polynomial at ``values``.

    ``values`` may be ring elements, Fractions, or anything with ``+``,
    ``*`` and rational scaling; ``one`` is the multiplicative identity of the
    target.  Powers are cached per variable.
    """
    powers = [[one] for _ in values]
    result = one * 0
    for mono, c in terms.items():
        acc = None
        for i, e in enumerate(mono):
            if not e:
                continue
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * values[i])
            acc = cache[e] if acc is None else acc * cache[e]
        term = one * c if acc is None else acc * c
        result = result + term
    return result


def constant_term(a) -> Fraction:
    if isinstance(a, _TruncatedElem):
        return a.constant_term()
    return as_rational(a)


def invert_unit(a):
    """Inverse of a unit via the finite Neumann series of its nilpotent part.

    Raises ``ZeroDivisionError`` when the constant term vanishes.
    """
    if not isinstance(a, _TruncatedElem):
        c = as_rational(a)
        if not c:
            raise ZeroDivisionError("zero is not a unit")
        return 1 / c
    c0 = a.constant_term()
    if not c0:
        raise ZeroDivisionError(f"{a} has zero constant term and is not a unit")
    # a = c0 * (1 + x), x nilpotent;  a^-1 = c0^-1 * sum_j (-x)^j
    x = a.scale(1 / c0) - 1
    mx = -x
    total = a.spec.one()
    power = a.spec.one()
    while True:
        power = power * mx
        if power.is_zero():
            break
        total = total + power
    return total.scale(1 / c0)
