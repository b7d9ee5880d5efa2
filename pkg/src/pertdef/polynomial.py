"""Ambient polynomials in K[x^1..x^N], ring columns, and substitution."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rings import (
    DefElem,
    PertElem,
    RingSpecMismatch,
    _TruncatedElem,
    as_rational,
    evaluate_terms,
    format_rational,
)

__all__ = [
    "Polynomial",
    "RingColumn",
    "poly_eval",
    "partial_derivative",
    "dot",
    "gradient",
    "hessian",
    "kernel_basis",
]


class Polynomial:
    """Sparse polynomial over Q in ``num_vars`` variables (0-based)."""

    __slots__ = ("num_vars", "_terms")

    def __init__(self, num_vars: int, terms: Mapping | None = None):
        if not (isinstance(num_vars, int) and num_vars >= 1):
            raise ValueError(f"num_vars must be a positive integer, got {num_vars!r}")
        self.num_vars = num_vars
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != num_vars or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono!r}")
            c = as_rational(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
        self._terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def const(cls, num_vars: int, c) -> Polynomial:
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def var(cls, num_vars: int, i: int) -> Polynomial:
        if not 0 <= i < num_vars:
            raise IndexError(f"variable x{i + 1} out of range")
        e = [0] * num_vars
        e[i] = 1
        return cls(num_vars, {tuple(e): 1})

    @property
    def terms(self) -> dict:
        return {m: self._terms[m] for m in sorted(self._terms, key=lambda m: (-sum(m), tuple(-e for e in m)))}

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.num_vars != self.num_vars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        try:
            return Polynomial.const(self.num_vars, as_rational(other))
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.num_vars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial(self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers are defined")
        result = Polynomial.const(self.num_vars, 1)
        for _ in range(e):
            result = result * self
        return result

    def __truediv__(self, other):
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return Polynomial(self.num_vars, {m: v / c for m, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.num_vars == other.num_vars and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.num_vars, frozenset(self._terms.items())))

    def partial_derivative(self, i: int) -> Polynomial:
        if not 0 <= i < self.num_vars:
            raise IndexError(f"variable index {i} out of range for N={self.num_vars}")
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                out[m[:i] + (m[i] - 1,) + m[i + 1:]] = c * m[i]
        return Polynomial(self.num_vars, out)

    def __call__(self, values):
        return poly_eval(self, values)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(m) if e]
            mono = "*".join(factors)
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
        return f"Polynomial({self.num_vars}: {self})"


class RingColumn:
    """A column ``(r^1, ..., r^N)`` of ring elements sharing one ring.

    Entries may also all be plain Fractions (a constant column with no ring
    attached); use :meth:`constant` to lift such a column into a ring.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        entries = tuple(entries)
        if not entries:
            raise ValueError("a column needs at least one entry")
        ring = [e for e in entries if isinstance(e, _TruncatedElem)]
        if ring:
            spec = ring[0].spec
            if len(ring) != len(entries):
                entries = tuple(e if isinstance(e, _TruncatedElem) else spec.const(e) for e in entries)
            if any(e.spec != spec for e in entries):
                raise RingSpecMismatch("column entries live in different rings")
        else:
            entries = tuple(as_rational(e) for e in entries)
        self.entries = entries

    @classmethod
    def constant(cls, spec, vector: Sequence) -> RingColumn:
        return cls(spec.const(v) for v in vector)

    @classmethod
    def zeros(cls, spec, size: int) -> RingColumn:
        return cls(spec.zero() for _ in range(size))

    @property
    def spec(self):
        e = self.entries[0]
        return e.spec if isinstance(e, _TruncatedElem) else None

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def _check(self, other: RingColumn):
        if len(other) != len(self):
            raise ValueError(f"column lengths differ: {len(self)} vs {len(other)}")

    def __add__(self, other: RingColumn) -> RingColumn:
        self._check(other)
        return RingColumn(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: RingColumn) -> RingColumn:
        self._check(other)
        return RingColumn(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> RingColumn:
        return RingColumn(-a for a in self.entries)

    def __mul__(self, scalar) -> RingColumn:
        """Scale every entry by a ring element or rational."""
        return RingColumn(a * scalar for a in self.entries)

    __rmul__ = __mul__

    def dot(self, other: RingColumn):
        return dot(self, other)

    def coefficient_vector(self, mono) -> tuple[Fraction, ...]:
        return tuple(e.coefficient(mono) for e in self.entries)

    def constant_vector(self) -> tuple[Fraction, ...]:
        return tuple(e.constant_term() if isinstance(e, _TruncatedElem) else e for e in self.entries)

    def map(self, fn) -> RingColumn:
        return RingColumn(fn(e) for e in self.entries)

    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def __eq__(self, other):
        if isinstance(other, RingColumn):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "RingColumn(" + ", ".join(str(e) for e in self.entries) + ")"


def _as_values(p):
    if isinstance(p, RingColumn):
        return p.entries
    return tuple(p)


def _one_for(values):
    e = values[0]
    if isinstance(e, _TruncatedElem):
        return e.spec.one()
    if hasattr(e, "one"):
        return e.one()
    return Fraction(1)


def poly_eval(F: Polynomial, p):
    """Substitute the column ``p`` into ``F``, computing in ``p``'s ring."""
    values = _as_values(p)
    if len(values) != F.num_vars:
        raise ValueError(f"polynomial has {F.num_vars} variables but column has length {len(values)}")
    return evaluate_terms(F._terms, values, _one_for(values))


def partial_derivative(f, i: int):
    """Formal partial derivative of a Polynomial or PertElem."""
    if isinstance(f, (Polynomial, PertElem)):
        return f.partial_derivative(i)
    raise TypeError(f"partial_derivative is not defined for {type(f).__name__}")


def dot(r, s):
    """``sum_i r^i s^i`` computed in the common ring."""
    r, s = _as_values(r), _as_values(s)
    if len(r) != len(s):
        raise ValueError(f"column lengths differ: {len(r)} vs {len(s)}")
    total = None
    for a, b in zip(r, s):
        term = a * b
        total = term if total is None else total + term
    return total


def gradient(F: Polynomial) -> list[Polynomial]:
    return [F.partial_derivative(i) for i in range(F.num_vars)]


def hessian(F: Polynomial) -> list[list[Polynomial]]:
    grad = gradient(F)
    return [[grad[i].partial_derivative(j) for j in range(F.num_vars)] for i in range(F.num_vars)]


def kernel_basis(rows: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Exact basis of ``{v : rows . v = 0}`` by Gauss-Jordan elimination.

    Pivoting rule: scan columns left to right and take the first row (from
    the top) with a nonzero entry.  One basis vector per free column, in
    increasing column order, with a 1 in that column.
    """
    m = [[as_rational(x) for x in row] for row in rows]
    if not m:
        raise ValueError("need at least one row")
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis
