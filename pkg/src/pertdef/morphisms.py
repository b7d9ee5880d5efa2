"""Slot symmetrization and the embedding ``Pert_{n,k} -> Def_{n,k}``.

The embedding sends ``lambda^alpha`` to ``eps_1^alpha + ... + eps_k^alpha``.
Its image is exactly the subring of slot-permutation invariants, and
:func:`retract` is the inverse on that subring.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import RingColumn
from .rings import DefElem, DefRingSpec, PertElem, PertRingSpec

__all__ = [
    "Permutation",
    "GradedPart",
    "NotInvariantError",
    "embed_sym",
    "slot_permute",
    "symmetrize",
    "is_invariant",
    "retract",
    "grade_decompose",
    "coefficient_tensor",
    "embed_column",
    "retract_column",
]


class NotInvariantError(ValueError):
    """A Def element outside the invariant subring was passed to retract."""


@dataclass(frozen=True)
class Permutation:
    """Bijection of the slots ``0..k-1``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images!r} is not a permutation")

    @classmethod
    def identity(cls, k: int) -> Permutation:
        return cls(tuple(range(k)))

    @classmethod
    def transposition(cls, k: int, i: int, j: int) -> Permutation:
        im = list(range(k))
        im[i], im[j] = im[j], im[i]
        return cls(tuple(im))

    @classmethod
    def cycle(cls, k: int, *cycle: int) -> Permutation:
        im = list(range(k))
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            im[a] = b
        return cls(tuple(im))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: Permutation) -> Permutation:
        """``self o other``: apply ``other`` first."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class GradedPart:
    degree: int
    element: DefElem


def embed_sym(p: PertElem) -> DefElem:
    """Image of ``p`` under ``lambda^alpha -> sum_i eps_i^alpha``."""
    spec = DefRingSpec(p.spec.n, p.spec.k)
    images = [spec.slot_sum(a) for a in range(spec.n)]
    return p.substitute(images, spec.one())


def slot_permute(sigma: Permutation, d: DefElem) -> DefElem:
    if sigma.size != d.spec.k:
        raise ValueError(f"permutation of size {sigma.size} cannot act on {d.spec}")
    im = sigma.images
    terms = {}
    for mono, c in d._terms.items():
        terms[tuple(sorted((im[s], a) for s, a in mono))] = c
    return DefElem._raw(d.spec, terms)


def symmetrize(d: DefElem) -> DefElem:
    """Average of ``d`` over all ``k!`` slot permutations.

    Cost is factorial in ``k``; intended for small ``k``.
    """
    k = d.spec.k
    acc: dict = {}
    for im in itertools.permutations(range(k)):
        for mono, c in d._terms.items():
            key = tuple(sorted((im[s], a) for s, a in mono))
            acc[key] = acc.get(key, 0) + c
    scale = Fraction(1, math.factorial(k))
    return DefElem(d.spec, {m: c * scale for m, c in acc.items()})


def is_invariant(d: DefElem) -> bool:
    # adjacent transpositions generate S_k
    k = d.spec.k
    return all(slot_permute(Permutation.transposition(k, i, i + 1), d) == d for i in range(k - 1))


def coefficient_tensor(d: DefElem, m: int) -> dict[tuple[int, ...], Fraction]:
    """Coefficients ``T^{1..m}_{a_1..a_m}`` of ``eps_1^{a_1} ... eps_m^{a_m}``.

    Keys are the lower-index tuples (0-based); zero entries are omitted.
    """
    want = tuple(range(m))
    out = {}
    for mono, c in d._terms.items():
        if tuple(s for s, _ in mono) == want:
            out[tuple(a for _, a in mono)] = c
    return out


def retract(d: DefElem) -> PertElem:
    """Inverse of :func:`embed_sym` on the invariant subring.

    Raises :class:`NotInvariantError` for non-invariant input; project with
    :func:`symmetrize` first if that is what you want.
    """
    k = d.spec.k
    for i in range(k - 1):
        moved = slot_permute(Permutation.transposition(k, i, i + 1), d)
        if moved != d:
            raise NotInvariantError(
                f"element is not slot-invariant: swapping slots {i + 1},{i + 2} changes it by {moved - d}"
            )
    spec = PertRingSpec(d.spec.n, d.spec.k)
    terms: dict = {}
    for m in range(d.spec.k + 1):
        scale = Fraction(1, math.factorial(m))
        for idx, c in coefficient_tensor(d, m).items():
            e = [0] * spec.n
            for a in idx:
                e[a] += 1
            e = tuple(e)
            terms[e] = terms.get(e, 0) + c * scale
    return PertElem(spec, terms)


def grade_decompose(d: DefElem) -> list[GradedPart]:
    parts: dict[int, dict] = {}
    for mono, c in d._terms.items():
        parts.setdefault(len(mono), {})[mono] = c
    return [GradedPart(m, DefElem._raw(d.spec, parts[m])) for m in sorted(parts)]


def embed_column(p: RingColumn) -> RingColumn:
    return p.map(embed_sym)


def retract_column(d: RingColumn) -> RingColumn:
    return d.map(retract)
