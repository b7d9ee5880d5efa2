"""Sparse index-tuple tensors with one upper index followed by lower indices.

A tensor ``A^g_{a b}`` is stored as ``{(g, a, b): Fraction}`` with 0-based
indices; absent keys are zero.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Mapping

from .rings import as_rational

Tensor = Mapping[tuple[int, ...], Fraction]


def clean(t: Mapping | None, n: int | None = None, rank: int | None = None) -> dict:
    """Validate index ranges and drop zeros."""
    out = {}
    for key, v in (t or {}).items():
        key = tuple(int(i) for i in key)
        if rank is not None and len(key) != rank:
            raise ValueError(f"tensor key {key} should have {rank} indices")
        if n is not None and any(not 0 <= i < n for i in key):
            raise ValueError(f"tensor key {key} has an index outside 0..{n - 1}")
        v = as_rational(v)
        if v:
            out[key] = v
    return out


def is_lower_symmetric(t: Tensor) -> bool:
    for key, v in t.items():
        for perm in itertools.permutations(key[1:]):
            if t.get((key[0],) + perm, 0) != v:
                return False
    return True


def asymmetric_entry(t: Tensor):
    """First key whose lower-index permutation disagrees, or None."""
    for key, v in t.items():
        for perm in itertools.permutations(key[1:]):
            other = (key[0],) + perm
            if t.get(other, 0) != v:
                return key, other
    return None


def symmetrize_lower(t: Tensor) -> dict:
    out: dict = {}
    for key, v in t.items():
        lower = key[1:]
        w = Fraction(v, math.factorial(len(lower)))
        for perm in itertools.permutations(lower):
            k2 = (key[0],) + perm
            out[k2] = out.get(k2, 0) + w
    return {k: v for k, v in out.items() if v}


def contract_lower(t: Tensor, upper: int, lower_prefix: tuple[int, ...]) -> dict:
    """Entries ``t^{upper}_{prefix, rest}`` as ``{rest: value}``."""
    p = len(lower_prefix)
    return {key[1 + p:]: v for key, v in t.items() if key[0] == upper and key[1:1 + p] == lower_prefix}
