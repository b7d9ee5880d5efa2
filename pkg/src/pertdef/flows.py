"""Families of ring endomorphisms, their beta derivation and gamma operator.

A family ``g_t`` of endomorphisms of ``Pert_{n,K}`` is kept as its first
jet in ``t``: the identity at ``t = 0`` plus the derivative tensors
``gdot^{i,alpha}_{a_1..a_i}`` for ``1 <= i <= K``.  Derivatives in ``t`` are
taken with exact dual numbers (``t^2 = 0``); the tangent module of a figure
uses a second, independent dual unit ``delta``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import tensors as _t
from .rings import PertElem, PertRingSpec, RingSpecMismatch, _TruncatedElem, as_rational

__all__ = [
    "Dual",
    "EndoFamily",
    "Derivation",
    "Figure",
    "TangentModuleElem",
    "GammaOperator",
    "GammaBetaReport",
    "FlowError",
    "apply_endo",
    "beta_field",
    "apply_derivation",
    "gamma_generic",
    "gamma_closed_form",
    "gamma_action",
    "gamma_beta_check",
]


class FlowError(ValueError):
    pass


class Dual:
    """``a + unit * b`` with ``unit^2 = 0``, over any commutative ring type."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a + other.a, self.b + other.b)
        return Dual(self.a + other, self.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.a * other.a, self.a * other.b + self.b * other.a)
        return Dual(self.a * other, self.b * other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Dual):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Dual({self.a}, {self.b})"


def _monomial_from(spec: PertRingSpec, lower: Sequence[int]) -> tuple[int, ...]:
    e = [0] * spec.n
    for a in lower:
        e[a] += 1
    return tuple(e)


def _orderings(mono: Sequence[int]) -> int:
    """Number of index tuples with exponent vector ``mono``."""
    out = math.factorial(sum(mono))
    for e in mono:
        out //= math.factorial(e)
    return out


def _tensor_image(spec: PertRingSpec, t: Mapping, alpha: int) -> PertElem:
    """``sum t^alpha_{a_1..a_i} lambda^{a_1} ... lambda^{a_i}`` over all tuples."""
    terms: dict = {}
    for key, v in t.items():
        if key[0] != alpha or len(key) - 1 > spec.k:
            continue
        m = _monomial_from(spec, key[1:])
        terms[m] = terms.get(m, 0) + v
    return PertElem(spec, terms)


@dataclass(frozen=True)
class EndoFamily:
    """First jet in ``t`` of a family of endomorphisms of ``Pert_{n,K}``.

    ``derivative[i]`` is ``gdot^{i,alpha}_{a_1..a_i}(0)`` keyed by
    ``(alpha, a_1, ..., a_i)``.  ``value_at_0`` holds generator images at
    ``t = 0`` (``None`` means the identity); beta and gamma require the
    identity.
    """

    spec: PertRingSpec
    derivative: Mapping = field(default_factory=dict)
    value_at_0: tuple | None = None

    def __post_init__(self):
        n, K = self.spec.n, self.spec.k
        der = {}
        for order, t in self.derivative.items():
            order = int(order)
            if not 1 <= order <= K:
                raise FlowError(f"derivative order {order} outside 1..{K}")
            t = _t.clean(t, n=n, rank=order + 1)
            bad = _t.asymmetric_entry(t)
            if bad:
                raise FlowError(f"order-{order} derivative tensor is not symmetric in lower indices: {bad[0]} vs {bad[1]}")
            der[order] = t
        object.__setattr__(self, "derivative", der)
        if self.value_at_0 is not None:
            v0 = tuple(self.value_at_0)
            if len(v0) != n or any(not isinstance(x, PertElem) or x.spec != self.spec for x in v0):
                raise FlowError("value_at_0 must hold one element of the ring per generator")
            object.__setattr__(self, "value_at_0", v0)

    @classmethod
    def top_order(cls, n: int, k: int, udot: Mapping) -> EndoFamily:
        """``mu^a -> mu^a + u^a_{a_1..a_{k+1}}(t) mu^{a_1} ... mu^{a_{k+1}}`` on ``Pert_{n,k+1}``."""
        return cls(PertRingSpec(n, k + 1), {k + 1: udot})

    def identity_images(self) -> tuple[PertElem, ...]:
        return tuple(self.spec.gen(a) for a in range(self.spec.n))

    def is_identity_at_0(self) -> bool:
        return self.value_at_0 is None or self.value_at_0 == self.identity_images()

    def derivative_images(self) -> tuple[PertElem, ...]:
        out = []
        for alpha in range(self.spec.n):
            img = self.spec.zero()
            for t in self.derivative.values():
                img = img + _tensor_image(self.spec, t, alpha)
            out.append(img)
        return tuple(out)

    def jet(self) -> tuple[Dual, ...]:
        """Generator images ``g_t(lambda^alpha)`` as dual numbers in ``t``."""
        v0 = self.value_at_0 or self.identity_images()
        return tuple(Dual(a, b) for a, b in zip(v0, self.derivative_images()))


@dataclass(frozen=True)
class Derivation:
    """A derivation of ``Pert_{n,k}`` fixed by its values on the generators.

    The images must lie in the maximal ideal; otherwise the Leibniz extension
    does not descend to the truncated ring.
    """

    spec: PertRingSpec
    images: tuple[PertElem, ...]

    def __post_init__(self):
        imgs = tuple(self.images)
        if len(imgs) != self.spec.n or any(x.spec != self.spec for x in imgs):
            raise RingSpecMismatch("derivation images must be one element of the ring per generator")
        for a, img in enumerate(imgs):
            # with a constant term the extension would not respect the truncation
            if img.constant_term():
                raise FlowError(f"image of generator {a + 1} has nonzero constant term {img.constant_term()}")
        object.__setattr__(self, "images", imgs)

    def __call__(self, p: PertElem) -> PertElem:
        return apply_derivation(self, p)


def apply_endo(images: Sequence[PertElem], p: PertElem) -> PertElem:
    """Apply the endomorphism ``lambda^alpha -> images[alpha]`` to ``p``."""
    images = tuple(images)
    if len(images) != p.spec.n:
        raise FlowError(f"need {p.spec.n} generator images, got {len(images)}")
    for a, img in enumerate(images):
        if img.spec != p.spec:
            raise RingSpecMismatch(f"image of generator {a + 1} lives in {img.spec}, not {p.spec}")
        if img.constant_term():
            raise FlowError(f"image of generator {a + 1} has nonzero constant term {img.constant_term()}")
    return p.substitute(images, p.spec.one())


def beta_field(fam: EndoFamily) -> Derivation:
    if not fam.is_identity_at_0():
        raise FlowError("the family is not the identity at t = 0, so its t-derivative is not a derivation")
    return Derivation(fam.spec, fam.derivative_images())


def apply_derivation(beta: Derivation, p: PertElem) -> PertElem:
    """``beta(p) = sum_alpha (dp / dlambda^alpha) beta(lambda^alpha)``."""
    if p.spec != beta.spec:
        raise RingSpecMismatch(f"{p.spec} vs {beta.spec}")
    out = p.spec.zero()
    for alpha, img in enumerate(beta.images):
        if img:
            out = out + p.partial_derivative(alpha) * img
    return out


# ---------------------------------------------------------------------------
# figures and tangent modules


@dataclass(frozen=True)
class Figure:
    """A ring morphism ``Pert_{n,K} -> Pert_{n,k}`` given on generators."""

    source: PertRingSpec
    target: PertRingSpec
    images: tuple[PertElem, ...]

    def __post_init__(self):
        imgs = tuple(self.images)
        if len(imgs) != self.source.n:
            raise FlowError("need one image per source generator")
        for a, img in enumerate(imgs):
            if img.spec != self.target:
                raise RingSpecMismatch(f"image of generator {a + 1} is not in {self.target}")
            if img.constant_term():
                raise FlowError(f"image of generator {a + 1} is outside the maximal ideal")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def canonical(cls, n: int, k: int) -> Figure:
        """The projection ``mu^a -> lambda^a`` of ``Pert_{n,k+1}`` onto ``Pert_{n,k}``."""
        target = PertRingSpec(n, k)
        return cls(PertRingSpec(n, k + 1), target, tuple(target.gen(a) for a in range(n)))

    def is_canonical(self) -> bool:
        return (self.source.n == self.target.n and self.source.k == self.target.k + 1
                and self.images == tuple(self.target.gen(a) for a in range(self.target.n)))

    def __call__(self, x: PertElem) -> PertElem:
        return x.substitute(self.images, self.target.one())


@dataclass(frozen=True)
class TangentModuleElem:
    """The morphism ``mu^a -> fig(mu^a) + delta c^a`` with ``delta^2 = 0``."""

    figure: Figure
    coefficients: tuple[PertElem, ...]

    def __post_init__(self):
        cs = tuple(self.coefficients)
        if len(cs) != self.figure.source.n or any(c.spec != self.figure.target for c in cs):
            raise RingSpecMismatch("tangent coefficients must be one target element per generator")
        object.__setattr__(self, "coefficients", cs)

    @classmethod
    def basis(cls, fig: Figure, alpha: int) -> TangentModuleElem:
        t = fig.target
        return cls(fig, tuple(t.one() if b == alpha else t.zero() for b in range(fig.source.n)))

    def morphism_images(self) -> tuple[Dual, ...]:
        return tuple(Dual(img, c) for img, c in zip(self.figure.images, self.coefficients))

    def scale(self, c: PertElem) -> TangentModuleElem:
        return TangentModuleElem(self.figure, tuple(c * x for x in self.coefficients))

    def __add__(self, other: TangentModuleElem) -> TangentModuleElem:
        return TangentModuleElem(self.figure, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))


@dataclass(frozen=True)
class GammaOperator:
    """``gamma(f_alpha) = sum_beta entries[beta][alpha] f_beta``."""

    figure: Figure
    entries: tuple[tuple[PertElem, ...], ...]

    def apply(self, v: TangentModuleElem) -> TangentModuleElem:
        n = self.figure.source.n
        out = []
        for beta in range(n):
            acc = self.figure.target.zero()
            for alpha in range(n):
                acc = acc + self.entries[beta][alpha] * v.coefficients[alpha]
            out.append(acc)
        return TangentModuleElem(self.figure, tuple(out))

    def tensor(self) -> dict[tuple[int, ...], Fraction]:
        """Coefficients ``G^beta_{alpha, a_1..a_k}`` with ``gamma^beta_alpha = G lambda^{a_1..a_k}``.

        Keyed by ``(beta, alpha, a_1, ..., a_k)`` over all index orderings,
        assuming symmetry in the trailing indices.
        """
        out = {}
        spec = self.figure.target
        for beta, row in enumerate(self.entries):
            for alpha, x in enumerate(row):
                for mono, c in x.items():
                    lower = [a for a, e in enumerate(mono) for _ in range(e)]
                    per = c / _orderings(mono)
                    for perm in set(itertools.permutations(lower)):
                        out[(beta, alpha) + perm] = per
        return out


def _check_preserves(fam: EndoFamily, fig: Figure):
    if fam.spec != fig.source:
        raise RingSpecMismatch(f"family acts on {fam.spec} but the figure starts at {fig.source}")
    if not fam.is_identity_at_0():
        raise FlowError("the family is not the identity at t = 0")
    for a, img in enumerate(fam.derivative_images()):
        moved = fig(img)
        if moved:
            raise FlowError(f"the family does not preserve the figure: d/dt fig(g_t(mu^{a + 1})) = {moved}")


def gamma_generic(fam: EndoFamily, v: TangentModuleElem) -> TangentModuleElem:
    """``d/dt (v o g_t)`` at ``t = 0`` for a tangent-module element ``v``.

    Composition is carried out with dual numbers in ``t`` (outer) over dual
    numbers in ``delta`` (inner).  The ``t``-part of the composite must have
    no ``delta``-free part; that is exactly figure preservation.
    """
    fig = v.figure
    _check_preserves(fam, fig)
    phi = v.morphism_images()
    one = Dual(fig.target.one(), fig.target.zero())
    out = []
    for a, jet in enumerate(fam.jet()):
        composite = Dual(jet.a.substitute(phi, one), jet.b.substitute(phi, one))
        if composite.a != phi[a]:
            raise FlowError(f"g_0 does not fix generator {a + 1}")
        dt = composite.b
        if dt.a:
            raise FlowError(f"the family does not preserve the figure at generator {a + 1}")
        out.append(dt.b)
    return TangentModuleElem(fig, tuple(out))


def gamma_closed_form(fam: EndoFamily, fig: Figure | None = None) -> GammaOperator:
    """``gamma(f_a) = (k+1) udot^b_{a, a_1..a_k} lambda^{a_1..a_k} f_b``."""
    n, K = fam.spec.n, fam.spec.k
    k = K - 1
    fig = fig or Figure.canonical(n, k)
    if not fig.is_canonical():
        raise FlowError("the closed form only covers the canonical projection")
    if any(order != K for order, t in fam.derivative.items() if t):
        raise FlowError("the closed form needs a family whose t-derivative is of top order only")
    udot = fam.derivative.get(K, {})
    target = fig.target
    rows = []
    for beta in range(n):
        row = []
        for alpha in range(n):
            terms: dict = {}
            for key, v in udot.items():
                if key[0] == beta and key[1] == alpha:
                    m = _monomial_from(target, key[2:])
                    terms[m] = terms.get(m, 0) + (k + 1) * v
            row.append(PertElem(target, terms))
        rows.append(tuple(row))
    return GammaOperator(fig, tuple(rows))


def gamma_action(fam: EndoFamily, fig: Figure | None = None) -> GammaOperator:
    """Gamma operator on the basis ``f_alpha``, via the generic route.

    For the canonical figure the result is cross-checked against
    :func:`gamma_closed_form`; a disagreement raises ``FlowError``.
    """
    n, K = fam.spec.n, fam.spec.k
    if K < 2:
        raise FlowError("the family must act on Pert_{n,k+1} with k >= 1")
    fig = fig or Figure.canonical(n, K - 1)
    if not fig.is_canonical():
        raise FlowError("gamma is implemented for the canonical projection only")
    cols = [gamma_generic(fam, TangentModuleElem.basis(fig, a)).coefficients for a in range(n)]
    op = GammaOperator(fig, tuple(tuple(cols[a][b] for a in range(n)) for b in range(n)))
    closed = gamma_closed_form(fam, fig)
    if closed.entries != op.entries:
        raise FlowError("generic gamma disagrees with the closed form")
    return op


# ---------------------------------------------------------------------------


@dataclass
class GammaBetaReport:
    k: int
    factor: int
    passed: bool
    beta_tensor: dict
    gamma_tensor: dict
    observed_ratios: list
    mismatches: list

    def to_dict(self) -> dict:
        def fmt(t):
            return {",".join(str(i + 1) for i in key): str(v) for key, v in sorted(t.items())}

        return {
            "passed": self.passed,
            "k": self.k,
            "factor": self.factor,
            "observed_ratios": [str(r) for r in self.observed_ratios],
            "beta_tensor": fmt(self.beta_tensor),
            "gamma_tensor": fmt(self.gamma_tensor),
            "mismatches": [
                {"indices": [i + 1 for i in key], "gamma": str(g), "beta": str(b)} for key, g, b in self.mismatches
            ],
        }

    def __str__(self):
        ratios = ", ".join(str(r) for r in self.observed_ratios) or "none (both sides vanish)"
        status = "passed" if self.passed else f"FAILED at {len(self.mismatches)} entries"
        return f"gamma = (k+1) * beta with k = {self.k}, factor {self.factor}; observed ratios: {ratios}; {status}"


def _beta_tensor(beta: Derivation) -> dict:
    out = {}
    for alpha, img in enumerate(beta.images):
        for mono, c in img.items():
            lower = [a for a, e in enumerate(mono) for _ in range(e)]
            per = c / _orderings(mono)
            for perm in set(itertools.permutations(lower)):
                out[(alpha,) + perm] = per
    return out


def gamma_beta_check(fam: EndoFamily) -> GammaBetaReport:
    """Compare the gamma tensor with ``(k+1)`` times the tensor read off beta."""
    K = fam.spec.k
    k = K - 1
    beta = beta_field(fam)
    if any(img.max_degree() not in (-1, K) or img.degree_part(K) != img for img in beta.images):
        raise FlowError("beta must be homogeneous of top degree k+1 for the gamma/beta relation")
    gamma = gamma_action(fam)
    B = _beta_tensor(beta)
    G = gamma.tensor()
    mismatches = []
    ratios = set()
    for key in sorted(set(B) | set(G)):
        g, b = G.get(key, Fraction(0)), B.get(key, Fraction(0))
        if g != (k + 1) * b:
            mismatches.append((key, g, b))
        if b:
            ratios.add(g / b)
    return GammaBetaReport(k, k + 1, not mismatches, B, G, sorted(ratios), mismatches)
