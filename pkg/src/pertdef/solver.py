"""Perturbative and deformational charts of a hypersurface ``F = 0``.

A chart is a column ``p`` over ``Pert_{n,k}`` or ``Def_{n,k}`` with
``F(p) = 0`` exactly and constant term ``x*``.

Deformational charts are grown one slot at a time,
``p_{m+1} = p_m + eps_m^beta q_beta``, where every ``q_beta`` is tangent to
``p_m``.  Tangent vectors to ``p_m`` are produced by :func:`tangent_lift`
from tangent vectors to ``p_{m-1}``; unrolling that recursion, a tangent
vector to ``p_m`` is fixed by a *seed*: a column over the slots ``< m``
whose every coefficient vector lies in ``T_{x*}X``.

Perturbative charts are solved order by order: the order-``d`` correction is
a free tangential part ``-(1/d!) T^g_{a_1..a_d} lambda^{a_1..a_d} e_g``
plus the unique multiple of ``dF(x*)`` cancelling the order-``d`` residual.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from . import tensors as _t
from .morphisms import embed_column, is_invariant, retract_column
from .polynomial import Polynomial, RingColumn, dot, gradient, hessian, kernel_basis, poly_eval
from .rings import DefElem, DefRingSpec, PertElem, PertRingSpec, _TruncatedElem, as_rational, invert_unit

__all__ = [
    "Hypersurface",
    "SolutionParams",
    "PertChart",
    "DefChart",
    "ChartError",
    "residual",
    "tangent_check",
    "tangent_lift",
    "def_chart_build",
    "def_chart_from_tangents",
    "def_solve",
    "pert_solve",
    "verify_theorem",
    "Check",
    "TheoremReport",
    "auto_tangent_frame",
]


class ChartError(ValueError):
    """A precondition on a chart or tangent vector does not hold."""


Vector = tuple[Fraction, ...]


def _vec(v) -> Vector:
    return tuple(as_rational(x) for x in v)


def _vdot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def auto_tangent_frame(F: Polynomial, base_point, n: int | None = None) -> list[Vector]:
    """First ``n`` vectors of the exact kernel basis of ``dF(x*)``."""
    g = [poly_eval(d, _vec(base_point)) for d in gradient(F)]
    basis = kernel_basis([g])
    if n is None:
        return basis
    if n > len(basis):
        raise ChartError(f"tangent space has dimension {len(basis)} < n = {n}")
    return basis[:n]


@dataclass(frozen=True)
class Hypersurface:
    """``F = 0`` with a smooth rational point and frames of ``T_{x*}X``.

    ``tangent_frame`` holds the first-order directions ``s_alpha``;
    ``e_frame`` is the basis in which free tangential parameters are
    expressed (defaults to ``tangent_frame``).  The gradient is not required
    to have unit length.
    """

    F: Polynomial
    base_point: Vector
    tangent_frame: tuple[Vector, ...]
    e_frame: tuple[Vector, ...] | None = None

    def __post_init__(self):
        N = self.F.num_vars
        x = _vec(self.base_point)
        object.__setattr__(self, "base_point", x)
        if len(x) != N:
            raise ChartError(f"base point has length {len(x)}, expected {N}")
        frame = tuple(_vec(s) for s in self.tangent_frame)
        if not frame:
            raise ChartError("tangent frame must contain at least one vector")
        e = frame if self.e_frame is None else tuple(_vec(v) for v in self.e_frame)
        object.__setattr__(self, "tangent_frame", frame)
        object.__setattr__(self, "e_frame", e)
        if poly_eval(self.F, x) != 0:
            raise ChartError(f"F(x*) = {poly_eval(self.F, x)} != 0")
        g = self.grad0
        if not any(g):
            raise ChartError("dF(x*) = 0: base point is not smooth")
        for name, vs in (("tangent_frame", frame), ("e_frame", e)):
            for i, v in enumerate(vs):
                if len(v) != N:
                    raise ChartError(f"{name}[{i}] has length {len(v)}, expected {N}")
                if _vdot(v, g) != 0:
                    raise ChartError(f"{name}[{i}] is not tangent: <v, dF(x*)> = {_vdot(v, g)}")

    @classmethod
    def with_auto_frame(cls, F: Polynomial, base_point, n: int, e_frame=None) -> Hypersurface:
        return cls(F, _vec(base_point), tuple(auto_tangent_frame(F, base_point, n)), e_frame)

    @property
    def N(self) -> int:
        return self.F.num_vars

    @property
    def n(self) -> int:
        return len(self.tangent_frame)

    @cached_property
    def grad_polys(self) -> list[Polynomial]:
        return gradient(self.F)

    @cached_property
    def hess_polys(self) -> list[list[Polynomial]]:
        return hessian(self.F)

    @cached_property
    def grad0(self) -> Vector:
        return tuple(poly_eval(d, self.base_point) for d in gradient(self.F))

    @cached_property
    def grad0_norm(self) -> Fraction:
        return _vdot(self.grad0, self.grad0)

    def tangential_projection(self, v: Sequence) -> Vector:
        """Projection onto ``T_{x*}X`` along ``dF(x*)``."""
        g = self.grad0
        c = _vdot(v, g) / self.grad0_norm
        return tuple(a - c * b for a, b in zip(v, g))

    def check_tangent(self, v: Sequence, what: str = "vector"):
        if _vdot(v, self.grad0) != 0:
            raise ChartError(f"{what} is not tangent at x*: <v, dF(x*)> = {_vdot(v, self.grad0)}")


# ---------------------------------------------------------------------------
# residuals and tangency


def residual(F, p):
    """``F(p)`` in the ring of ``p``; a list when ``F`` is a list of polynomials."""
    if isinstance(F, Polynomial):
        return poly_eval(F, p)
    return [poly_eval(f, p) for f in F]


def _grad_at(F: Polynomial, p) -> RingColumn:
    return RingColumn(poly_eval(d, p) for d in gradient(F))


def _first_nonzero(x) -> str:
    if isinstance(x, _TruncatedElem):
        mono, c = next(iter(x.items()))
        name = x.spec.format_monomial(mono) or "1"
        return f"coefficient {c} at monomial {name}"
    return str(x)


def tangent_check(F, p, q):
    """``<q, dF(p)>``; ``q`` is tangent to the chart ``p`` iff this vanishes."""
    polys = [F] if isinstance(F, Polynomial) else list(F)
    out = []
    for f in polys:
        res = poly_eval(f, p)
        if res != 0:
            raise ChartError(f"p is not a solution: residual has {_first_nonzero(res)}")
        out.append(dot(q, _grad_at(f, p)))
    return out[0] if isinstance(F, Polynomial) else out


# ---------------------------------------------------------------------------
# tangent lifts


class _Level:
    """Gradient, Hessian and inverse gradient norm of ``F`` at a chart ``r``."""

    __slots__ = ("point", "grad", "hess", "inv_norm")

    def __init__(self, hyp: Hypersurface, r: RingColumn):
        self.point = r
        self.grad = RingColumn(poly_eval(d, r) for d in hyp.grad_polys)
        N = hyp.N
        H = [[None] * N for _ in range(N)]
        for i in range(N):
            for j in range(i, N):
                H[i][j] = H[j][i] = poly_eval(hyp.hess_polys[i][j], r)
        self.hess = H
        norm = dot(self.grad, self.grad)
        if norm.constant_term() == 0:
            raise ChartError("<dF(r), dF(r)> is not a unit: base point is not smooth")
        self.inv_norm = invert_unit(norm)

    def bilinear(self, v: RingColumn, w: RingColumn):
        Hw = [dot(row, w) for row in self.hess]
        return dot(v, Hw)


def _lift_at(level: _Level, t: Sequence[RingColumn], s: RingColumn, u: Sequence[RingColumn], slot: int) -> RingColumn:
    spec = s.spec
    q = s
    for alpha, (t_a, u_a) in enumerate(zip(t, u)):
        coeff = level.bilinear(s, t_a) * level.inv_norm
        correction = u_a - level.grad * coeff
        if not correction.is_zero():
            q = q + correction * spec.gen(slot, alpha)
    return q


def _as_def_column(col, spec: DefRingSpec) -> RingColumn:
    if not isinstance(col, RingColumn):
        col = RingColumn(col)
    if col.spec is None:
        return RingColumn.constant(spec, col.entries)
    if col.spec == spec:
        return col
    return col.map(lambda e: e.promote(spec))


def tangent_lift(hyp: Hypersurface, r, t: Sequence, s, u: Sequence, slot: int | None = None, check: bool = True) -> RingColumn:
    """Tangent vector to ``p = r + eps_slot^alpha t_alpha`` built from ``s, u_alpha``.

    ``q = s - eps^alpha [d2F(r)(s, t_alpha) / <dF(r), dF(r)>] dF(r) + eps^alpha u_alpha``

    ``s`` and ``u_alpha`` must be tangent to ``r``.  If ``slot`` is omitted,
    ``r`` is read as a column over ``Def_{n,m-1}`` (a constant column when
    ``m = 1``) and the result lives in ``Def_{n,m}`` with new slot ``m - 1``.
    """
    rcol = r if isinstance(r, RingColumn) else RingColumn(r)
    if slot is None:
        slot = rcol.spec.k if rcol.spec is not None else 0
        spec = DefRingSpec(hyp.n, slot + 1)
    else:
        spec = rcol.spec if rcol.spec is not None and rcol.spec.k > slot else DefRingSpec(hyp.n, slot + 1)
    if len(t) != hyp.n or len(u) != hyp.n:
        raise ChartError(f"need {hyp.n} columns t_alpha and u_alpha")
    rcol = _as_def_column(rcol, spec)
    tcols = [_as_def_column(c, spec) for c in t]
    scol = _as_def_column(s, spec)
    ucols = [_as_def_column(c, spec) for c in u]
    bit = 1 << slot
    for c in [rcol, scol, *tcols, *ucols]:
        if any(e.slots_used() & bit for e in c):
            raise ChartError(f"inputs already use slot {slot + 1}")
    if check:
        p = rcol
        for alpha, c in enumerate(tcols):
            p = p + c * spec.gen(slot, alpha)
        res = poly_eval(hyp.F, p)
        if res != 0:
            raise ChartError(f"r + eps t is not a solution: residual has {_first_nonzero(res)}")
    level = _Level(hyp, rcol)
    if check:
        for name, c in [("s", scol)] + [(f"u[{a}]", c) for a, c in enumerate(ucols)]:
            pairing = dot(c, level.grad)
            if pairing != 0:
                raise ChartError(f"{name} is not tangent to r: pairing has {_first_nonzero(pairing)}")
    return _lift_at(level, tcols, scol, ucols, slot)


# ---------------------------------------------------------------------------
# deformational charts


@dataclass(frozen=True)
class DefChart:
    """A solution over ``Def_{n,k}`` with its slot-by-slot decomposition.

    ``steps[m][beta]`` is the tangent column multiplying ``eps_m^beta``; it
    only involves slots ``< m``.  ``seeds`` reproduces the chart through
    :func:`def_chart_build`.
    """

    hypersurface: Hypersurface
    p: RingColumn
    steps: tuple[tuple[RingColumn, ...], ...]
    seeds: tuple[tuple[RingColumn, ...], ...]

    @property
    def k(self) -> int:
        return len(self.steps)

    def partial_sum(self, m: int) -> RingColumn:
        """``p_m``: the chart truncated to the first ``m`` slots."""
        spec = self.p.spec
        p = RingColumn.constant(spec, self.hypersurface.base_point)
        for slot in range(m):
            for beta, col in enumerate(self.steps[slot]):
                p = p + col * spec.gen(slot, beta)
        return p


class _DefBuilder:
    def __init__(self, hyp: Hypersurface, k: int):
        self.hyp = hyp
        self.spec = DefRingSpec(hyp.n, k)
        self.p = RingColumn.constant(self.spec, hyp.base_point)
        self.levels = [_Level(hyp, self.p)]
        self.steps: list[tuple[RingColumn, ...]] = []

    def check_seed(self, seed: RingColumn, m: int, what: str):
        for e in seed:
            if e.slots_used() >> m:
                raise ChartError(f"{what} uses slots beyond {m}")
        monos = {mono for e in seed for mono in e._terms}
        for mono in monos:
            self.hyp.check_tangent(seed.coefficient_vector(mono), f"{what} coefficient at {self.spec.format_monomial(mono) or '1'}")

    def lift(self, level: int, seed: RingColumn) -> RingColumn:
        """Tangent vector to ``p_level`` determined by ``seed``."""
        if level == 0 or seed.is_zero():
            return seed
        slot = level - 1
        split = [e.split_slot(slot) for e in seed]
        s_seed = RingColumn(rest for rest, _ in split)
        u_seeds = [RingColumn(parts[a] for _, parts in split) for a in range(self.hyp.n)]
        s = self.lift(level - 1, s_seed)
        u = [self.lift(level - 1, c) for c in u_seeds]
        return _lift_at(self.levels[slot], self.steps[slot], s, u, slot)

    def add_step(self, cols: Sequence[RingColumn]):
        m = len(self.steps)
        p_prev = self.p
        grad_prev = self.levels[m].grad
        for beta, c in enumerate(cols):
            pairing = dot(c, grad_prev)
            if pairing != 0:
                raise ChartError(f"step {m + 1} column {beta + 1} fails the tangent check: {_first_nonzero(pairing)}")
        p = p_prev
        for beta, c in enumerate(cols):
            p = p + c * self.spec.gen(m, beta)
        res = poly_eval(self.hyp.F, p)
        if res != 0:
            raise ChartError(f"residual after slot {m + 1} is nonzero: {_first_nonzero(res)}")
        self.steps.append(tuple(cols))
        self.p = p
        if m + 1 < self.spec.k:
            self.levels.append(_Level(self.hyp, p))

    def chart(self, seeds) -> DefChart:
        return DefChart(self.hyp, self.p, tuple(self.steps), tuple(tuple(s) for s in seeds))


def _normalize_steps(hyp: Hypersurface, steps, spec: DefRingSpec, what: str):
    out = []
    for m, step in enumerate(steps):
        if len(step) != hyp.n:
            raise ChartError(f"{what} for slot {m + 1} must have {hyp.n} columns, got {len(step)}")
        cols = []
        for c in step:
            col = _as_def_column(c, spec)
            if len(col) != hyp.N:
                raise ChartError(f"{what} columns must have length {hyp.N}")
            cols.append(col)
        out.append(cols)
    return out


def def_chart_build(hyp: Hypersurface, steps: Sequence[Sequence]) -> DefChart:
    """Grow a Def chart slot by slot from raw lift seeds.

    ``steps[m][beta]`` is the seed for the column multiplying
    ``eps_m^beta``: a column over slots ``< m`` (a plain vector for
    ``m = 0``) whose coefficient vectors are tangent at ``x*``.  Each seed is
    unrolled through :func:`tangent_lift`.  The residual is checked to vanish
    after every slot.
    """
    if not steps:
        raise ChartError("need at least one step")
    b = _DefBuilder(hyp, len(steps))
    seeds = _normalize_steps(hyp, steps, b.spec, "seed")
    for m, step in enumerate(seeds):
        for beta, seed in enumerate(step):
            b.check_seed(seed, m, f"seed[{m + 1}][{beta + 1}]")
        b.add_step([b.lift(m, seed) for seed in step])
    return b.chart(seeds)


def def_chart_from_tangents(hyp: Hypersurface, targets: Sequence[Sequence]) -> DefChart:
    """Def chart whose coefficients have prescribed tangential parts.

    ``targets[m][beta]`` prescribes, for every monomial ``mu`` in slots
    ``< m``, the projection onto ``T_{x*}X`` (along ``dF(x*)``) of the
    coefficient of ``mu * eps_m^beta`` in the chart.  The normal parts are
    then forced by ``F = 0``.  Seeds are solved for in order of increasing
    monomial size and the chart is grown with the same lifts as
    :func:`def_chart_build`.
    """
    if not targets:
        raise ChartError("need at least one step")
    b = _DefBuilder(hyp, len(targets))
    tcols = _normalize_steps(hyp, targets, b.spec, "target")
    all_seeds = []
    for m, step in enumerate(tcols):
        step_seeds, cols = [], []
        for beta, target in enumerate(step):
            b.check_seed(target, m, f"target[{m + 1}][{beta + 1}]")
            seed: dict = {}
            for size in range(m + 1):
                q = b.lift(m, _column_from(b.spec, hyp.N, seed))
                monos = {mono for e in list(q) + list(target) for mono in e._terms if len(mono) == size}
                for mono in monos:
                    proj = hyp.tangential_projection(q.coefficient_vector(mono))
                    want = target.coefficient_vector(mono)
                    seed[mono] = tuple(w - x for w, x in zip(want, proj))
            seed_col = _column_from(b.spec, hyp.N, seed)
            step_seeds.append(seed_col)
            cols.append(b.lift(m, seed_col))
        b.add_step(cols)
        all_seeds.append(step_seeds)
    return b.chart(all_seeds)


def _column_from(spec: DefRingSpec, N: int, coeffs: Mapping[tuple, Vector]) -> RingColumn:
    entries = []
    for i in range(N):
        entries.append(DefElem(spec, {mono: vec[i] for mono, vec in coeffs.items()}))
    return RingColumn(entries)


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class SolutionParams:
    """Free parameters of a general solution.

    ``flavor == "pert"``: ``tensors[d]`` (``2 <= d <= k``) is a tensor
    ``T^g_{a_1..a_d}`` symmetric in its lower indices; the conventional names
    are ``A = tensors[2]`` and ``B = tensors[3]``.

    ``flavor == "def"``: ``tensors[S]`` for a tuple of slots ``S`` (sorted,
    ``len(S) >= 2``) is a tensor ``T^g_{a_{S_1}..a_{S_m}}`` with lower
    indices in slot order and no symmetry.  For ``k = 3`` the names are
    ``A = (0,1)``, ``B = (0,2)``, ``C = (1,2)``, ``D = (0,1,2)``.  ``frames``
    optionally gives the first-order directions per slot (``s, t, u, ...``).
    """

    flavor: str
    k: int
    tensors: Mapping = field(default_factory=dict)
    frames: tuple = ()

    def __post_init__(self):
        if self.flavor not in ("pert", "def"):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError("k must be a positive integer")
        tens = {}
        for key, t in self.tensors.items():
            if self.flavor == "pert":
                d = int(key)
                if not 2 <= d <= self.k:
                    raise ValueError(f"pert tensor order {d} outside 2..{self.k}")
                t = _t.clean(t, rank=d + 1)
                bad = _t.asymmetric_entry(t)
                if bad:
                    raise ValueError(f"order-{d} tensor is not symmetric in lower indices: {bad[0]} vs {bad[1]}")
                tens[d] = t
            else:
                S = tuple(sorted(int(i) for i in key))
                if len(S) < 2 or len(set(S)) != len(S) or S[-1] >= self.k or S[0] < 0:
                    raise ValueError(f"bad slot subset {key!r}")
                tens[S] = _t.clean(t, rank=len(S) + 1)
        object.__setattr__(self, "tensors", tens)
        frames = tuple(tuple(_vec(v) for v in fr) for fr in self.frames)
        if frames and len(frames) != self.k:
            raise ValueError(f"need one frame per slot ({self.k}), got {len(frames)}")
        object.__setattr__(self, "frames", frames)

    @classmethod
    def pert(cls, k: int, A=None, B=None, orders: Mapping | None = None) -> SolutionParams:
        tens = dict(orders or {})
        if A is not None:
            tens[2] = A
        if B is not None:
            tens[3] = B
        return cls("pert", k, tens)

    @classmethod
    def deformational(cls, k: int, A=None, B=None, C=None, D=None, free: Mapping | None = None, frames=None) -> SolutionParams:
        tens = dict(free or {})
        for name, S, t in (("A", (0, 1), A), ("B", (0, 2), B), ("C", (1, 2), C), ("D", (0, 1, 2), D)):
            if t is not None:
                if S[-1] >= k:
                    raise ValueError(f"{name} needs k >= {S[-1] + 1}")
                tens[S] = t
        return cls("def", k, tens, tuple(frames or ()))

    def to_def(self, hyp: Hypersurface | None = None) -> SolutionParams:
        """Symmetric Def parameters matching the embedding of a Pert solution."""
        if self.flavor == "def":
            return self
        tens = {}
        for size in range(2, self.k + 1):
            t = self.tensors.get(size)
            if t:
                for S in combinations(range(self.k), size):
                    tens[S] = t
        frames = (hyp.tangent_frame,) * self.k if hyp is not None else ()
        return SolutionParams("def", self.k, tens, frames)


def _def_targets(hyp: Hypersurface, params: SolutionParams, spec: DefRingSpec):
    n, N = hyp.n, hyp.N
    frames = params.frames or (hyp.tangent_frame,) * params.k
    for m, fr in enumerate(frames):
        if len(fr) != n:
            raise ChartError(f"frame for slot {m + 1} must have {n} vectors")
        for beta, v in enumerate(fr):
            hyp.check_tangent(v, f"frame[{m + 1}][{beta + 1}]")
    e = hyp.e_frame
    targets = []
    for m in range(params.k):
        step = []
        for beta in range(n):
            coeffs: dict = {(): frames[m][beta]}
            for S, t in params.tensors.items():
                if S[-1] != m:
                    continue
                for key, v in t.items():
                    if key[-1] != beta:
                        continue
                    if key[0] >= len(e):
                        raise ChartError(f"upper index {key[0] + 1} exceeds the e-frame size {len(e)}")
                    mono = tuple(zip(S[:-1], key[1:-1]))
                    old = coeffs.get(mono, (Fraction(0),) * N)
                    coeffs[mono] = tuple(o - v * x for o, x in zip(old, e[key[0]]))
            step.append(_column_from(spec, N, coeffs))
        targets.append(step)
    return targets


def def_solve(hyp: Hypersurface, params: SolutionParams) -> DefChart:
    """General Def solution: tangential parts ``s, t, u, ...`` and ``-T e``.

    For a quadric with ``k = 3`` this is the closed-form ``p(eps_1, eps_2,
    eps_3)`` with tensors ``A, B, C, D``.
    """
    spec = DefRingSpec(hyp.n, params.k)
    return def_chart_from_tangents(hyp, _def_targets(hyp, params.to_def(hyp), spec))


# ---------------------------------------------------------------------------
# perturbative charts


@dataclass(frozen=True)
class PertChart:
    hypersurface: Hypersurface
    p: RingColumn


def pert_solve(hyp: Hypersurface, params: SolutionParams | None = None, k: int | None = None) -> PertChart:
    """Order-by-order solution of ``F = 0`` over ``Pert_{n,k}``."""
    if params is None:
        params = SolutionParams("pert", k or 1)
    if params.flavor != "pert":
        raise ChartError("pert_solve needs pert-flavored parameters")
    k = params.k if k is None else k
    if any(d > k for d in params.tensors):
        raise ChartError(f"parameters given for orders above k = {k}")
    n, N = hyp.n, hyp.N
    spec = PertRingSpec(n, k)
    g, gg = hyp.grad0, hyp.grad0_norm
    e = hyp.e_frame
    entries = [spec.const(x) for x in hyp.base_point]
    for alpha, s in enumerate(hyp.tangent_frame):
        lam = spec.gen(alpha)
        entries = [a + lam * c for a, c in zip(entries, s)]
    for d in range(2, k + 1):
        free: list[dict] = [{} for _ in range(N)]
        scale = Fraction(-1, math.factorial(d))
        for key, v in params.tensors.get(d, {}).items():
            if key[0] >= len(e):
                raise ChartError(f"upper index {key[0] + 1} exceeds the e-frame size {len(e)}")
            mono = [0] * n
            for a in key[1:]:
                mono[a] += 1
            mono = tuple(mono)
            for i, x in enumerate(e[key[0]]):
                if x:
                    free[i][mono] = free[i].get(mono, 0) + scale * v * x
        entries = [a + PertElem(spec, f) for a, f in zip(entries, free)]
        low = [a.truncate(d) for a in entries]
        res = poly_eval(hyp.F, low).degree_part(d)
        normal = PertElem(spec, res._terms) * (-1 / gg)
        entries = [a + normal * c for a, c in zip(entries, g)]
    return PertChart(hyp, RingColumn(entries))


# ---------------------------------------------------------------------------
# end-to-end check of the Pert/Def correspondence


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    informational: bool = False


@dataclass
class TheoremReport:
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "summary": "all checks passed" if self.passed else "some checks failed",
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail, "informational": c.informational}
                for c in self.checks
            ],
        }

    def __str__(self):
        lines = [("PASS " if c.passed else ("NOTE " if c.informational else "FAIL ")) + c.name
                 + (f": {c.detail}" if c.detail else "") for c in self.checks]
        lines.append("all checks passed" if self.passed else "some checks failed")
        return "\n".join(lines)


def _column_diff(a: RingColumn, b: RingColumn) -> str:
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return f"coordinate {i + 1}: {_first_nonzero(x - y)}"
    return ""


def verify_theorem(hyp: Hypersurface, params: SolutionParams | None = None, k: int | None = None) -> TheoremReport:
    """Check the Pert/Def correspondence on one perturbative chart.

    (a) the embedded Pert chart solves ``F = 0`` over Def and is invariant;
    (b) the Def chart with symmetric parameters is invariant, equals the
    embedding and retracts to the Pert chart; (c) retract o embed is the
    identity.  Whether raw symmetric lift seeds give an invariant chart is
    reported as a note.
    """
    pchart = pert_solve(hyp, params, k)
    k = pchart.p.spec.k
    if params is None:
        params = SolutionParams("pert", k)
    checks = []

    e = embed_column(pchart.p)
    res = poly_eval(hyp.F, e)
    checks.append(Check("embedded chart solves F = 0", res == 0, "" if res == 0 else _first_nonzero(res)))
    bad = [i for i, x in enumerate(e) if not is_invariant(x)]
    checks.append(Check("embedded chart is slot-invariant", not bad,
                        f"coordinates {[i + 1 for i in bad]}" if bad else ""))

    dparams = SolutionParams(params.flavor, k, params.tensors).to_def(hyp)
    dchart = def_solve(hyp, dparams)
    bad = [i for i, x in enumerate(dchart.p) if not is_invariant(x)]
    checks.append(Check("symmetric Def chart is slot-invariant", not bad,
                        f"coordinates {[i + 1 for i in bad]}" if bad else ""))
    if not bad:
        back = retract_column(dchart.p)
        checks.append(Check("retract(symmetric Def chart) = Pert chart", back == pchart.p, _column_diff(back, pchart.p)))
    checks.append(Check("symmetric Def chart = embedded Pert chart", dchart.p == e, _column_diff(dchart.p, e)))

    back = retract_column(e)
    checks.append(Check("retract(embed(p)) = p", back == pchart.p, _column_diff(back, pchart.p)))

    raw = def_chart_build(hyp, _def_targets(hyp, dparams, dchart.p.spec))
    raw_bad = [i for i, x in enumerate(raw.p) if not is_invariant(x)]
    checks.append(Check("raw symmetric lift seeds give an invariant chart", not raw_bad,
                        "" if not raw_bad else f"not invariant in coordinates {[i + 1 for i in raw_bad]}",
                        informational=True))
    return TheoremReport(checks)
