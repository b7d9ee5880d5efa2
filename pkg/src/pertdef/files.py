"""JSON problem files and chart files.

Rationals are always strings (``"p/q"`` or ``"p"``).  Tensors are maps from
``"upper|lower,lower,..."`` keys (1-based indices) to rational strings;
absent keys are zero.  Ring elements are maps from canonical monomial
strings to rational strings, with ``""`` for the constant term.

Problem file keys::

    N, n, k          positive integers
    F                polynomial expression in x1..xN (optional for flow commands)
    x_star           N rationals
    tangent_frame    n vectors of N rationals (optional: exact kernel basis of dF(x*))
    e_frame          vectors in which free tangential parameters are expressed
    params           {"A", "B", "C", "D": tensor, "orders": {"d": tensor},
                      "free": {"1,2": tensor}}
    frames           one list of n vectors per slot (Def solutions)
    seeds            raw lift seeds, seeds[m][beta] = {def monomial: vector}
    family           {"ring_k": K, "derivative": {"i": tensor}, "udot": tensor}
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .parsing import parse_poly
from .polynomial import Polynomial, RingColumn, poly_eval
from .rings import DefRingSpec, PertRingSpec, as_rational, format_rational
from .solver import Hypersurface, SolutionParams, auto_tangent_frame

__all__ = [
    "ProblemFile",
    "FileFormatError",
    "parse_tensor",
    "format_tensor",
    "load_problem",
    "chart_to_dict",
    "chart_from_dict",
    "dumps",
    "input_digest",
]


class FileFormatError(ValueError):
    pass


def parse_tensor(data: Mapping[str, Any]) -> dict[tuple[int, ...], Any]:
    out = {}
    for key, val in (data or {}).items():
        upper, sep, lower = str(key).partition("|")
        if not sep:
            raise FileFormatError(f"tensor key {key!r} must look like 'upper|lower,...'")
        try:
            idx = [int(upper)] + [int(x) for x in lower.split(",") if x.strip()]
        except ValueError:
            raise FileFormatError(f"malformed tensor key {key!r}") from None
        if any(i < 1 for i in idx):
            raise FileFormatError(f"tensor indices are 1-based: {key!r}")
        out[tuple(i - 1 for i in idx)] = _rational(val, f"tensor entry {key!r}")
    return out


def format_tensor(t: Mapping[tuple[int, ...], Any]) -> dict[str, str]:
    return {
        f"{key[0] + 1}|" + ",".join(str(i + 1) for i in key[1:]): format_rational(v)
        for key, v in sorted(t.items())
    }


def _rational(val, what: str):
    if isinstance(val, bool) or not isinstance(val, (str, int)):
        raise FileFormatError(f"{what} must be a rational string, got {val!r}")
    try:
        return as_rational(val)
    except (ValueError, TypeError) as exc:
        raise FileFormatError(f"{what}: {exc}") from None


def _vector(val, N: int, what: str):
    if not isinstance(val, list) or len(val) != N:
        raise FileFormatError(f"{what} must be a list of {N} rationals")
    return tuple(_rational(x, what) for x in val)


def _posint(data, key: str) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise FileFormatError(f"{key!r} must be a positive integer")
    return v


@dataclass
class ProblemFile:
    N: int | None
    n: int
    k: int
    F: Polynomial | None = None
    x_star: tuple | None = None
    tangent_frame: tuple | None = None
    e_frame: tuple | None = None
    params: dict = field(default_factory=dict)
    frames: tuple = ()
    seeds: list | None = None
    family: dict | None = None

    def hypersurface(self) -> Hypersurface:
        if self.F is None or self.x_star is None:
            raise FileFormatError("this command needs 'F' and 'x_star'")
        frame = self.tangent_frame or tuple(auto_tangent_frame(self.F, self.x_star, self.n))
        return Hypersurface(self.F, self.x_star, frame, self.e_frame)

    def pert_params(self) -> SolutionParams:
        p = self.params
        unknown = set(p) - {"A", "B", "orders"}
        if unknown:
            raise FileFormatError(f"unexpected keys for Pert parameters: {sorted(unknown)}")
        orders = {int(d): parse_tensor(t) for d, t in p.get("orders", {}).items()}
        return SolutionParams.pert(
            self.k,
            A=parse_tensor(p["A"]) if "A" in p else None,
            B=parse_tensor(p["B"]) if "B" in p else None,
            orders=orders,
        )

    def def_params(self) -> SolutionParams:
        p = self.params
        unknown = set(p) - {"A", "B", "C", "D", "free"}
        if unknown:
            raise FileFormatError(f"unexpected keys for Def parameters: {sorted(unknown)}")
        free = {}
        for key, t in p.get("free", {}).items():
            try:
                S = tuple(int(s) - 1 for s in str(key).split(","))
            except ValueError:
                raise FileFormatError(f"malformed slot subset {key!r}") from None
            free[S] = parse_tensor(t)
        named = {name: parse_tensor(p[name]) for name in "ABCD" if name in p}
        return SolutionParams.deformational(self.k, free=free, frames=self.frames, **named)

    def seed_steps(self, spec: DefRingSpec):
        if self.seeds is None:
            return None
        if not isinstance(self.seeds, list):
            raise FileFormatError("'seeds' must be a list with one entry per slot")
        steps = []
        for m, step in enumerate(self.seeds):
            cols = []
            for beta, seed in enumerate(step):
                coeffs = {spec.parse_monomial(mono): _vector(vec, self.N, f"seed[{m + 1}][{beta + 1}]")
                          for mono, vec in seed.items()}
                cols.append(RingColumn(spec.element({mono: v[i] for mono, v in coeffs.items()})
                                       for i in range(self.N)))
            steps.append(cols)
        return steps


def load_problem(data: Mapping[str, Any]) -> ProblemFile:
    if not isinstance(data, Mapping):
        raise FileFormatError("problem file must be a JSON object")
    n, k = _posint(data, "n"), _posint(data, "k")
    N = _posint(data, "N") if "N" in data else None
    prob = ProblemFile(N=N, n=n, k=k, params=dict(data.get("params") or {}), seeds=data.get("seeds"),
                       family=data.get("family"))
    if "F" in data:
        if N is None:
            raise FileFormatError("'N' is required together with 'F'")
        if not isinstance(data["F"], str):
            raise FileFormatError("'F' must be an expression string")
        prob.F = parse_poly(data["F"], N)
        if "x_star" not in data:
            raise FileFormatError("'x_star' is required together with 'F'")
        prob.x_star = _vector(data["x_star"], N, "x_star")
        val = poly_eval(prob.F, prob.x_star)
        if val != 0:
            raise FileFormatError(f"x_star is not on the hypersurface: F(x_star) = {format_rational(val)}")
    for key in ("tangent_frame", "e_frame"):
        if key in data:
            vecs = data[key]
            if not isinstance(vecs, list) or N is None:
                raise FileFormatError(f"{key!r} must be a list of vectors (and needs 'N')")
            setattr(prob, key, tuple(_vector(v, N, key) for v in vecs))
    if prob.tangent_frame is not None and len(prob.tangent_frame) != n:
        raise FileFormatError(f"tangent_frame must have n = {n} vectors")
    if "frames" in data:
        fr = data["frames"]
        if not isinstance(fr, list) or len(fr) != k:
            raise FileFormatError(f"'frames' must hold one frame per slot ({k})")
        prob.frames = tuple(tuple(_vector(v, N, "frames") for v in f) for f in fr)
    return prob


# ---------------------------------------------------------------------------
# chart files


def element_ring(spec) -> dict:
    kind = "pert" if isinstance(spec, PertRingSpec) else "def"
    return {"type": kind, "n": spec.n, "k": spec.k}


def ring_from_dict(data: Mapping) -> PertRingSpec | DefRingSpec:
    try:
        kind, n, k = data["type"], data["n"], data["k"]
    except (KeyError, TypeError):
        raise FileFormatError("'ring' must have 'type', 'n' and 'k'") from None
    if kind == "pert":
        return PertRingSpec(n, k)
    if kind == "def":
        return DefRingSpec(n, k)
    raise FileFormatError(f"unknown ring type {kind!r}")


def chart_to_dict(p: RingColumn, command: str, digest: str) -> dict:
    return {
        "ring": element_ring(p.spec),
        "coordinates": [e.to_map() for e in p],
        "provenance": {"command": command, "input_sha256": digest},
    }


def chart_from_dict(data: Mapping) -> RingColumn:
    if not isinstance(data, Mapping) or "ring" not in data or "coordinates" not in data:
        raise FileFormatError("chart file must have 'ring' and 'coordinates'")
    spec = ring_from_dict(data["ring"])
    coords = data["coordinates"]
    if not isinstance(coords, list) or not coords:
        raise FileFormatError("'coordinates' must be a non-empty list")
    try:
        return RingColumn(spec.from_map(c) for c in coords)
    except (ValueError, TypeError) as exc:
        raise FileFormatError(f"bad chart coordinate: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def input_digest(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()
