"""Numerical search for parallelogram witnesses and equivariant zeros.

Multi-start damped Gauss-Newton over products of spheres, boxes,
simplices, and crosspolytope spheres.  Gradients come from finite
differences of the black-box evaluators; domain constraints are enforced
by retraction (normalization on spheres, sort-threshold projection on
simplices, clipping on boxes).  Runs are deterministic for a fixed
(config, seed): all start points are drawn up front and processed in
order.

A returned witness is always re-verified by independent evaluation; a
NoWitness report is never a nonexistence proof.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .maps import EquivariantMap, ProductMap, Projective, Sphere, defect
from .simplicial import DeletedJoinPoint, sphere_to_join


class SearchError(ValueError):
    """Invalid search configuration."""


DEFAULT_MIN_SEP = 0.05
DEFAULT_TOL = 1e-6
DEFAULT_STARTS = 200
DEFAULT_ITERS = 120

_COLLINEAR_COS = 1.0 - 1e-9


@dataclass(frozen=True)
class ParallelogramWitness:
    """A verified quadruple with small defect and separated points."""

    x1: tuple[float, ...]
    y1: tuple[float, ...]
    x2: tuple[float, ...]
    y2: tuple[float, ...]
    defect_norm: float
    sep_x: float
    sep_y: float
    flags: tuple[str, ...]
    start_index: int
    seed: int

    def points(self):
        return (
            np.asarray(self.x1), np.asarray(self.y1),
            np.asarray(self.x2), np.asarray(self.y2),
        )


@dataclass(frozen=True)
class SearchReport:
    """Outcome of a full multistart run without an accepted witness."""

    verdict: str
    best_defect: float
    best_points: dict
    separations: dict
    starts: int
    iters: int
    evaluations: int
    seed: int
    config: dict
    per_start: tuple[float, ...] = field(repr=False, default=())


@dataclass(frozen=True)
class ZeroWitness:
    """A zero of an equivariant map, decoded through the charts."""

    zx: tuple[float, ...]
    zy: tuple[float, ...]
    norm: float
    weights: tuple[float, float, float, float]
    join_x: DeletedJoinPoint
    join_y: DeletedJoinPoint
    start_index: int
    seed: int


# -- core optimizer -------------------------------------------------------


def _levenberg(residual, v0, retract, iters, accept, fd_step=1e-7):
    """Damped Gauss-Newton with retraction and numeric Jacobian.

    `accept(v)` may return a final result to stop early (checked after
    every improvement).  Returns (best_v, best_cost, evaluations, result).
    """
    v = retract(np.array(v0, dtype=float))
    r = residual(v)
    evals = 1
    cost = float(r @ r)
    out = accept(v)
    if out is not None:
        return v, cost, evals, out
    mu = 1e-3
    n = len(v)
    for _ in range(iters):
        J = np.empty((len(r), n))
        for k in range(n):
            h = fd_step * (1.0 + abs(v[k]))
            vk = v.copy()
            vk[k] += h
            J[:, k] = (residual(retract(vk)) - r) / h
        evals += n
        g = J.T @ r
        H = J.T @ J
        improved = False
        for _ in range(8):
            try:
                delta = np.linalg.solve(H + mu * np.eye(n), -g)
            except np.linalg.LinAlgError:
                mu *= 10
                continue
            cand = retract(v + delta)
            rc = residual(cand)
            evals += 1
            cc = float(rc @ rc)
            if cc < cost:
                v, r, cost = cand, rc, cc
                mu = max(mu * 0.3, 1e-14)
                improved = True
                break
            mu *= 4.0
        if not improved:
            break
        out = accept(v)
        if out is not None:
            return v, cost, evals, out
    return v, cost, evals, None


def _unit_rows(rng, count, dim):
    v = rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _domain_start(domain, rng):
    return domain.sample(rng)


def _is_collinear(f: ProductMap, x1, y1, x2, y2) -> bool:
    u = f(x1, y1) - f(x2, y1)
    w = f(x1, y1) - f(x1, y2)
    nu, nw = np.linalg.norm(u), np.linalg.norm(w)
    if nu < 1e-12 or nw < 1e-12:
        return True
    return abs(float(u @ w)) / (nu * nw) > _COLLINEAR_COS


# -- parallelogram witness search ----------------------------------------


def minimize_defect(
    f: ProductMap,
    min_sep: float = DEFAULT_MIN_SEP,
    tol: float = DEFAULT_TOL,
    starts: int = DEFAULT_STARTS,
    iters: int = DEFAULT_ITERS,
    seed: int = 0,
    z2: bool = False,
):
    """Search for a quadruple with defect below tol and separations at
    least min_sep.

    The objective is the defect vector plus hinge penalties on the two
    separation constraints.  In z2 mode the quadruple is constrained to
    (x, -x, y, -y) on sphere factors and the separations are the fixed
    antipodal distances.  Returns a verified ParallelogramWitness on
    success, otherwise a SearchReport.
    """
    if min_sep <= 0 or tol <= 0:
        raise SearchError("min_sep and tol must be positive")
    if starts < 1 or iters < 1:
        raise SearchError("starts and iters must be positive")
    dx, dy = f.domain_x, f.domain_y
    if z2 and not (isinstance(dx, (Sphere, Projective)) and isinstance(dy, (Sphere, Projective))):
        raise SearchError("z2 mode needs sphere factors")
    rng = np.random.default_rng(seed)
    ax, ay = dx.ambient_dim, dy.ambient_dim
    penalty = 4.0 / min_sep

    if z2:
        blocks = [(0, ax, dx), (ax, ax + ay, dy)]
    else:
        blocks = [
            (0, ax, dx),
            (ax, ax + ay, dy),
            (ax + ay, 2 * ax + ay, dx),
            (2 * ax + ay, 2 * (ax + ay), dy),
        ]

    def retract(v):
        for lo, hi, dom in blocks:
            v[lo:hi] = dom.project(v[lo:hi])
        return v

    def quadruple(v):
        if z2:
            x1, y1 = v[:ax], v[ax:]
            return x1, y1, -x1, -y1
        return v[:ax], v[ax:ax + ay], v[ax + ay:2 * ax + ay], v[2 * ax + ay:]

    def residual(v):
        x1, y1, x2, y2 = quadruple(v)
        parts = [defect(f, x1, y1, x2, y2)]
        if not z2:
            parts.append(
                np.array(
                    [
                        penalty * max(0.0, min_sep - dx.distance(x1, x2)),
                        penalty * max(0.0, min_sep - dy.distance(y1, y2)),
                    ]
                )
            )
        return np.concatenate(parts)

    def accept(v):
        x1, y1, x2, y2 = quadruple(v)
        dn = float(np.linalg.norm(defect(f, x1, y1, x2, y2)))
        sx, sy = dx.distance(x1, x2), dy.distance(y1, y2)
        if dn < tol and sx >= min_sep and sy >= min_sep:
            return (x1, y1, x2, y2, dn, sx, sy)
        return None

    # draw every start up front so the run is reproducible
    start_points = [
        np.concatenate([_domain_start(dom, rng) for _, _, dom in blocks])
        for _ in range(starts)
    ]

    best = None
    per_start = []
    evaluations = 0
    for idx, v0 in enumerate(start_points):
        v, cost, evals, hit = _levenberg(residual, v0, retract, iters, accept)
        evaluations += evals
        x1, y1, x2, y2 = quadruple(v)
        dn = float(np.linalg.norm(defect(f, x1, y1, x2, y2)))
        per_start.append(dn)
        if hit is not None:
            x1, y1, x2, y2, dn, sx, sy = hit
            flags = ["z2_constrained"] if z2 else []
            if _is_collinear(f, x1, y1, x2, y2):
                flags.append("collinear")
            witness = ParallelogramWitness(
                tuple(map(float, x1)), tuple(map(float, y1)),
                tuple(map(float, x2)), tuple(map(float, y2)),
                dn, float(sx), float(sy), tuple(flags), idx, seed,
            )
            if not verify_witness(f, witness, tol, min_sep):
                raise AssertionError("search produced a witness that fails re-verification")
            return witness
        key = (dn, idx)
        if best is None or key < best[0]:
            best = (key, (x1, y1, x2, y2))
    (best_dn, _), (x1, y1, x2, y2) = best
    return SearchReport(
        verdict="NoWitnessBelowTolerance",
        best_defect=float(best_dn),
        best_points={
            "x1": list(map(float, x1)), "y1": list(map(float, y1)),
            "x2": list(map(float, x2)), "y2": list(map(float, y2)),
        },
        separations={
            "x": float(dx.distance(x1, x2)), "y": float(dy.distance(y1, y2))
        },
        starts=starts,
        iters=iters,
        evaluations=evaluations,
        seed=seed,
        config={
            "min_sep": min_sep, "tol": tol, "z2": z2,
            "starts": starts, "iters": iters,
        },
        per_start=tuple(per_start),
    )


def verify_witness(f: ProductMap, w: ParallelogramWitness, tol: float,
                   min_sep: float = DEFAULT_MIN_SEP) -> bool:
    """Independent re-evaluation of a witness: defect below tol,
    separations at least min_sep, and exact antipodality in z2 mode."""
    x1, y1, x2, y2 = w.points()
    dn = float(np.linalg.norm(defect(f, x1, y1, x2, y2)))
    if dn >= tol:
        return False
    if f.domain_x.distance(x1, x2) < min_sep or f.domain_y.distance(y1, y2) < min_sep:
        return False
    if "z2_constrained" in w.flags:
        if not (np.array_equal(x2, -x1) and np.array_equal(y2, -y1)):
            return False
    return True


# -- equivariant zero search ----------------------------------------------


def find_equivariant_zero(
    g: EquivariantMap,
    tol: float = DEFAULT_TOL,
    starts: int = DEFAULT_STARTS,
    iters: int = DEFAULT_ITERS,
    seed: int = 0,
):
    """Minimize |g| over the product of crosspolytope spheres.

    On success the zero is decoded into deleted-join points (weights and
    barycentric coordinates).  Failure to reach tol within the budget
    returns a report, not an error.
    """
    if tol <= 0 or starts < 1 or iters < 1:
        raise SearchError("invalid search configuration")
    rng = np.random.default_rng(seed)
    ax, ay = g.m + 1, g.n + 1

    def retract(v):
        v[:ax] /= np.linalg.norm(v[:ax])
        v[ax:] /= np.linalg.norm(v[ax:])
        return v

    def residual(v):
        return g(v[:ax], v[ax:])

    def accept(v):
        val = residual(v)
        norm = float(np.linalg.norm(val))
        if norm < tol:
            return (v.copy(), norm)
        return None

    starts_x = _unit_rows(rng, starts, ax)
    starts_y = _unit_rows(rng, starts, ay)

    best = None
    per_start = []
    evaluations = 0
    for idx in range(starts):
        v0 = np.concatenate([starts_x[idx], starts_y[idx]])
        v, cost, evals, hit = _levenberg(residual, v0, retract, iters, accept)
        evaluations += evals + 1
        norm = float(np.linalg.norm(residual(v)))
        per_start.append(norm)
        if hit is not None:
            vz, norm = hit
            zx, zy = vz[:ax], vz[ax:]
            jx = sphere_to_join(zx)
            jy = sphere_to_join(zy)
            return ZeroWitness(
                zx=tuple(map(float, zx)),
                zy=tuple(map(float, zy)),
                norm=norm,
                weights=(jx.lambda1, jx.lambda2, jy.lambda1, jy.lambda2),
                join_x=jx,
                join_y=jy,
                start_index=idx,
                seed=seed,
            )
        key = (norm, idx)
        if best is None or key < best[0]:
            best = (key, v.copy())
    (best_norm, _), v = best
    return SearchReport(
        verdict="NoZeroBelowTolerance",
        best_defect=float(best_norm),
        best_points={"zx": list(map(float, v[:ax])), "zy": list(map(float, v[ax:]))},
        separations={},
        starts=starts,
        iters=iters,
        evaluations=evaluations,
        seed=seed,
        config={"tol": tol, "starts": starts, "iters": iters},
        per_start=tuple(per_start),
    )


# -- JSON ------------------------------------------------------------------

WITNESS_SCHEMA = {
    "type": "object",
    "required": ["verdict", "defect", "points", "separations", "seed",
                 "budget", "flags"],
    "properties": {
        "verdict": {"enum": ["WitnessFound", "NoWitnessBelowTolerance"]},
        "defect": {"type": "number"},
        "points": {
            "type": "object",
            "properties": {
                "x1": {"type": "array", "items": {"type": "number"}},
                "y1": {"type": "array", "items": {"type": "number"}},
                "x2": {"type": "array", "items": {"type": "number"}},
                "y2": {"type": "array", "items": {"type": "number"}},
            },
        },
        "separations": {
            "type": "object",
            "properties": {"x": {"type": "number"}, "y": {"type": "number"}},
        },
        "seed": {"type": "integer"},
        "budget": {"type": "object"},
        "flags": {"type": "array", "items": {"type": "string"}},
    },
}

ZERO_SCHEMA = {
    "type": "object",
    "required": ["verdict", "norm", "points", "seed", "budget"],
    "properties": {
        "verdict": {"enum": ["ZeroFound", "NoZeroBelowTolerance"]},
        "norm": {"type": "number"},
        "points": {"type": "object"},
        "weights": {"type": "array", "items": {"type": "number"}},
        "seed": {"type": "integer"},
        "budget": {"type": "object"},
    },
}


def witness_to_json(result, config: dict | None = None) -> dict:
    if isinstance(result, ParallelogramWitness):
        return {
            "verdict": "WitnessFound",
            "defect": result.defect_norm,
            "points": {
                "x1": list(result.x1), "y1": list(result.y1),
                "x2": list(result.x2), "y2": list(result.y2),
            },
            "separations": {"x": result.sep_x, "y": result.sep_y},
            "seed": result.seed,
            "budget": {"start_index": result.start_index, **(config or {})},
            "flags": list(result.flags),
        }
    return {
        "verdict": result.verdict,
        "defect": result.best_defect,
        "points": result.best_points,
        "separations": result.separations,
        "seed": result.seed,
        "budget": {
            "starts": result.starts,
            "iters": result.iters,
            "evaluations": result.evaluations,
        },
        "flags": [],
    }


def zero_to_json(result) -> dict:
    if isinstance(result, ZeroWitness):
        return {
            "verdict": "ZeroFound",
            "norm": result.norm,
            "points": {"zx": list(result.zx), "zy": list(result.zy)},
            "weights": list(result.weights),
            "decoded": {
                "x1_support": list(result.join_x.p1.support) if result.join_x.p1 else [],
                "x2_support": list(result.join_x.p2.support) if result.join_x.p2 else [],
                "y1_support": list(result.join_y.p1.support) if result.join_y.p1 else [],
                "y2_support": list(result.join_y.p2.support) if result.join_y.p2 else [],
            },
            "seed": result.seed,
            "budget": {"start_index": result.start_index},
        }
    return {
        "verdict": result.verdict,
        "norm": result.best_defect,
        "points": result.best_points,
        "seed": result.seed,
        "budget": {
            "starts": result.starts,
            "iters": result.iters,
            "evaluations": result.evaluations,
        },
    }


def report_to_json_str(data: dict) -> str:
    return json.dumps(data, indent=1, sort_keys=True)
