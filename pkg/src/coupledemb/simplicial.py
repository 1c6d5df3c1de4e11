"""Abstract simplicial complexes on small ground sets.

Complexes are stored by their facets, as bitmasks over a ground set
{1..n} with n <= 64.  Faces, minimal nonfaces, joins, and deleted joins
are derived on demand.  Named constructions (simplex skeleta, powers of
the three-point complex, the six-vertex projective plane, the nine-vertex
complex projective plane) are provided, together with the metric
realization inside the standard simplex of R^n and the chart that
identifies the deleted join of a full simplex with a round sphere.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Iterable, Sequence

import numpy as np

MAX_VERTICES = 64

# generic (rule-free) enumerations of faces/nonfaces are refused past this
_ENUM_VERTEX_CAP = 24
_ENUM_WORK_CAP = 2_000_000


class SimplicialError(ValueError):
    """Invalid complex construction or query."""


class EmptyComplexError(SimplicialError):
    """Operation requires a nonempty complex."""


class ComplexTooLargeError(SimplicialError):
    """Enumeration would be infeasible at this size."""


def _mask(vertices: Iterable[int], n: int) -> int:
    m = 0
    for v in vertices:
        if not 1 <= v <= n:
            raise SimplicialError(f"vertex {v} out of range 1..{n}")
        m |= 1 << (v - 1)
    return m


def _vertices(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _submasks(mask: int):
    """All submasks of `mask`, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract complex on ground set {1..n}, stored by facets.

    Facets are inclusion-maximal bitmasks in a fixed canonical order.
    Instances are immutable; all derived data is recomputed (and may be
    cached externally by callers).
    """

    n: int
    facets: tuple[int, ...]
    name: str | None = None
    # closed-form minimal-nonface rule attached by structured constructors;
    # not part of equality and dropped by serialization
    _mnf_rule: Callable[[], tuple[int, ...]] | None = field(
        default=None, repr=False, compare=False
    )

    # -- queries ---------------------------------------------------------

    def is_face(self, sigma) -> bool:
        m = sigma if isinstance(sigma, int) else _mask(sigma, self.n)
        return any((m & ~f) == 0 for f in self.facets)

    def facet_sets(self) -> list[tuple[int, ...]]:
        return [_vertices(f) for f in self.facets]

    def dim(self) -> int:
        if not self.facets:
            raise EmptyComplexError("complex has no faces")
        return max(bin(f).count("1") for f in self.facets) - 1

    def faces(self) -> list[int]:
        """All faces as bitmasks, including the empty face, sorted."""
        self._check_enumerable(sum(1 << bin(f).count("1") for f in self.facets))
        out: set[int] = set()
        for f in self.facets:
            out.update(_submasks(f))
        return sorted(out)

    def f_vector(self) -> tuple[int, ...]:
        """Counts of faces by dimension, f_0 .. f_dim."""
        counts: dict[int, int] = {}
        for m in self.faces():
            if m:
                k = bin(m).count("1") - 1
                counts[k] = counts.get(k, 0) + 1
        return tuple(counts.get(k, 0) for k in range(self.dim() + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * fk for k, fk in enumerate(self.f_vector()))

    def minimal_nonfaces(self) -> tuple[int, ...]:
        """Inclusion-minimal nonfaces, sorted by (size, mask).

        Structured constructors attach a closed-form rule; otherwise the
        nonfaces are found by level-wise expansion of the face lattice,
        which is only feasible for small complexes.
        """
        if self._mnf_rule is not None:
            return self._mnf_rule()
        if self.n > _ENUM_VERTEX_CAP or len(self.facets) > 5000:
            raise ComplexTooLargeError(
                "generic nonface enumeration is infeasible here; "
                "use a structured constructor"
            )
        out: list[int] = []
        level: set[int] = {0}  # faces of the current size
        size = 0
        max_size = max((bin(f).count("1") for f in self.facets), default=0)
        while level and size <= max_size:
            size += 1
            candidates: set[int] = set()
            for f in level:
                free = ~f & ((1 << self.n) - 1)
                while free:
                    bit = free & -free
                    candidates.add(f | bit)
                    free ^= bit
            nxt: set[int] = set()
            for c in candidates:
                if self.is_face(c):
                    nxt.add(c)
                elif all((c & ~b) in level for b in _bits_of(c)):
                    out.append(c)
            level = nxt
        return tuple(sorted(out, key=lambda m: (bin(m).count("1"), m)))

    def nonfaces(self) -> tuple[int, ...]:
        """All nonfaces (every size), for small ground sets only."""
        self._check_enumerable(1 << self.n)
        face_set = set(self.faces())
        return tuple(
            m for m in range(1, 1 << self.n) if m not in face_set
        )

    def _check_enumerable(self, work: int) -> None:
        if self.n > _ENUM_VERTEX_CAP or work > _ENUM_WORK_CAP:
            raise ComplexTooLargeError(
                f"enumeration over {self.n} vertices refused (work ~ {work})"
            )

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        out = {"n": self.n, "facets": [list(f) for f in self.facet_sets()]}
        if self.name is not None:
            out["name"] = self.name
        return out

    @staticmethod
    def from_json(data: dict) -> "SimplicialComplex":
        if not isinstance(data, dict) or "n" not in data or "facets" not in data:
            raise SimplicialError("complex JSON needs keys 'n' and 'facets'")
        return from_facets(int(data["n"]), data["facets"], name=data.get("name"))

    def __str__(self) -> str:
        label = self.name or "complex"
        return f"{label}(n={self.n}, {len(self.facets)} facets)"


def _bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        bit = mask & -mask
        out.append(bit)
        mask ^= bit
    return out


def _canonical(n: int, masks: Iterable[int]) -> tuple[int, ...]:
    """Drop contained facets, deduplicate, and order deterministically."""
    unique = sorted(set(masks), key=lambda m: (-bin(m).count("1"), m))
    sizes = {bin(m).count("1") for m in unique}
    if len(sizes) == 1:
        kept = unique
    else:
        kept = []
        for m in unique:
            if not any((m & ~k) == 0 for k in kept):
                kept.append(m)
    return tuple(sorted(kept, key=lambda m: _vertices(m)))


def from_facets(n: int, facets: Iterable[Iterable[int]], name: str | None = None) -> SimplicialComplex:
    """Build a complex from a facet list; contained facets are dropped."""
    if n < 1:
        raise SimplicialError("ground set must be nonempty")
    if n > MAX_VERTICES:
        raise ComplexTooLargeError(f"at most {MAX_VERTICES} vertices supported")
    masks = []
    for f in facets:
        m = f if isinstance(f, int) else _mask(f, n)
        if m == 0:
            raise SimplicialError("facets must be nonempty")
        masks.append(m)
    return SimplicialComplex(n, _canonical(n, masks), name)


def full_simplex(m: int) -> SimplicialComplex:
    """The full simplex on m+1 vertices."""
    return skeleton(m, m)


def skeleton(m: int, k: int) -> SimplicialComplex:
    """k-skeleton of the full simplex on m+1 vertices.

    Faces are exactly the subsets of size <= k+1; for k < m, the minimal
    nonfaces are exactly the (k+2)-subsets.
    """
    if not 0 <= k <= m:
        raise SimplicialError(f"need 0 <= k <= m, got k={k}, m={m}")
    n = m + 1
    facets = tuple(
        _mask(c, n) for c in itertools.combinations(range(1, n + 1), k + 1)
    )

    def rule() -> tuple[int, ...]:
        if k == m:
            return ()
        return tuple(sorted(
            _mask(c, n) for c in itertools.combinations(range(1, n + 1), k + 2)
        ))

    return SimplicialComplex(n, facets, f"skeleton({m},{k})", _mnf_rule=rule)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Join of two complexes; L's vertices are shifted up by K.n.

    A face of the join is the union of a face of K and a (shifted) face
    of L, so the minimal nonfaces are those of the factors.
    """
    n = K.n + L.n
    if n > MAX_VERTICES:
        raise ComplexTooLargeError("join exceeds the vertex cap")
    if not K.facets:
        return SimplicialComplex(n, tuple(f << K.n for f in L.facets), None)
    if not L.facets:
        return SimplicialComplex(n, K.facets, None)
    facets = tuple(
        sorted(fk | (fl << K.n) for fk in K.facets for fl in L.facets)
    )

    def rule() -> tuple[int, ...]:
        mnf = list(K.minimal_nonfaces())
        mnf += [m << K.n for m in L.minimal_nonfaces()]
        return tuple(sorted(mnf, key=lambda m: (bin(m).count("1"), m)))

    return SimplicialComplex(n, facets, None, _mnf_rule=rule)


def three_points_power(k: int) -> SimplicialComplex:
    """(k+1)-fold join of the three-point complex.

    3(k+1) vertices in blocks of three; a face picks at most one vertex
    per block, and the minimal nonfaces are the within-block pairs.
    """
    if k < 0:
        raise SimplicialError("k must be >= 0")
    three = from_facets(3, [{1}, {2}, {3}])
    out = three
    for _ in range(k):
        out = join(out, three)
    return SimplicialComplex(
        out.n, out.facets, f"three_points_power({k})", _mnf_rule=out._mnf_rule
    )


def deleted_join(K: SimplicialComplex) -> SimplicialComplex:
    """Deleted join: faces are unions of two vertex-disjoint faces of K.

    The complex lives on 2*K.n vertices (second copy shifted by K.n).
    For the full simplex on m+1 vertices this is the boundary of the
    (m+1)-dimensional crosspolytope, a triangulated m-sphere.
    """
    if 2 * K.n > MAX_VERTICES:
        raise ComplexTooLargeError("deleted join exceeds the vertex cap")
    faces = K.faces()
    candidates = {
        s | (t << K.n) for s in faces for t in faces if s & t == 0
    }
    return from_facets(2 * K.n, _maximal(candidates), name=None)


def _maximal(masks: Iterable[int]) -> list[int]:
    by_size = sorted(masks, key=lambda m: -bin(m).count("1"))
    kept: list[int] = []
    for m in by_size:
        if not any((m & ~k) == 0 for k in kept):
            kept.append(m)
    return kept


_NAMED_IDS = ("rp2_6", "cp2_9")


def named(ident: str) -> SimplicialComplex:
    """Bundled triangulations: 'rp2_6' (projective plane on six vertices)
    or 'cp2_9' (complex projective plane on nine vertices)."""
    if ident not in _NAMED_IDS:
        raise SimplicialError(f"unknown complex id {ident!r}; known: {_NAMED_IDS}")
    data = json.loads(
        resources.files("coupledemb").joinpath(f"data/{ident}.json").read_text()
    )
    return SimplicialComplex.from_json(data)


# -- metric realization ------------------------------------------------


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection of v onto the standard probability simplex.

    Sort-and-threshold algorithm: find the largest j with
    u_j + (1 - sum_{i<=j} u_i)/j > 0 for the decreasing rearrangement u.
    """
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    cond = u - css / idx > 0
    rho = int(np.nonzero(cond)[0][-1])
    theta = css[rho] / (rho + 1)
    return np.maximum(v - theta, 0.0)


def dist_to_subcomplex(x, K: SimplicialComplex) -> float:
    """Euclidean distance from x in R^n to the realized complex |K|.

    Vertex i is realized as the i-th standard basis vector, so |K| is a
    union of coordinate faces of the standard simplex; the distance is
    the minimum over facets of the distance to the facet's simplex,
    computed by sort-and-threshold projection on the facet coordinates.
    """
    if not K.facets:
        raise EmptyComplexError("distance to an empty complex is undefined")
    x = np.asarray(x, dtype=float)
    if x.shape != (K.n,):
        raise SimplicialError(f"point must have length n={K.n}")
    total = float(x @ x)
    best = np.inf
    for fmask in K.facets:
        idx = [v - 1 for v in _vertices(fmask)]
        sub = x[idx]
        proj = project_to_simplex(sub)
        d2 = float((sub - proj) @ (sub - proj)) + (total - float(sub @ sub))
        if d2 < best:
            best = d2
    return float(np.sqrt(max(best, 0.0)))


# -- realized points and the crosspolytope chart -----------------------


@dataclass(frozen=True)
class RealizedPoint:
    """A point of the realized simplex: barycentric weights on a support."""

    support: tuple[int, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.support) != len(self.weights) or not self.support:
            raise SimplicialError("support and weights must match and be nonempty")
        if any(w <= 0 for w in self.weights):
            raise SimplicialError("weights must be strictly positive on the support")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise SimplicialError("weights must sum to 1")

    def realize(self, n: int) -> np.ndarray:
        out = np.zeros(n)
        for v, w in zip(self.support, self.weights):
            out[v - 1] = w
        return out

    def mask(self) -> int:
        return _mask(self.support, max(self.support))


@dataclass(frozen=True)
class DeletedJoinPoint:
    """A point lambda1*x1 + lambda2*x2 of a deleted join.

    The two points have disjoint supports; a factor with weight zero is
    absent (None) and ignored by evaluation.
    """

    lambda1: float
    lambda2: float
    p1: RealizedPoint | None
    p2: RealizedPoint | None

    def __post_init__(self):
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise SimplicialError("join weights must be nonnegative")
        if abs(self.lambda1 + self.lambda2 - 1.0) > 1e-9:
            raise SimplicialError("join weights must sum to 1")
        if (self.lambda1 == 0) != (self.p1 is None):
            raise SimplicialError("p1 must be present iff lambda1 > 0")
        if (self.lambda2 == 0) != (self.p2 is None):
            raise SimplicialError("p2 must be present iff lambda2 > 0")
        if self.p1 is not None and self.p2 is not None:
            if set(self.p1.support) & set(self.p2.support):
                raise SimplicialError("join factors must have disjoint supports")

    def swap(self) -> "DeletedJoinPoint":
        return DeletedJoinPoint(self.lambda2, self.lambda1, self.p2, self.p1)


def sphere_to_join(z) -> DeletedJoinPoint:
    """Decode a nonzero vector of R^{m+1} as a deleted-join point of the
    full simplex on m+1 vertices.

    After l1 normalization, the positive part gives lambda1*x1 and the
    negative part gives lambda2*x2; negating z swaps the join factors.
    """
    z = np.asarray(z, dtype=float)
    norm = float(np.abs(z).sum())
    if norm == 0.0:
        raise SimplicialError("cannot chart the zero vector")
    w = z / norm
    lam1, v1, lam2, v2 = decode_join_weights(w)
    p1 = _realized_from_vector(v1) if lam1 > 0 else None
    p2 = _realized_from_vector(v2) if lam2 > 0 else None
    return DeletedJoinPoint(lam1, lam2, p1, p2)


def decode_join_weights(w: np.ndarray):
    """Split an l1-unit vector into (lam1, x1, lam2, x2) with x_i in the
    standard simplex (or None when the weight vanishes).  Fast path used
    by evaluators; `sphere_to_join` wraps it in dataclasses."""
    pos = np.maximum(w, 0.0)
    neg = np.maximum(-w, 0.0)
    lam1 = float(pos.sum())
    lam2 = float(neg.sum())
    x1 = pos / lam1 if lam1 > 0 else None
    x2 = neg / lam2 if lam2 > 0 else None
    return lam1, x1, lam2, x2


def _realized_from_vector(v: np.ndarray) -> RealizedPoint:
    idx = np.nonzero(v > 0)[0]
    return RealizedPoint(
        tuple(int(i) + 1 for i in idx), tuple(float(v[i]) for i in idx)
    )


def join_to_sphere(pt: DeletedJoinPoint, m: int) -> np.ndarray:
    """Inverse chart: the l2-normalized signed vector lambda1*x1 - lambda2*x2."""
    v = np.zeros(m + 1)
    if pt.p1 is not None:
        v += pt.lambda1 * pt.p1.realize(m + 1)
    if pt.p2 is not None:
        v -= pt.lambda2 * pt.p2.realize(m + 1)
    return v / float(np.linalg.norm(v))


@dataclass(frozen=True)
class Chart:
    """Mutually inverse conversions between S^m and the deleted join of
    the full simplex on m+1 vertices."""

    m: int

    def to_join(self, z) -> DeletedJoinPoint:
        z = np.asarray(z, dtype=float)
        if z.shape != (self.m + 1,):
            raise SimplicialError(f"expected a vector of length {self.m + 1}")
        return sphere_to_join(z)

    def to_sphere(self, pt: DeletedJoinPoint) -> np.ndarray:
        return join_to_sphere(pt, self.m)


def crosspolytope_chart(m: int) -> Chart:
    if m < 0:
        raise SimplicialError("m must be >= 0")
    return Chart(m)
