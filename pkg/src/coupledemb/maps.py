"""Evaluatable maps on products and the obstruction constructions.

A ProductMap is a deterministic evaluator f(x, y) -> R^d over a pair of
supported domains (spheres, projective planes as antipodal quotients,
boxes, standard simplices).  The four-term defect

    f(x1,y1) + f(x2,y2) - f(x1,y2) - f(x2,y1)

vanishing at separated points is the operational parallelogram
certificate.  From such maps the module builds the equivariant
obstruction maps used by the zero search: the antipodal (sign) defect on
sphere pairs, the coloring obstruction on deleted joins, the weighted
defect on deleted joins of full simplices, and their combination for a
pair of complexes.  Polynomial kinds carry an exact evaluation path for
integer or Fraction inputs alongside the float path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .bilinear import BilinearMap, NonsingularityCertificate, certify
from .hopf import ActionSignature
from .kneser import Coloring, is_proper, kneser_graph
from .simplicial import (
    SimplicialComplex,
    _canonical,
    _maximal,
    decode_join_weights,
    dist_to_subcomplex,
    project_to_simplex,
    sphere_to_join,
)


class MapsError(ValueError):
    """Invalid map construction or evaluation."""


# -- domains -------------------------------------------------------------


@dataclass(frozen=True)
class Sphere:
    """Unit vectors in R^{m+1}; geodesic distance."""

    m: int

    @property
    def ambient_dim(self) -> int:
        return self.m + 1

    def sample(self, rng) -> np.ndarray:
        v = rng.standard_normal(self.m + 1)
        return v / np.linalg.norm(v)

    def project(self, v: np.ndarray) -> np.ndarray:
        return v / np.linalg.norm(v)

    def distance(self, p, q) -> float:
        return float(np.arccos(np.clip(np.dot(p, q), -1.0, 1.0)))

    def spec(self) -> dict:
        return {"kind": "sphere", "m": self.m}


@dataclass(frozen=True)
class Projective:
    """Unit vectors in R^{m+1} modulo sign; quotient geodesic distance."""

    m: int

    @property
    def ambient_dim(self) -> int:
        return self.m + 1

    def sample(self, rng) -> np.ndarray:
        v = rng.standard_normal(self.m + 1)
        return v / np.linalg.norm(v)

    def project(self, v: np.ndarray) -> np.ndarray:
        return v / np.linalg.norm(v)

    def distance(self, p, q) -> float:
        return float(np.arccos(np.clip(abs(np.dot(p, q)), -1.0, 1.0)))

    def spec(self) -> dict:
        return {"kind": "projective", "m": self.m}


@dataclass(frozen=True)
class Box:
    """Axis-aligned box in R^p; Euclidean distance."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or any(
            l >= h for l, h in zip(self.lo, self.hi)
        ):
            raise MapsError("box bounds must satisfy lo < hi componentwise")

    @property
    def ambient_dim(self) -> int:
        return len(self.lo)

    def sample(self, rng) -> np.ndarray:
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        return lo + (hi - lo) * rng.random(len(self.lo))

    def project(self, v: np.ndarray) -> np.ndarray:
        return np.clip(v, self.lo, self.hi)

    def distance(self, p, q) -> float:
        return float(np.linalg.norm(np.asarray(p) - np.asarray(q)))

    def contains(self, v, margin: float = 0.0) -> bool:
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        return bool(np.all(v >= lo + margin) and np.all(v <= hi - margin))

    def spec(self) -> dict:
        return {"kind": "box", "lo": list(self.lo), "hi": list(self.hi)}


def box(lo, hi) -> Box:
    return Box(tuple(float(v) for v in lo), tuple(float(v) for v in hi))


def unit_box(p: int) -> Box:
    return Box((0.0,) * p, (1.0,) * p)


@dataclass(frozen=True)
class Simplex:
    """The standard simplex on n vertices inside R^n; Euclidean distance."""

    n: int

    @property
    def ambient_dim(self) -> int:
        return self.n

    def sample(self, rng) -> np.ndarray:
        return rng.dirichlet(np.ones(self.n))

    def project(self, v: np.ndarray) -> np.ndarray:
        return project_to_simplex(v)

    def distance(self, p, q) -> float:
        return float(np.linalg.norm(np.asarray(p) - np.asarray(q)))

    def spec(self) -> dict:
        return {"kind": "simplex", "n": self.n}


def domain_from_spec(spec: dict):
    kind = spec.get("kind")
    if kind == "sphere":
        return Sphere(int(spec["m"]))
    if kind == "projective":
        return Projective(int(spec["m"]))
    if kind == "box":
        return box(spec["lo"], spec["hi"])
    if kind == "simplex":
        return Simplex(int(spec["n"]))
    raise MapsError(f"unknown domain spec {spec!r}")


# -- product maps --------------------------------------------------------


class ProductMap:
    """A map f : X x Y -> R^d given by a pure evaluator.

    `kind` tags the construction (composed-bilinear, additive,
    trig-random, tabulated, or a derived kind); `meta` carries the
    ingredients needed for structural certificates.
    """

    def __init__(self, domain_x, domain_y, d, kind, evaluator,
                 exact_evaluator=None, meta=None):
        self.domain_x = domain_x
        self.domain_y = domain_y
        self.d = int(d)
        self.kind = kind
        self._eval = evaluator
        self._eval_exact = exact_evaluator
        self.meta = dict(meta or {})

    def __call__(self, x, y) -> np.ndarray:
        return np.asarray(
            self._eval(np.asarray(x, dtype=float), np.asarray(y, dtype=float)),
            dtype=float,
        )

    @property
    def has_exact(self) -> bool:
        return self._eval_exact is not None

    def exact(self, x, y) -> list:
        if self._eval_exact is None:
            raise MapsError(f"{self.kind} map has no exact evaluation path")
        return self._eval_exact(list(x), list(y))

    def __repr__(self) -> str:
        return f"<ProductMap {self.kind}: d={self.d}>"


def defect(f: ProductMap, x1, y1, x2, y2) -> np.ndarray:
    """Four-term defect of f at a quadruple; zero at separated points is
    the operational parallelogram certificate."""
    return f(x1, y1) + f(x2, y2) - f(x1, y2) - f(x2, y1)


def defect_exact(f: ProductMap, x1, y1, x2, y2) -> list:
    a = f.exact(x1, y1)
    b = f.exact(x2, y2)
    c = f.exact(x1, y2)
    e = f.exact(x2, y1)
    return [a[k] + b[k] - c[k] - e[k] for k in range(f.d)]


def antipodal_defect(f: ProductMap) -> ProductMap:
    """The sign-constrained defect g(x,y) = f(x,y)+f(-x,-y)-f(x,-y)-f(-x,y)
    on a product of spheres.

    g is equivariant for negation in each factor; if f is biskew
    (odd in each argument) then g = 4f.
    """
    if not isinstance(f.domain_x, (Sphere, Projective)) or not isinstance(
        f.domain_y, (Sphere, Projective)
    ):
        raise MapsError("the sign defect needs sphere factors")

    def ev(x, y):
        return f._eval(x, y) + f._eval(-x, -y) - f._eval(x, -y) - f._eval(-x, y)

    exact = None
    if f.has_exact:
        def exact(x, y):  # noqa: E306
            nx = [-v for v in x]
            ny = [-v for v in y]
            a, b = f._eval_exact(x, y), f._eval_exact(nx, ny)
            c, e = f._eval_exact(x, ny), f._eval_exact(nx, y)
            return [a[k] + b[k] - c[k] - e[k] for k in range(f.d)]

    return ProductMap(
        f.domain_x, f.domain_y, f.d, "sign-defect", ev, exact, {"parent": f}
    )


# -- embeddings and composition ------------------------------------------


class EmbeddingSpec:
    """An injective evaluator for a catalog space, with verification
    metadata (filled in by `verify`) rather than assumed injectivity."""

    def __init__(self, space_id, domain, target_dim, evaluator,
                 exact_evaluator=None):
        self.space_id = space_id
        self.domain = domain
        self.target_dim = target_dim
        self._eval = evaluator
        self._eval_exact = exact_evaluator
        self.metadata: dict = {}

    def __call__(self, x) -> np.ndarray:
        return np.asarray(self._eval(np.asarray(x, dtype=float)), dtype=float)

    def exact(self, x) -> list:
        if self._eval_exact is None:
            raise MapsError(f"{self.space_id} has no exact path")
        return self._eval_exact(list(x))

    def _batch(self, P: np.ndarray) -> np.ndarray:
        # catalog evaluators are written shape-agnostically (last axis =
        # coordinates), so batching is a single call
        return np.asarray(self._eval(P), dtype=float)

    def verify(self, pairs: int = 100_000, min_class_dist: float = 0.05,
               seed: int = 0, jacobian_points: int = 1000) -> dict:
        """Statistical injectivity check: the smallest image distance over
        sampled pairs at domain distance >= min_class_dist, plus the
        smallest tangential Jacobian singular value over sample points."""
        rng = np.random.default_rng(seed)
        amb = self.domain.ambient_dim
        worst = np.inf
        tested = 0
        while tested < pairs:
            batch = min(pairs - tested, 200_000)
            P = rng.standard_normal((batch, amb))
            Q = rng.standard_normal((batch, amb))
            P /= np.linalg.norm(P, axis=1, keepdims=True)
            Q /= np.linalg.norm(Q, axis=1, keepdims=True)
            cos = np.abs(np.einsum("ni,ni->n", P, Q)) if isinstance(
                self.domain, Projective
            ) else np.einsum("ni,ni->n", P, Q)
            dist = np.arccos(np.clip(cos, -1.0, 1.0))
            keep = dist >= min_class_dist
            if not np.any(keep):
                continue
            gaps = np.linalg.norm(self._batch(P[keep]) - self._batch(Q[keep]), axis=1)
            worst = min(worst, float(gaps.min()))
            tested += int(keep.sum())
        h = 1e-6
        P = rng.standard_normal((jacobian_points, amb))
        P /= np.linalg.norm(P, axis=1, keepdims=True)
        cols = []
        for i in range(amb):
            e = np.zeros(amb)
            e[i] = h
            plus = (P + e) / np.linalg.norm(P + e, axis=1, keepdims=True)
            minus = (P - e) / np.linalg.norm(P - e, axis=1, keepdims=True)
            cols.append((self._batch(plus) - self._batch(minus)) / (2 * h))
        J = np.stack(cols, axis=2)  # (points, target, ambient)
        svals = np.linalg.svd(J, compute_uv=False)
        dim = getattr(self.domain, "m", amb)
        sig_min = float(svals[:, dim - 1].min())
        self.metadata.update(
            {
                "pairs_tested": tested,
                "min_class_dist": min_class_dist,
                "min_separation": worst,
                "immersion_sigma_min": sig_min,
                "seed": seed,
            }
        )
        return self.metadata

    def __repr__(self) -> str:
        return f"<EmbeddingSpec {self.space_id} -> R^{self.target_dim}>"


def embedding(ident: str) -> EmbeddingSpec:
    """Catalog embeddings: 'sphere(m)' is the inclusion S^m in R^{m+1};
    'rp2_r4' sends a unit vector (x,y,z) to (xy, xz, yz, x^2-y^2), which
    is constant on antipodes and injective on antipodal classes."""
    if ident.startswith("sphere(") and ident.endswith(")"):
        m = int(ident[7:-1])
        return EmbeddingSpec(
            ident, Sphere(m), m + 1, lambda x: x, lambda x: list(x)
        )
    if ident == "rp2_r4":
        def ev_exact(v):
            x, y, z = v[0], v[1], v[2]
            return [x * y, x * z, y * z, x * x - y * y]

        def ev(v):
            x, y, z = v[..., 0], v[..., 1], v[..., 2]
            return np.stack([x * y, x * z, y * z, x * x - y * y], axis=-1)

        return EmbeddingSpec("rp2_r4", Projective(2), 4, ev, ev_exact)
    raise MapsError(f"unknown embedding id {ident!r}")


def identity_embedding(p: int, domain=None) -> EmbeddingSpec:
    """Identity chart of a box domain, for feeding raw bilinear maps into
    the ProductMap machinery."""
    dom = domain or Box((-1.0,) * p, (1.0,) * p)
    return EmbeddingSpec(f"identity({p})", dom, p, lambda x: x, lambda x: list(x))


def compose_bilinear(B: BilinearMap, e1: EmbeddingSpec, e2: EmbeddingSpec) -> ProductMap:
    """The composition f(x,y) = B(e1(x), e2(y)).

    Its defect collapses to B(e1(x1)-e1(x2), e2(y1)-e2(y2)); with B
    certified nonsingular and the embeddings injective this is the
    structural coupled-embedding certificate.
    """
    if e1.target_dim != B.a or e2.target_dim != B.b:
        raise MapsError(
            f"embedding targets ({e1.target_dim}, {e2.target_dim}) do not "
            f"match the bilinear signature ({B.a}, {B.b})"
        )

    def ev(x, y):
        X = np.asarray(e1._eval(x), dtype=float)[None, :]
        Y = np.asarray(e2._eval(y), dtype=float)[None, :]
        return B.batch(X, Y)[0]

    exact = None
    if e1._eval_exact is not None and e2._eval_exact is not None:
        def exact(x, y):  # noqa: E306
            return B._apply(e1._eval_exact(x), e2._eval_exact(y))

    return ProductMap(
        e1.domain, e2.domain, B.d, "composed-bilinear", ev, exact,
        {"bilinear": B, "e1": e1, "e2": e2},
    )


def defect_via_bilinear(f: ProductMap, x1, y1, x2, y2) -> np.ndarray:
    """Closed-form defect of a composed-bilinear map."""
    if f.kind != "composed-bilinear":
        raise MapsError("only composed-bilinear maps support this shortcut")
    B, e1, e2 = f.meta["bilinear"], f.meta["e1"], f.meta["e2"]
    return np.asarray(B(e1(x1) - e1(x2), e2(y1) - e2(y2)), dtype=float)


@dataclass(frozen=True)
class CoupledEmbeddingCertificate:
    """Structural certificate for a composed-bilinear map: the bilinear
    nonsingularity trace plus the recorded injectivity evidence."""

    bilinear: NonsingularityCertificate
    e1_metadata: dict
    e2_metadata: dict
    statement: str


def coupled_embedding_certificate(f: ProductMap) -> CoupledEmbeddingCertificate:
    if f.kind != "composed-bilinear":
        raise MapsError("structural certificates exist for composed-bilinear maps only")
    B, e1, e2 = f.meta["bilinear"], f.meta["e1"], f.meta["e2"]
    if not e1.metadata:
        e1.verify()
    if not e2.metadata:
        e2.verify()
    return CoupledEmbeddingCertificate(
        bilinear=certify(B),
        e1_metadata=dict(e1.metadata),
        e2_metadata=dict(e2.metadata),
        statement=(
            "defect(x1,y1,x2,y2) = B(e1(x1)-e1(x2), e2(y1)-e2(y2)) is nonzero "
            "whenever both arguments are nonzero; injectivity of e1, e2 on "
            "separated classes is recorded in the metadata"
        ),
    )


# -- random and tabulated test maps --------------------------------------


def random_trig(seed: int, domain_x, domain_y, d: int, degree: int,
                scale: float = 1.0) -> ProductMap:
    """Seeded trigonometric-polynomial map: each output coordinate is a
    sum of `degree` products cos(<u,x>+a) cos(<v,y>+b) with integer
    frequency vectors; degree 0 gives a constant map."""
    if degree < 0:
        raise MapsError("degree must be >= 0")
    rng = np.random.default_rng(seed)
    ax, ay = domain_x.ambient_dim, domain_y.ambient_dim
    if degree == 0:
        const = scale * rng.standard_normal(d)

        def ev(x, y, const=const):
            return const.copy()

        return ProductMap(domain_x, domain_y, d, "trig-random", ev,
                          meta={"seed": seed, "degree": 0, "scale": scale})

    amp = scale * rng.standard_normal((d, degree))
    U = rng.integers(-degree, degree + 1, size=(degree, ax)).astype(float)
    V = rng.integers(-degree, degree + 1, size=(degree, ay)).astype(float)
    pha = rng.uniform(0, 2 * np.pi, size=degree)
    phb = rng.uniform(0, 2 * np.pi, size=degree)

    def ev(x, y):
        cx = np.cos(U @ x + pha)
        cy = np.cos(V @ y + phb)
        return amp @ (cx * cy)

    return ProductMap(domain_x, domain_y, d, "trig-random", ev,
                      meta={"seed": seed, "degree": degree, "scale": scale})


def additive_map(domain_x, domain_y, A, C) -> ProductMap:
    """f(x,y) = A x + C y: every defect cancels exactly."""
    A_rows = [list(r) for r in A]
    C_rows = [list(r) for r in C]
    d = len(A_rows)
    if len(C_rows) != d:
        raise MapsError("A and C must have the same number of rows")
    An, Cn = np.asarray(A, dtype=float), np.asarray(C, dtype=float)

    def ev(x, y):
        return An @ x + Cn @ y

    def exact(x, y):
        return [
            sum(a * v for a, v in zip(A_rows[k], x))
            + sum(c * w for c, w in zip(C_rows[k], y))
            for k in range(d)
        ]

    return ProductMap(domain_x, domain_y, d, "additive", ev, exact)


def tabulated_map(n1: int, n2: int, values) -> ProductMap:
    """Barycentric-bilinear extension of values on vertex pairs:
    f(x, y) = sum_ij x_i y_j values[i][j] on the product of standard
    simplices."""
    T = np.asarray(values, dtype=float)
    if T.shape[:2] != (n1, n2) or T.ndim != 3:
        raise MapsError("values must have shape (n1, n2, d)")

    def ev(x, y):
        return np.einsum("i,j,ijk->k", x, y, T)

    return ProductMap(Simplex(n1), Simplex(n2), T.shape[2], "tabulated", ev,
                      meta={"values": T})


def map_from_json(data: dict) -> ProductMap:
    """Build a ProductMap from its JSON description."""
    kind = data.get("kind")
    if kind == "random_trig":
        return random_trig(
            int(data.get("seed", 0)),
            domain_from_spec(data["domain_x"]),
            domain_from_spec(data["domain_y"]),
            int(data["d"]),
            int(data["degree"]),
            float(data.get("scale", 1.0)),
        )
    if kind == "composed_bilinear":
        from . import bilinear as _bl

        spec = data["bilinear"]
        family = spec["family"]
        if family == "scalar":
            B = _bl.scalar(spec["algebra"], int(spec["k"]))
        elif family in ("real_poly", "complex_poly", "quat_poly", "oct_poly"):
            B = getattr(_bl, family)(int(spec["a"]), int(spec["b"]))
        else:
            raise MapsError(f"unknown bilinear family {family!r}")
        return compose_bilinear(B, embedding(data["e1"]), embedding(data["e2"]))
    if kind == "additive":
        return additive_map(
            domain_from_spec(data["domain_x"]),
            domain_from_spec(data["domain_y"]),
            data["A"],
            data["C"],
        )
    if kind == "tabulated":
        n1, n2 = int(data["n1"]), int(data["n2"])
        for key, n in (("domain_x", n1), ("domain_y", n2)):
            if key in data:
                dom = domain_from_spec(data[key])
                if not isinstance(dom, Simplex) or dom.n != n:
                    raise MapsError(
                        f"tabulated {key} must be the simplex on {n} vertices"
                    )
        return tabulated_map(n1, n2, data["values"])
    raise MapsError(f"unknown map kind {kind!r}")


def map_from_json_str(text: str) -> ProductMap:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapsError(f"malformed map JSON: {exc}") from exc
    return map_from_json(data)


# -- coloring obstruction on deleted joins --------------------------------


def _complex_avoiding(n: int, forbidden: tuple[int, ...]) -> SimplicialComplex:
    """The complex on [n] whose faces are the subsets containing none of
    the forbidden vertex sets."""
    if n > 20:
        raise MapsError("coloring obstruction limited to 20 ground vertices")
    faces = [
        m
        for m in range(1 << n)
        if not any((f & ~m) == 0 for f in forbidden)
    ]
    return SimplicialComplex(n, tuple(_canonical(n, _maximal(faces))))


class ColoringObstruction:
    """The antisymmetric map on the deleted join built from a proper
    coloring of the minimal-nonface Kneser graph.

    Output in R^{c+1}: the weight difference followed by, for each color
    class j, the weighted distance difference to the subcomplex whose
    forbidden faces are the nonfaces colored j.  A zero forces both
    weights to 1/2 and both points into the original complex.
    """

    def __init__(self, K: SimplicialComplex, col: Coloring):
        G = kneser_graph(K, minimal_only=True)
        if len(col.colors) != len(G.vertices) or not is_proper(G, col.colors):
            raise MapsError("coloring is not a proper minimal-nonface coloring")
        self.K = K
        self.c = col.c
        self.n = K.n
        classes = []
        for j in range(1, col.c + 1):
            forbidden = tuple(
                v for v, cc in zip(G.vertices, col.colors) if cc == j
            )
            classes.append(_complex_avoiding(K.n, forbidden))
        self.subcomplexes = tuple(classes)

    @property
    def out_dim(self) -> int:
        return self.c + 1

    def on_sphere(self, z) -> np.ndarray:
        """Evaluate at a nonzero vector of R^n via the crosspolytope chart."""
        z = np.asarray(z, dtype=float)
        norm = float(np.abs(z).sum())
        if norm == 0.0:
            raise MapsError("cannot evaluate at the zero vector")
        lam1, x1, lam2, x2 = decode_join_weights(z / norm)
        out = np.empty(self.c + 1)
        out[0] = lam1 - lam2
        for j, sub in enumerate(self.subcomplexes, start=1):
            d1 = lam1 * dist_to_subcomplex(x1, sub) if lam1 > 0 else 0.0
            d2 = lam2 * dist_to_subcomplex(x2, sub) if lam2 > 0 else 0.0
            out[j] = d1 - d2
        return out

    def value_join(self, pt) -> np.ndarray:
        v = np.zeros(self.n)
        if pt.p1 is not None:
            v += pt.lambda1 * pt.p1.realize(self.n)
        if pt.p2 is not None:
            v -= pt.lambda2 * pt.p2.realize(self.n)
        return self.on_sphere(v)


def coloring_obstruction(K: SimplicialComplex, col: Coloring) -> ColoringObstruction:
    return ColoringObstruction(K, col)


# -- equivariant obstruction maps on sphere pairs -------------------------


class EquivariantMap:
    """A (Z/2)^2-equivariant map on S^m x S^n with an action signature.

    The codomain is laid out as [first-only | second-only | both] sign
    blocks; `sign_flip_x` / `sign_flip_y` give the corresponding
    diagonal actions for residual checks.
    """

    def __init__(self, m, n, signature: ActionSignature, kind, evaluator,
                 meta=None):
        self.m = m
        self.n = n
        self.signature = signature
        self.kind = kind
        self._eval = evaluator
        self.meta = dict(meta or {})

    @property
    def codomain_dim(self) -> int:
        return self.signature.total

    def __call__(self, zx, zy) -> np.ndarray:
        return self._eval(
            np.asarray(zx, dtype=float), np.asarray(zy, dtype=float)
        )

    def sign_flip_x(self) -> np.ndarray:
        s = self.signature
        return np.concatenate(
            [-np.ones(s.i), np.ones(s.j), -np.ones(s.k)]
        )

    def sign_flip_y(self) -> np.ndarray:
        s = self.signature
        return np.concatenate(
            [np.ones(s.i), -np.ones(s.j), -np.ones(s.k)]
        )

    def decode(self, zx, zy):
        return sphere_to_join(zx), sphere_to_join(zy)

    def __repr__(self) -> str:
        s = self.signature
        return (
            f"<EquivariantMap {self.kind} on S^{self.m} x S^{self.n} -> "
            f"({s.i},{s.j},{s.k})>"
        )


def _weighted_defect(f: ProductMap, lam1, x1, lam2, x2, mu1, y1, mu2, y2):
    out = np.zeros(f.d)
    if lam1 > 0 and mu1 > 0:
        out += (lam1 * mu1) * f(x1, y1)
    if lam2 > 0 and mu2 > 0:
        out += (lam2 * mu2) * f(x2, y2)
    if lam1 > 0 and mu2 > 0:
        out -= (lam1 * mu2) * f(x1, y2)
    if lam2 > 0 and mu1 > 0:
        out -= (lam2 * mu1) * f(x2, y1)
    return out


def simplex_pair_obstruction(f: ProductMap, m: int, n: int) -> EquivariantMap:
    """The weighted-defect obstruction for a map on a pair of full
    simplices, read through the crosspolytope charts.

    Output (lam1-lam2, mu1-mu2, weighted defect) in R^{1+1+d}; a zero
    forces equal weights and a vanishing four-term defect at points in
    disjoint faces.
    """
    if not isinstance(f.domain_x, Simplex) or f.domain_x.n != m + 1:
        raise MapsError(f"first factor must be the standard simplex on {m + 1} vertices")
    if not isinstance(f.domain_y, Simplex) or f.domain_y.n != n + 1:
        raise MapsError(f"second factor must be the standard simplex on {n + 1} vertices")

    def ev(zx, zy):
        wx = zx / np.abs(zx).sum()
        wy = zy / np.abs(zy).sum()
        lam1, x1, lam2, x2 = decode_join_weights(wx)
        mu1, y1, mu2, y2 = decode_join_weights(wy)
        head = np.array([lam1 - lam2, mu1 - mu2])
        return np.concatenate(
            [head, _weighted_defect(f, lam1, x1, lam2, x2, mu1, y1, mu2, y2)]
        )

    return EquivariantMap(
        m, n, ActionSignature(1, 1, f.d), "simplex-pair-obstruction", ev,
        {"f": f},
    )


def joint_obstruction(K1: SimplicialComplex, K2: SimplicialComplex,
                      col1: Coloring, col2: Coloring,
                      f: ProductMap) -> EquivariantMap:
    """Combined obstruction for a pair of complexes: both coloring
    obstructions plus the weighted defect of f (a map on the full
    simplices extending one on |K1| x |K2|).

    Codomain signature (c1+1, c2+1, d).  A zero forces all join weights
    to 1/2, the points into the complexes, and the defect to vanish.
    """
    psi1 = coloring_obstruction(K1, col1)
    psi2 = coloring_obstruction(K2, col2)
    if not isinstance(f.domain_x, Simplex) or f.domain_x.n != K1.n:
        raise MapsError(f"map must be defined on the full simplex with {K1.n} vertices")
    if not isinstance(f.domain_y, Simplex) or f.domain_y.n != K2.n:
        raise MapsError(f"map must be defined on the full simplex with {K2.n} vertices")

    def ev(zx, zy):
        wx = zx / np.abs(zx).sum()
        wy = zy / np.abs(zy).sum()
        lam1, x1, lam2, x2 = decode_join_weights(wx)
        mu1, y1, mu2, y2 = decode_join_weights(wy)
        return np.concatenate(
            [
                psi1.on_sphere(wx),
                psi2.on_sphere(wy),
                _weighted_defect(f, lam1, x1, lam2, x2, mu1, y1, mu2, y2),
            ]
        )

    return EquivariantMap(
        K1.n - 1, K2.n - 1,
        ActionSignature(psi1.out_dim, psi2.out_dim, f.d),
        "joint-obstruction", ev,
        {"f": f, "psi1": psi1, "psi2": psi2},
    )


# -- local coupled-nonsingularity check -----------------------------------


@dataclass(frozen=True)
class MixedPartialsReport:
    """Finite-difference summary of the mixed second partials at a point."""

    ok: bool
    min_norm: float
    tolerance: float
    h: float
    estimates: np.ndarray = field(repr=False)
    richardson: np.ndarray = field(repr=False)


def mixed_partials_check(f: ProductMap, x, y, h: float = 1e-3) -> MixedPartialsReport:
    """Check that every mixed second partial d^2 f / dx_i dy_j is nonzero
    at (x, y), by central differences with one Richardson refinement.

    The estimate for pair (i, j) is the defect of the four stencil
    points over 4h^2; the rejection threshold scales with the observed
    O(h^2) truncation term.  Raises if the stencil leaves the boxes.
    """
    if not isinstance(f.domain_x, Box) or not isinstance(f.domain_y, Box):
        raise MapsError("mixed partials are checked on box domains")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if h <= 0:
        raise MapsError("h must be positive")
    if not f.domain_x.contains(x, margin=h) or not f.domain_y.contains(y, margin=h):
        raise MapsError("point too close to the domain boundary for the stencil")
    px, py = f.domain_x.ambient_dim, f.domain_y.ambient_dim

    def stencil(step):
        est = np.empty((px, py, f.d))
        for i in range(px):
            dx = np.zeros(px)
            dx[i] = step
            for j in range(py):
                dy = np.zeros(py)
                dy[j] = step
                est[i, j] = (
                    f(x + dx, y + dy) - f(x + dx, y - dy)
                    - f(x - dx, y + dy) + f(x - dx, y - dy)
                ) / (4 * step * step)
        return est

    coarse = stencil(h)
    fine = stencil(h / 2)
    richardson = fine + (fine - coarse) / 3.0
    norms = np.linalg.norm(richardson, axis=2)
    # the truncation term of the coarse stencil is ~ (3/4) h^2 x scale
    trunc = np.linalg.norm(coarse - fine, axis=2).max()
    scale_est = trunc / (0.75 * h * h) if trunc > 0 else 0.0
    tol = 10.0 * h * h * scale_est + 1e-9 * (1.0 + float(np.abs(fine).max()))
    ok = bool(np.all(norms > tol))
    return MixedPartialsReport(
        ok=ok,
        min_norm=float(norms.min()),
        tolerance=float(tol),
        h=h,
        estimates=fine,
        richardson=richardson,
    )


# -- sphere-factor family witness ----------------------------------------


def coindex_witness(f: ProductMap) -> ProductMap:
    """g(x,y) = f(x,y) - f(x,-y): exactly odd in the sphere factor.

    When f carries a structural coupled-embedding certificate, g is an
    embedding of the first factor for every fixed y, and is flagged as an
    embedding-family witness.
    """
    if not isinstance(f.domain_y, Sphere):
        raise MapsError("the second factor must be a sphere")

    def ev(x, y):
        return f._eval(x, y) - f._eval(x, -y)

    exact = None
    if f.has_exact:
        def exact(x, y):  # noqa: E306
            a = f._eval_exact(x, y)
            b = f._eval_exact(x, [-v for v in y])
            return [a[k] - b[k] for k in range(f.d)]

    return ProductMap(
        f.domain_x, f.domain_y, f.d, "coindex-witness", ev, exact,
        {"parent": f, "embedding_family_witness": f.kind == "composed-bilinear"},
    )
