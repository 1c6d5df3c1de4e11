"""Bound certificates for the minimal coupled-embedding dimension d(X, Y).

Upper bounds come from the bilinear construction catalog applied to the
embedding dimensions of the factors.  Lower bounds come from three
obstruction rules built on the binary-digit criterion:

  * pair rule: two complexes with Kneser numbers c1, c2 block all
    coupled almost-embeddings below n1+n2-c1-c2-3;
  * sphere rule: a complex against S^m, with monotone transfer from the
    best admissible sub-sphere (a derived rule, flagged in traces);
  * manifold rule: dimensions alone, restricting to embedded sub-spheres.

Every certificate carries a replayable trace; `Unknown` is a first-class
verdict and is never converted into an existence claim.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .bilinear import catalog_min_dim
from .hopf import shares_binary_one
from .kneser import chromatic_number, kneser_graph
from .simplicial import SimplicialComplex, named, skeleton, three_points_power


class BoundsError(ValueError):
    """Invalid space descriptor or rule application."""


# -- space descriptors -----------------------------------------------------


@dataclass(frozen=True)
class SpaceDescriptor:
    """A space as the bounds engine sees it.

    kind 'sphere' carries m; 'complex' carries a complex and an embedding
    dimension (default 2 dim + 1); 'manifold' carries its dimension and
    embedding dimension and may also carry a triangulation, which makes
    the combinatorial rules applicable.
    """

    kind: str
    label: str
    e: int
    m: int | None = None
    p: int | None = None
    K: SimplicialComplex | None = field(default=None, compare=False)

    def manifold_dim(self) -> int | None:
        if self.kind == "sphere":
            return self.m
        return self.p

    def to_json(self) -> dict:
        out = {"kind": self.kind, "label": self.label, "e": self.e}
        if self.m is not None:
            out["m"] = self.m
        if self.p is not None:
            out["p"] = self.p
        if self.K is not None:
            out["n"] = self.K.n
        return out


def sphere_space(m: int) -> SpaceDescriptor:
    if m < 0:
        raise BoundsError("sphere dimension must be nonnegative")
    return SpaceDescriptor("sphere", f"S^{m}", e=m + 1, m=m, p=m)


def complex_space(K: SimplicialComplex, e: int | None = None,
                  label: str | None = None) -> SpaceDescriptor:
    if e is None:
        e = 2 * K.dim() + 1
    return SpaceDescriptor("complex", label or str(K), e=e, K=K)


def manifold_space(p: int, e: int, label: str | None = None,
                   K: SimplicialComplex | None = None) -> SpaceDescriptor:
    if p < 1 or e < p + 1:
        raise BoundsError("need p >= 1 and e >= p + 1")
    return SpaceDescriptor("manifold", label or f"manifold(p={p})", e=e, p=p, K=K)


def named_space(ident: str) -> SpaceDescriptor:
    """Catalog spaces: rp2, cp2 (manifolds with their triangulations and
    curated embedding dimensions), the bare triangulations rp2_6 / cp2_9,
    sphere(m), skeleton(m,k), and three_points_power(k)."""
    if ident == "rp2":
        return manifold_space(2, 4, "RP^2", K=named("rp2_6"))
    if ident == "cp2":
        return manifold_space(4, 7, "CP^2", K=named("cp2_9"))
    if ident == "rp2_6":
        return complex_space(named("rp2_6"), e=4, label="rp2_6")
    if ident == "cp2_9":
        return complex_space(named("cp2_9"), e=7, label="cp2_9")
    if ident.startswith("sphere(") and ident.endswith(")"):
        return sphere_space(int(ident[7:-1]))
    if ident.startswith("skeleton(") and ident.endswith(")"):
        m, k = (int(v) for v in ident[9:-1].split(","))
        return complex_space(skeleton(m, k), label=ident)
    if ident.startswith("three_points_power(") and ident.endswith(")"):
        k = int(ident[19:-1])
        return complex_space(three_points_power(k), label=ident)
    raise BoundsError(f"unknown space id {ident!r}")


NAMED_SPACE_IDS = (
    "rp2", "cp2", "rp2_6", "cp2_9", "sphere(m)", "skeleton(m,k)",
    "three_points_power(k)",
)


# -- Kneser chromatic numbers, cached per complex --------------------------

_chi_cache: dict[tuple, int] = {}


def kneser_chi(K: SimplicialComplex) -> int:
    key = (K.n, K.facets)
    if key not in _chi_cache:
        _chi_cache[key] = chromatic_number(kneser_graph(K))[0]
    return _chi_cache[key]


# -- rule outcomes ----------------------------------------------------------


@dataclass(frozen=True)
class RuleOutcome:
    """One lower-bound rule application: Blocked with a value, or Unknown."""

    rule: str
    verdict: str  # "Blocked" | "Unknown"
    value: int | None
    inputs: dict
    notion: str
    derived: bool = False
    reason: str | None = None

    def step(self) -> dict:
        out = {
            "rule": self.rule,
            "verdict": self.verdict,
            "inputs": dict(self.inputs),
            "notion": self.notion,
        }
        if self.value is not None:
            out["value"] = self.value
        if self.derived:
            out["derived"] = True
        if self.reason:
            out["reason"] = self.reason
        return out


def _pair_value(n1: int, c1: int, n2: int, c2: int) -> int | None:
    a1, a2 = n1 - c1 - 2, n2 - c2 - 2
    if a1 < 0 or a2 < 0 or shares_binary_one(a1, a2):
        return None
    return a1 + a2 + 1


def lower_bound_complexes(X: SpaceDescriptor, Y: SpaceDescriptor) -> RuleOutcome:
    """Pair rule: with a_i = n_i - c_i - 2 both nonnegative and sharing no
    binary digit, every map into R^{a1+a2} has a discrete parallelogram,
    so d >= a1 + a2 + 1."""
    if X.K is None or Y.K is None:
        raise BoundsError("both spaces need triangulations for the pair rule")
    n1, c1 = X.K.n, kneser_chi(X.K)
    n2, c2 = Y.K.n, kneser_chi(Y.K)
    inputs = {"n1": n1, "c1": c1, "n2": n2, "c2": c2}
    value = _pair_value(n1, c1, n2, c2)
    if value is None:
        a1, a2 = n1 - c1 - 2, n2 - c2 - 2
        reason = (
            "negative exponent" if min(a1, a2) < 0
            else f"{a1} and {a2} share a binary digit"
        )
        return RuleOutcome("kneser-pair-obstruction", "Unknown", None, inputs,
                           "almost-embedding", reason=reason)
    return RuleOutcome("kneser-pair-obstruction", "Blocked", value, inputs,
                       "almost-embedding")


def _sphere_value(n: int, c: int, m: int) -> tuple[int, int] | None:
    p = n - c - 2
    if p < 0:
        return None
    for m_used in range(m, -1, -1):
        if not shares_binary_one(m_used, p):
            return m_used + p + 1, m_used
    return None


def lower_bound_sphere(X: SpaceDescriptor, m: int) -> RuleOutcome:
    """Sphere rule: with p = n - c - 2, any m' <= m with digits disjoint
    from p blocks maps below m'+p, and the obstruction transfers to S^m
    by restricting to a sub-sphere (derived monotonicity step)."""
    if X.K is None:
        raise BoundsError("the space needs a triangulation for the sphere rule")
    if m < 0:
        raise BoundsError("sphere dimension must be nonnegative")
    n, c = X.K.n, kneser_chi(X.K)
    inputs = {"n": n, "c": c, "m": m}
    got = _sphere_value(n, c, m)
    if got is None:
        return RuleOutcome("kneser-sphere-obstruction", "Unknown", None, inputs,
                           "almost-embedding", reason="negative exponent")
    value, m_used = got
    inputs["m_used"] = m_used
    return RuleOutcome("kneser-sphere-obstruction", "Blocked", value, inputs,
                       "almost-embedding", derived=m_used < m)


def _manifold_value(p: int, q: int) -> int | None:
    best = 0
    for a in range(p - 1, -1, -1):
        for b in range(q - 1, -1, -1):
            if not shares_binary_one(a, b):
                best = max(best, a + b)
                break
    if best == 0:
        return None
    return best + 1


def lower_bound_manifolds(p: int, q: int) -> RuleOutcome:
    """Manifold rule: embedded sub-spheres S^a x S^b with disjoint digits
    force a zero of the induced biskew map in R^{a+b}, so d >= a+b+1.
    Degenerate below dimension 2 (best a+b = 0) reports Unknown."""
    if p < 1 or q < 1:
        raise BoundsError("manifold dimensions must be >= 1")
    inputs = {"p": p, "q": q}
    value = _manifold_value(p, q)
    if value is None:
        return RuleOutcome("manifold-subsphere-obstruction", "Unknown", None,
                           inputs, "embedding",
                           reason="no nondegenerate digit-disjoint pair")
    return RuleOutcome("manifold-subsphere-obstruction", "Blocked", value,
                       inputs, "embedding", derived=True)


def upper_bound(X: SpaceDescriptor, Y: SpaceDescriptor) -> tuple[int, list[dict]]:
    """Catalog upper bound: the best nonsingular bilinear construction on
    (e_X, e_Y); never worse than e_X + e_Y - 1."""
    entry = catalog_min_dim(X.e, Y.e)
    step = {
        "rule": "bilinear-catalog",
        "inputs": {"a": X.e, "b": Y.e},
        "construction": list(entry.trace),
        "value": entry.d,
        "notion": "embedding",
    }
    return entry.d, [step]


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class BoundsCertificate:
    """Lower/upper bounds on d(X, Y) with replayable rule traces."""

    X: SpaceDescriptor
    Y: SpaceDescriptor
    lower: int | None
    lower_trace: tuple[dict, ...]
    upper: int
    upper_trace: tuple[dict, ...]

    @property
    def tight(self) -> bool:
        return self.lower is not None and self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "X": self.X.to_json(),
            "Y": self.Y.to_json(),
            "lower": {
                "value": self.lower,
                "trace": [dict(s) for s in self.lower_trace],
            },
            "upper": {
                "value": self.upper,
                "trace": [dict(s) for s in self.upper_trace],
            },
            "tight": self.tight,
        }


def _lower_candidates(X: SpaceDescriptor, Y: SpaceDescriptor) -> list[RuleOutcome]:
    out = []
    if X.K is not None and Y.K is not None:
        out.append(lower_bound_complexes(X, Y))
    if X.K is not None and Y.kind == "sphere":
        out.append(lower_bound_sphere(X, Y.m))
    if Y.K is not None and X.kind == "sphere":
        out.append(lower_bound_sphere(Y, X.m))
    p, q = X.manifold_dim(), Y.manifold_dim()
    if p is not None and q is not None and p >= 1 and q >= 1:
        out.append(lower_bound_manifolds(p, q))
    return out


def certificate(X: SpaceDescriptor, Y: SpaceDescriptor) -> BoundsCertificate:
    """Best applicable lower rule combined with the catalog upper bound."""
    candidates = _lower_candidates(X, Y)
    blocked = [c for c in candidates if c.verdict == "Blocked"]
    U, upper_trace = upper_bound(X, Y)
    if blocked:
        best = max(blocked, key=lambda c: (c.value, -candidates.index(c)))
        lower, lower_trace = best.value, (best.step(),)
    else:
        lower = None
        lower_trace = tuple(c.step() for c in candidates) or (
            {"rule": "none-applicable", "verdict": "Unknown",
             "inputs": {}, "notion": "embedding"},
        )
    if lower is not None and lower > U:
        raise AssertionError(
            f"certificate invariant violated: lower {lower} > upper {U}"
        )
    return BoundsCertificate(X, Y, lower, lower_trace, U, tuple(upper_trace))


# -- trace replay -------------------------------------------------------------

_REPLAY = {
    "kneser-pair-obstruction": lambda i: _pair_value(i["n1"], i["c1"], i["n2"], i["c2"]),
    "kneser-sphere-obstruction": lambda i: (
        (_sphere_value(i["n"], i["c"], i["m"]) or (None,))[0]
    ),
    "manifold-subsphere-obstruction": lambda i: _manifold_value(i["p"], i["q"]),
    "bilinear-catalog": lambda i: catalog_min_dim(i["a"], i["b"]).d,
}


def replay(cert_json: dict) -> bool:
    """Re-execute every named rule in a certificate and compare values."""
    for side in ("lower", "upper"):
        for step in cert_json[side]["trace"]:
            rule = step["rule"]
            if rule == "none-applicable":
                continue
            if rule not in _REPLAY:
                return False
            expected = step.get("value")
            got = _REPLAY[rule](step["inputs"])
            if step.get("verdict") == "Unknown":
                if got is not None:
                    return False
            elif got != expected:
                return False
    return True


CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["X", "Y", "lower", "upper", "tight"],
    "properties": {
        "X": {"type": "object"},
        "Y": {"type": "object"},
        "lower": {
            "type": "object",
            "required": ["value", "trace"],
            "properties": {
                "value": {"type": ["integer", "null"]},
                "trace": {"type": "array", "items": {"type": "object"}},
            },
        },
        "upper": {
            "type": "object",
            "required": ["value", "trace"],
            "properties": {
                "value": {"type": "integer"},
                "trace": {"type": "array", "items": {"type": "object"}},
            },
        },
        "tight": {"type": "boolean"},
    },
}


# -- the closed-form table -----------------------------------------------------


def _skeleton_space(p: int) -> SpaceDescriptor:
    return named_space(f"skeleton({2 * p + 2},{p})")


def _power_space(p: int) -> SpaceDescriptor:
    return named_space(f"three_points_power({p})")


def _row(item: str, params: dict, X: SpaceDescriptor, Y: SpaceDescriptor,
         expected: int) -> dict:
    cert = certificate(X, Y)
    return {
        "item": item,
        "params": dict(params),
        "X": X.label,
        "Y": Y.label,
        "expected": expected,
        "lower": cert.lower,
        "upper": cert.upper,
        "tight": cert.tight,
    }


def reproduce_table() -> list[dict]:
    """Every closed-form instance over the documented parameter ranges.

    Each row records the formula value and the engine's bounds; a row is
    correct when lower == upper == expected.  Pure integer computation,
    so the output is byte-identical across runs.
    """
    rows = []
    # pairs of simplex-power spaces: d = 2p + 2q + 1 when digits disjoint
    for p in range(0, 9):
        for q in range(0, 9):
            if shares_binary_one(p, q):
                continue
            expected = 2 * p + 2 * q + 1
            pairs = [
                ("powers", _power_space(p), _power_space(q)),
                ("skeleton-power", _skeleton_space(p), _power_space(q)),
                ("skeletons", _skeleton_space(p), _skeleton_space(q)),
            ]
            for tag, X, Y in pairs:
                rows.append(_row(f"main/{tag}", {"p": p, "q": q}, X, Y, expected))
    # rp2 against spheres: 4 floor(k/4) + 4
    for k in range(1, 17):
        rows.append(_row("rp2-sphere", {"k": k}, named_space("rp2"),
                         sphere_space(k), 4 * (k // 4) + 4))
    # cp2 against spheres: 8q+7 at k = 8q, else 8 ceil(k/8)
    for k in range(1, 25):
        if k % 8 == 0:
            expected = k + 7
        else:
            expected = 8 * ((k + 7) // 8)
        rows.append(_row("cp2-sphere", {"k": k}, named_space("cp2"),
                         sphere_space(k), expected))
    # skeleton and power families against the circle: 2k + 2
    for k in range(0, 7):
        rows.append(_row("skeleton-circle", {"k": k}, _skeleton_space(k),
                         sphere_space(1), 2 * k + 2))
        rows.append(_row("power-circle", {"k": k}, _power_space(k),
                         sphere_space(1), 2 * k + 2))
    # rp2_6 against middle skeleta: 4q + 4
    for q in range(1, 5):
        rows.append(_row("rp2-skeleton", {"q": q}, named_space("rp2_6"),
                         named_space(f"skeleton({4 * q + 2},{2 * q})"), 4 * q + 4))
    return rows


def table_to_json_str(rows: list[dict]) -> str:
    return json.dumps({"rows": rows}, indent=1, sort_keys=True)
