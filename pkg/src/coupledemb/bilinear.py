"""Structured nonsingular bilinear maps.

Base constructions are polynomial multiplication with coefficients in
R, C, H, or O (regarding R^k as coefficient vectors) and blockwise
scalar multiplication by a division-algebra factor.  They are closed
under coordinate restriction and argument swap, certified symbolically
by walking the construction back to a zero-divisor-free coefficient
algebra, and probed numerically by a multistart projected gradient
search for singular pairs on the unit torus.

Evaluation is generic over the coefficient ring: Python ints and
Fractions go through an exact path, numpy arrays through a vectorized
batch path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class BilinearError(ValueError):
    """Invalid construction or evaluation."""


class CertificationError(BilinearError):
    """The construction carries no nonsingularity certificate."""


# -- division-algebra multiplication tables (Cayley-Dickson tower) -----

# table[i][j] = (k, s) meaning e_i * e_j = s * e_k
_TABLE_R = ((0, 1),),


def _double(table):
    """One Cayley-Dickson doubling step on a basis multiplication table.

    Products of pairs (a, b) follow (a,b)(c,d) = (ac - conj(d) b, da + b conj(c));
    conjugation negates every basis vector except the unit.
    """
    n = len(table)

    def conj_sign(i):
        return 1 if i == 0 else -1

    out = [[None] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            k, s = table[i][j]
            out[i][j] = (k, s)                                  # (i,0)(j,0)
            kj, sj = table[j][i]
            out[i][j + n] = (kj + n, sj)                        # (i,0)(0,j)
            ki, si = table[i][j]
            out[i + n][j] = (ki + n, si * conj_sign(j))         # (0,i)(j,0)
            kk, sk = table[j][i]
            out[i + n][j + n] = (kk, -sk * conj_sign(j))        # (0,i)(0,j)
    return tuple(tuple(row) for row in out)


_TABLE_C = _double(_TABLE_R)
_TABLE_H = _double(_TABLE_C)
_TABLE_O = _double(_TABLE_H)

ALGEBRAS = {"R": _TABLE_R, "C": _TABLE_C, "H": _TABLE_H, "O": _TABLE_O}
_ALGEBRA_NAMES = {"R": "real", "C": "complex", "H": "quaternion", "O": "octonion"}


def algebra_multiply(alg: str, x, y):
    """Product of two coefficient vectors in the named algebra (exact)."""
    table = ALGEBRAS[alg]
    n = len(table)
    out = [0] * n
    for p in range(n):
        xp = x[p]
        if xp == 0:
            continue
        for q in range(n):
            yq = y[q]
            if yq == 0:
                continue
            k, s = table[p][q]
            out[k] = out[k] + s * xp * yq
    return out


# -- map kinds ----------------------------------------------------------


class BilinearMap:
    """Base class: a bilinear map R^a x R^b -> R^d with an evaluator."""

    a: int
    b: int
    d: int
    kind: str

    def __call__(self, x, y):
        if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
            X = np.asarray(x, dtype=float)[None, :]
            Y = np.asarray(y, dtype=float)[None, :]
            return self.batch(X, Y)[0]
        return self._apply(list(x), list(y))

    def _apply(self, x, y):  # exact single-pair path
        raise NotImplementedError

    def batch(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{self.describe()}: R^{self.a} x R^{self.b} -> R^{self.d}>"

    def structure_tensor(self) -> np.ndarray:
        """Dense coefficient tensor T with B(x,y)_k = sum x_i y_j T[i,j,k]."""
        cached = getattr(self, "_tensor", None)
        if cached is None:
            T = np.zeros((self.a, self.b, self.d))
            for i in range(self.a):
                ei = [0] * self.a
                ei[i] = 1
                for j in range(self.b):
                    ej = [0] * self.b
                    ej[j] = 1
                    T[i, j, :] = self._apply(ei, ej)
            self._tensor = cached = T
        return cached

    def _check_dims(self, x, y):
        if len(x) != self.a or len(y) != self.b:
            raise BilinearError(
                f"expected lengths ({self.a}, {self.b}), got ({len(x)}, {len(y)})"
            )


class PolyMultiplication(BilinearMap):
    """Coefficientwise polynomial multiplication over R, C, H, or O.

    Inputs are blocks of algebra coefficients; the output is the
    convolution of the two block sequences, so d = a + b - blocksize.
    """

    def __init__(self, alg: str, a: int, b: int):
        if alg not in ALGEBRAS:
            raise BilinearError(f"unknown algebra {alg!r}")
        bs = len(ALGEBRAS[alg])
        if a < bs or b < bs or a % bs or b % bs:
            raise BilinearError(
                f"{_ALGEBRA_NAMES[alg]} polynomial multiplication needs "
                f"dimensions divisible by {bs}"
            )
        self.alg, self.a, self.b = alg, a, b
        self.block = bs
        self.d = a + b - bs
        self.kind = f"{_ALGEBRA_NAMES[alg]}-poly"

    def _apply(self, x, y):
        self._check_dims(x, y)
        bs = self.block
        table = ALGEBRAS[self.alg]
        nx, ny = self.a // bs, self.b // bs
        out = [0] * self.d
        for i in range(nx):
            for j in range(ny):
                base = (i + j) * bs
                for p in range(bs):
                    xp = x[i * bs + p]
                    if xp == 0:
                        continue
                    for q in range(bs):
                        yq = y[j * bs + q]
                        if yq == 0:
                            continue
                        k, s = table[p][q]
                        out[base + k] = out[base + k] + s * xp * yq
        return out

    def batch(self, X, Y):
        bs = self.block
        table = ALGEBRAS[self.alg]
        nx, ny = self.a // bs, self.b // bs
        out = np.zeros((X.shape[0], self.d), dtype=np.result_type(X, Y))
        for i in range(nx):
            for j in range(ny):
                base = (i + j) * bs
                for p in range(bs):
                    xp = X[:, i * bs + p]
                    for q in range(bs):
                        k, s = table[p][q]
                        out[:, base + k] += s * xp * Y[:, j * bs + q]
        return out

    def describe(self) -> str:
        return f"{_ALGEBRA_NAMES[self.alg]}_poly({self.a},{self.b})"


class ScalarMultiplication(BilinearMap):
    """One algebra factor acting diagonally on k coefficient blocks."""

    def __init__(self, alg: str, k: int):
        if alg not in ("C", "H", "O"):
            raise BilinearError("scalar multiplication uses C, H, or O")
        if k < 1:
            raise BilinearError("k must be >= 1")
        bs = len(ALGEBRAS[alg])
        self.alg, self.k = alg, k
        self.block = bs
        self.a, self.b, self.d = bs, bs * k, bs * k
        self.kind = "scalar"

    def _apply(self, x, y):
        self._check_dims(x, y)
        bs = self.block
        out = []
        for j in range(self.k):
            out.extend(algebra_multiply(self.alg, x, y[j * bs:(j + 1) * bs]))
        return out

    def batch(self, X, Y):
        bs = self.block
        table = ALGEBRAS[self.alg]
        out = np.zeros((X.shape[0], self.d), dtype=np.result_type(X, Y))
        for j in range(self.k):
            for p in range(bs):
                xp = X[:, p]
                for q in range(bs):
                    k, s = table[p][q]
                    out[:, j * bs + k] += s * xp * Y[:, j * bs + q]
        return out

    def describe(self) -> str:
        return f"scalar({self.alg},{self.k})"


class Restriction(BilinearMap):
    """Restriction of a parent map to coordinate subspaces of each factor."""

    def __init__(self, parent: BilinearMap, ia, ib):
        ia = tuple(sorted(set(ia)))
        ib = tuple(sorted(set(ib)))
        if not ia or not ib:
            raise BilinearError("index sets must be nonempty")
        if ia[0] < 1 or ia[-1] > parent.a or ib[0] < 1 or ib[-1] > parent.b:
            raise BilinearError("index set out of range for the parent map")
        self.parent, self.ia, self.ib = parent, ia, ib
        self.a, self.b, self.d = len(ia), len(ib), parent.d
        self.kind = "restriction"

    def _embed(self, x, size, idx, zero):
        out = [zero] * size
        for value, i in zip(x, idx):
            out[i - 1] = value
        return out

    def _apply(self, x, y):
        self._check_dims(x, y)
        return self.parent._apply(
            self._embed(x, self.parent.a, self.ia, 0),
            self._embed(y, self.parent.b, self.ib, 0),
        )

    def batch(self, X, Y):
        XP = np.zeros((X.shape[0], self.parent.a), dtype=X.dtype)
        YP = np.zeros((Y.shape[0], self.parent.b), dtype=Y.dtype)
        XP[:, [i - 1 for i in self.ia]] = X
        YP[:, [i - 1 for i in self.ib]] = Y
        return self.parent.batch(XP, YP)

    def describe(self) -> str:
        def fmt(idx, full):
            if len(idx) == full and idx == tuple(range(1, full + 1)):
                return "all"
            if idx == tuple(range(idx[0], idx[-1] + 1)):
                return f"{idx[0]}..{idx[-1]}"
            return ",".join(map(str, idx))

        return (
            f"restrict({self.parent.describe()}, "
            f"a={fmt(self.ia, self.parent.a)}, b={fmt(self.ib, self.parent.b)})"
        )


class Swap(BilinearMap):
    """Argument transposition of a parent map."""

    def __init__(self, parent: BilinearMap):
        self.parent = parent
        self.a, self.b, self.d = parent.b, parent.a, parent.d
        self.kind = "swap"

    def _apply(self, x, y):
        self._check_dims(x, y)
        return self.parent._apply(y, x)

    def batch(self, X, Y):
        return self.parent.batch(Y, X)

    def describe(self) -> str:
        return f"swap({self.parent.describe()})"


class ExplicitTensor(BilinearMap):
    """A raw coefficient tensor; evaluatable but carries no certificate."""

    def __init__(self, tensor):
        T = np.asarray(tensor, dtype=float)
        if T.ndim != 3:
            raise BilinearError("tensor must have shape (a, b, d)")
        self.a, self.b, self.d = T.shape
        self._tensor = T
        self._rows = [
            [list(T[i, j, :]) for j in range(self.b)] for i in range(self.a)
        ]
        self.kind = "tensor"

    def _apply(self, x, y):
        self._check_dims(x, y)
        out = [0] * self.d
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                row = self._rows[i][j]
                for k in range(self.d):
                    if row[k]:
                        out[k] = out[k] + row[k] * xi * yj
        return out

    def batch(self, X, Y):
        return np.einsum("ni,nj,ijk->nk", X, Y, self._tensor)

    def describe(self) -> str:
        return f"tensor({self.a},{self.b},{self.d})"


# -- public constructors -------------------------------------------------


def real_poly(a: int, b: int) -> BilinearMap:
    """Real polynomial multiplication R^a x R^b -> R^{a+b-1}."""
    return PolyMultiplication("R", a, b)


def complex_poly(a: int, b: int) -> BilinearMap:
    """Complex polynomial multiplication; a, b even, d = a+b-2."""
    return PolyMultiplication("C", a, b)


def quat_poly(a: int, b: int) -> BilinearMap:
    """Quaternionic polynomial multiplication; a, b = 0 mod 4, d = a+b-4."""
    return PolyMultiplication("H", a, b)


def oct_poly(a: int, b: int) -> BilinearMap:
    """Octonionic polynomial multiplication; a, b = 0 mod 8, d = a+b-8."""
    return PolyMultiplication("O", a, b)


def scalar(alg: str, k: int) -> BilinearMap:
    """Blockwise scalar multiplication R^dim(alg) x R^{dim(alg)*k} -> same."""
    return ScalarMultiplication(alg, k)


def restrict(B: BilinearMap, ia, ib) -> BilinearMap:
    return Restriction(B, ia, ib)


def swap(B: BilinearMap) -> BilinearMap:
    return Swap(B)


def explicit_tensor(tensor) -> BilinearMap:
    return ExplicitTensor(tensor)


# -- certification -------------------------------------------------------


@dataclass(frozen=True)
class NonsingularityCertificate:
    """Rule trace ending in a zero-divisor-free base construction."""

    statement: str
    trace: tuple[str, ...]


def certify(B: BilinearMap) -> NonsingularityCertificate:
    """Walk the construction chain and certify B(x,y)=0 => x=0 or y=0."""
    trace = _certify_trace(B)
    return NonsingularityCertificate(
        statement="B(x,y) = 0 implies x = 0 or y = 0", trace=tuple(trace)
    )


def _certify_trace(B: BilinearMap) -> list[str]:
    if isinstance(B, PolyMultiplication):
        name = _ALGEBRA_NAMES[B.alg]
        base = (
            f"{B.describe()}: nonzero {name} polynomials have nonzero "
            f"leading coefficients, and the {name} algebra has no zero "
            f"divisors, so products of nonzero inputs are nonzero"
        )
        if B.alg == "O":
            base += " (extension rule: octonionic coefficients)"
        return [base]
    if isinstance(B, ScalarMultiplication):
        name = _ALGEBRA_NAMES[B.alg]
        return [
            f"{B.describe()}: a nonzero {name} factor is invertible, so it "
            f"annihilates no nonzero block vector"
        ]
    if isinstance(B, Restriction):
        return _certify_trace(B.parent) + [
            f"{B.describe()}: restriction to coordinate subspaces preserves "
            f"nonsingularity"
        ]
    if isinstance(B, Swap):
        return _certify_trace(B.parent) + [
            f"{B.describe()}: argument transposition preserves nonsingularity"
        ]
    raise CertificationError(
        f"{B.describe()} has no structural certificate; use singular_search"
    )


# -- numerical singular-pair search --------------------------------------


@dataclass(frozen=True)
class SingularSearchResult:
    """Minimum of |B(x,y)| over the unit torus found by multistart
    projected gradient descent (deterministic for a fixed seed)."""

    min_norm: float
    x: tuple[float, ...]
    y: tuple[float, ...]
    start_index: int
    starts: int
    iterations: int
    seed: int


def singular_search(
    B: BilinearMap, starts: int = 100, iters: int = 120, seed: int = 0
) -> SingularSearchResult:
    """Minimize |B(x,y)| over S^{a-1} x S^{b-1}.

    All starts run as one vectorized batch; steps are per-start adaptive
    (grow on improvement, halve otherwise), and the result is merged by
    (value, start index), so the outcome is reproducible.
    """
    if starts < 1 or iters < 1:
        raise BilinearError("starts and iters must be positive")
    rng = np.random.default_rng(seed)
    T = B.structure_tensor()

    def normalize(M):
        return M / np.linalg.norm(M, axis=1, keepdims=True)

    X = normalize(rng.standard_normal((starts, B.a)))
    Y = normalize(rng.standard_normal((starts, B.b)))
    step = np.full(starts, 0.1)

    def value(X, Y):
        R = np.einsum("ni,nj,ijk->nk", X, Y, T)
        return R, np.einsum("nk,nk->n", R, R)

    R, val = value(X, Y)
    for _ in range(iters):
        gx = 2.0 * np.einsum("nk,nj,ijk->ni", R, Y, T)
        gy = 2.0 * np.einsum("nk,ni,ijk->nj", R, X, T)
        # tangential components only; radial parts are killed by projection
        gx -= np.einsum("ni,ni->n", gx, X)[:, None] * X
        gy -= np.einsum("nj,nj->n", gy, Y)[:, None] * Y
        Xc = normalize(X - step[:, None] * gx)
        Yc = normalize(Y - step[:, None] * gy)
        Rc, vc = value(Xc, Yc)
        better = vc < val
        X[better], Y[better] = Xc[better], Yc[better]
        R[better], val[better] = Rc[better], vc[better]
        step[better] *= 1.25
        step[~better] *= 0.5
    best = int(np.argmin(val))
    return SingularSearchResult(
        min_norm=float(np.sqrt(val[best])),
        x=tuple(map(float, X[best])),
        y=tuple(map(float, Y[best])),
        start_index=best,
        starts=starts,
        iterations=iters,
        seed=seed,
    )


# -- the minimal-dimension catalog ---------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """Best catalog dimension for a signature; an upper bound on the true
    minimum, which is unknown in general."""

    a: int
    b: int
    d: int
    construction: BilinearMap
    trace: tuple[str, ...]


def _fit_restriction(build, a, b, a_full, b_full):
    base = build()
    steps = [base.describe()]
    if (a, b) != (a_full, b_full):
        base = Restriction(base, range(1, a + 1), range(1, b + 1))
        steps.append(f"restrict(a=1..{a}, b=1..{b})")
    return base, steps


def _candidates(a: int, b: int):
    """Candidate constructions covering signature (a, b), cheapest parent
    per family; listed in deterministic tie-breaking priority order."""
    for alg in ("C", "H", "O"):
        bs = len(ALGEBRAS[alg])
        if a <= bs:
            k = math.ceil(b / bs)
            yield bs * k, lambda alg=alg, k=k: ScalarMultiplication(alg, k), (bs, bs * k)
    for alg in ("C", "H", "O"):
        bs = len(ALGEBRAS[alg])
        if b <= bs:
            k = math.ceil(a / bs)
            yield bs * k, lambda alg=alg, k=k: Swap(ScalarMultiplication(alg, k)), (bs * k, bs)
    for alg in ("R", "C", "H", "O"):
        bs = len(ALGEBRAS[alg])
        af, bf = bs * math.ceil(a / bs), bs * math.ceil(b / bs)
        yield af + bf - bs, lambda alg=alg, af=af, bf=bf: PolyMultiplication(alg, af, bf), (af, bf)


def catalog_min_dim(a: int, b: int) -> CatalogEntry:
    """Minimum codomain dimension over the construction catalog.

    Scans scalar multiplications (both orientations) and the four
    polynomial families, restricted down to (a, b) when the family needs
    padding.  The winner is the first candidate attaining the minimum in
    a fixed priority order, so traces are deterministic.
    """
    if a < 1 or b < 1:
        raise BilinearError("dimensions must be positive")
    best = None
    for d, build, full in _candidates(a, b):
        if best is None or d < best[0]:
            best = (d, build, full)
    d, build, (af, bf) = best
    construction, steps = _fit_restriction(build, a, b, af, bf)
    return CatalogEntry(a, b, d, construction, tuple(steps))


def catalog_constructions(amax: int, bmax: int):
    """All base-family instances with a <= amax and b <= bmax (used by the
    verification suite; restrictions inherit nonsingularity from parents)."""
    for alg, bs in (("R", 1), ("C", 2), ("H", 4), ("O", 8)):
        for a in range(bs, amax + 1, bs):
            for b in range(bs, bmax + 1, bs):
                yield PolyMultiplication(alg, a, b)
    for alg, bs in (("C", 2), ("H", 4), ("O", 8)):
        for k in range(1, bmax // bs + 1):
            if bs <= amax:
                yield ScalarMultiplication(alg, k)
        for k in range(1, amax // bs + 1):
            if bs <= bmax:
                yield Swap(ScalarMultiplication(alg, k))
