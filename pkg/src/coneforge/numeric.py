"""Floating-point spectral analysis of commutative metrized algebras.

The exact layer answers identity questions; this module answers
spectral ones: locating idempotents, reading off eigenvalue
multiplicities of their multiplication operators, building the
mutation product on the small eigenspaces, and hunting square-zero
elements.  Everything runs in coordinates that are orthonormal for
the metric, so multiplication operators are honest symmetric matrices
and numpy.linalg.eigh applies.  Requires a positive definite metric.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactlinalg as xl
from .algebra import Algebra, check_metrized
from .scalars import Scalar

__all__ = [
    "PeirceData",
    "MutationReport",
    "orthonormal_frame",
    "structure_tensor",
    "find_idempotent",
    "peirce",
    "jordan_mutation",
    "nilpotent_search",
]

CANONICAL_EIGENVALUES = (-1.0, -0.5, 0.5, 1.0)


def _require_spectral(alg: Algebra):
    if not alg.commutative:
        raise ValueError("spectral analysis needs a commutative algebra")
    report = check_metrized(alg)
    if not report.passed:
        raise ValueError(f"algebra is not metrized (witness {report.witness})")
    if not xl.is_positive_definite(alg.metric):
        raise ValueError("spectral analysis needs a positive definite metric")


def orthonormal_frame(alg: Algebra) -> np.ndarray:
    """Columns form a basis orthonormal for the metric (frame F, F^T G F = I).

    Computed from an exact LDL factorization so the only rounding is the
    final square root of the positive pivots.
    """
    factored = xl.ldl(alg.metric)
    if factored is None:
        raise ValueError("spectral analysis needs a positive definite metric")
    lower, pivots = factored
    lf = np.array([[float(x) for x in row] for row in lower])
    df = np.array([float(x) for x in pivots])
    if np.any(df <= 0):
        raise ValueError("spectral analysis needs a positive definite metric")
    return np.linalg.solve(lf.T, np.diag(1.0 / np.sqrt(df)))


def structure_tensor(alg: Algebra, frame: np.ndarray | None = None) -> np.ndarray:
    """Fully symmetric array T with (x * y)_k = sum_ij T[i, j, k] x_i y_j
    in orthonormal coordinates."""
    _require_spectral(alg)
    n = alg.dim
    raw = np.zeros((n, n, n))
    for (i, j), column in alg.table.items():
        for k, coeff in column.items():
            raw[i, j, k] = float(coeff)
    if frame is None:
        frame = orthonormal_frame(alg)
    inv = np.linalg.inv(frame)
    return np.einsum("ia,jb,ijk,mk->abm", frame, frame, raw, inv)


def _mul(tensor: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("ijk,i,j->k", tensor, x, y)


def _cubic_value(tensor: np.ndarray, x: np.ndarray) -> float:
    return float(np.einsum("ijk,i,j,k->", tensor, x, x, x)) / 6.0


def _ascend(tensor: np.ndarray, start: np.ndarray, iterations: int = 400) -> np.ndarray:
    """Projected gradient ascent of the cubic form on the unit sphere."""
    y = start / np.linalg.norm(start)
    step = 0.5
    value = _cubic_value(tensor, y)
    for _ in range(iterations):
        grad = 0.5 * _mul(tensor, y, y)
        tangent = grad - np.dot(grad, y) * y
        norm = np.linalg.norm(tangent)
        if norm < 1e-10:
            break
        candidate = y + step * tangent
        candidate /= np.linalg.norm(candidate)
        new_value = _cubic_value(tensor, candidate)
        if new_value <= value - 1e-15:
            step *= 0.5
            if step < 1e-12:
                break
            continue
        y, value = candidate, new_value
        step = min(step * 1.2, 1.0)
    return y


def _newton_idempotent(tensor: np.ndarray, c: np.ndarray, tol: float) -> np.ndarray | None:
    n = len(c)
    for _ in range(60):
        residual = _mul(tensor, c, c) - c
        if np.linalg.norm(residual) <= tol:
            return c
        # the Jacobian 2 L(c) - I is singular on the half eigenspace, so
        # take the least-squares step instead of solving
        jac = 2.0 * np.einsum("ijk,i->jk", tensor, c) - np.eye(n)
        delta = np.linalg.lstsq(jac, -residual, rcond=None)[0]
        if not np.all(np.isfinite(delta)):
            return None
        c = c + delta
        if np.linalg.norm(c) > 1e6:
            return None
    residual = _mul(tensor, c, c) - c
    return c if np.linalg.norm(residual) <= tol else None


def find_idempotent(
    alg: Algebra,
    restarts: int = 20,
    seed: int = 0,
    tol: float = 1e-10,
) -> list[tuple[np.ndarray, float]]:
    """Pairs (c, residual) of nonzero idempotents c * c = c.

    Each restart runs gradient ascent of the cubic on the unit sphere
    from a random direction, rescales the critical point, then polishes
    with Newton to residual <= tol.  Results are deduplicated to 1e-6
    and sorted deterministically; c is reported in original coordinates,
    the residual |c * c - c| in orthonormal ones.  An algebra whose
    cubic vanishes has no nonzero idempotent and yields the empty list.
    """
    _require_spectral(alg)
    frame = orthonormal_frame(alg)
    tensor = structure_tensor(alg, frame)
    rng = np.random.default_rng(seed)
    found: list[np.ndarray] = []
    for _ in range(restarts):
        direction = rng.standard_normal(alg.dim)
        if np.linalg.norm(direction) < 1e-12:
            continue
        z = _ascend(tensor, direction)
        mu = float(np.dot(_mul(tensor, z, z), z))
        if abs(mu) < 1e-8:
            continue
        polished = _newton_idempotent(tensor, z / mu, tol)
        if polished is None or np.linalg.norm(polished) < 1e-8:
            continue
        if all(np.linalg.norm(polished - other) > 1e-6 for other in found):
            found.append(polished)
    found.sort(key=lambda c: (round(np.linalg.norm(c), 9), tuple(np.round(c, 9))))
    return [
        (frame @ c, float(np.linalg.norm(_mul(tensor, c, c) - c))) for c in found
    ]


@dataclass
class PeirceData:
    """Spectral summary of one idempotent's multiplication operator."""

    idempotent: np.ndarray
    residual: float
    eigenvalues: list[tuple[float, int]]
    n1: int
    n2: int
    d: int | None
    idempotent_norm: float
    scaled: bool = False

    def multiplicity(self, value: float, tol: float = 1e-6) -> int:
        return sum(m for v, m in self.eigenvalues if abs(v - value) <= tol)


def _cluster(values: np.ndarray, tol: float = 1e-6) -> list[tuple[float, int]]:
    clusters: list[tuple[float, int]] = []
    for v in np.sort(values):
        if clusters and abs(v - clusters[-1][0]) <= tol:
            center, count = clusters[-1]
            clusters[-1] = ((center * count + v) / (count + 1), count + 1)
        else:
            clusters.append((float(v), 1))
    return [(float(c), m) for c, m in clusters]


def peirce(
    alg: Algebra,
    idempotent: np.ndarray | None = None,
    restarts: int = 20,
    seed: int = 0,
) -> PeirceData:
    """Eigenvalue decomposition of L(c) for an idempotent c.

    When no idempotent is supplied the first one found by
    find_idempotent is used.  Eigenvalues are clustered to 1e-6; a
    spectrum whose clusters sit away from {-1, -1/2, 1/2, 1} is
    reported with scaled=True rather than rejected.  n1 and n2 count
    the -1 and -1/2 multiplicities; d = (n2 - 2) / 3 when that is a
    nonnegative integer.
    """
    _require_spectral(alg)
    frame = orthonormal_frame(alg)
    tensor = structure_tensor(alg, frame)
    if idempotent is None:
        candidates = find_idempotent(alg, restarts=restarts, seed=seed)
        if not candidates:
            raise ValueError("no idempotent found")
        idempotent = candidates[0][0]
    c = np.linalg.solve(frame, np.asarray(idempotent, dtype=float))
    residual = float(np.linalg.norm(_mul(tensor, c, c) - c))
    operator = np.einsum("ijk,i->jk", tensor, c)
    values = np.linalg.eigvalsh(operator)
    clusters = _cluster(values)
    scaled = any(
        min(abs(center - t) for t in CANONICAL_EIGENVALUES) > 1e-6 and abs(center) > 1e-10
        for center, _ in clusters
    )
    n1 = sum(m for v, m in clusters if abs(v + 1.0) <= 1e-6)
    n2 = sum(m for v, m in clusters if abs(v + 0.5) <= 1e-6)
    d = (n2 - 2) // 3 if n2 >= 2 and (n2 - 2) % 3 == 0 else None
    norm = float(np.dot(c, c))
    return PeirceData(
        idempotent=np.asarray(idempotent, dtype=float),
        residual=residual,
        eigenvalues=clusters,
        n1=n1,
        n2=n2,
        d=d,
        idempotent_norm=norm,
        scaled=scaled,
    )


@dataclass
class MutationReport:
    """Outcome of building the mutation product on A(1) + A(-1/2)."""

    dim: int
    basis: np.ndarray = field(repr=False)
    tensor: np.ndarray = field(repr=False)
    closure_residual: float
    jordan_residual: float
    trace_form_rank: int

    @property
    def closed(self) -> bool:
        return self.closure_residual <= 1e-8

    @property
    def jordan(self) -> bool:
        return self.jordan_residual <= 1e-7

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("ijk,i,j->k", self.tensor, x, y)


def jordan_mutation(
    alg: Algebra,
    idempotent: np.ndarray | None = None,
    seed: int = 0,
    samples: int = 20,
) -> MutationReport:
    """Mutation x * y = x y / 2 + <x,c> y + <y,c> x - 2 <x y, c> c on the
    span of the eigenvalue-1 and eigenvalue-(-1/2) eigenspaces of L(c).

    Reports how far basis products leave the span, the worst Jordan
    identity residual over random sample pairs, and the rank of the
    trace form of the restricted product.
    """
    _require_spectral(alg)
    frame = orthonormal_frame(alg)
    tensor = structure_tensor(alg, frame)
    if idempotent is None:
        candidates = find_idempotent(alg, restarts=max(20, samples), seed=seed)
        if not candidates:
            raise ValueError("no idempotent found")
        idempotent = candidates[0][0]
    c = np.linalg.solve(frame, np.asarray(idempotent, dtype=float))
    operator = np.einsum("ijk,i->jk", tensor, c)
    values, vectors = np.linalg.eigh(operator)
    keep = [k for k, v in enumerate(values) if abs(v - 1.0) <= 1e-6 or abs(v + 0.5) <= 1e-6]
    basis = vectors[:, keep]
    m = basis.shape[1]

    def mutate(x, y):
        xy = _mul(tensor, x, y)
        return (
            0.5 * xy
            + np.dot(x, c) * y
            + np.dot(y, c) * x
            - 2.0 * np.dot(xy, c) * c
        )

    closure = 0.0
    mut = np.zeros((m, m, m))
    projector = basis @ basis.T
    for a in range(m):
        for b in range(a, m):
            product = mutate(basis[:, a], basis[:, b])
            inside = basis.T @ product
            closure = max(closure, float(np.linalg.norm(product - projector @ product)))
            mut[a, b, :] = inside
            mut[b, a, :] = inside

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = rng.standard_normal(m)
        y = rng.standard_normal(m)
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        xx = np.einsum("ijk,i,j->k", mut, x, x)
        xy = np.einsum("ijk,i,j->k", mut, x, y)
        lhs = np.einsum("ijk,i,j->k", mut, xx, xy)
        rhs = np.einsum("ijk,i,j->k", mut, np.einsum("ijk,i,j->k", mut, xx, y), x)
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))

    trace_gram = np.einsum("iak,jka->ij", mut, mut)
    rank = int(np.linalg.matrix_rank(trace_gram, tol=1e-8))
    return MutationReport(
        dim=m,
        basis=frame @ basis,
        tensor=mut,
        closure_residual=closure,
        jordan_residual=worst,
        trace_form_rank=rank,
    )


def nilpotent_search(
    alg: Algebra,
    restarts: int = 20,
    seed: int = 0,
    tol: float = 1e-8,
) -> list[np.ndarray]:
    """Unit vectors with x * x numerically zero, up to sign.

    Minimizes |x * x|^2 on the sphere by projected descent with a
    Gauss-Newton polish; keeps points whose square has norm <= tol.
    """
    _require_spectral(alg)
    frame = orthonormal_frame(alg)
    tensor = structure_tensor(alg, frame)
    rng = np.random.default_rng(seed)
    found: list[np.ndarray] = []
    for _ in range(restarts):
        x = rng.standard_normal(alg.dim)
        x /= np.linalg.norm(x)
        step = 0.25
        value = float(np.linalg.norm(_mul(tensor, x, x)) ** 2)
        for _ in range(400):
            square = _mul(tensor, x, x)
            grad = 4.0 * np.einsum("ijk,i,k->j", tensor, x, square)
            tangent = grad - np.dot(grad, x) * x
            if np.linalg.norm(tangent) < 1e-12:
                break
            candidate = x - step * tangent
            candidate /= np.linalg.norm(candidate)
            new_value = float(np.linalg.norm(_mul(tensor, candidate, candidate)) ** 2)
            if new_value >= value:
                step *= 0.5
                if step < 1e-13:
                    break
                continue
            x, value = candidate, new_value
            step = min(step * 1.2, 0.5)
        for _ in range(40):
            square = _mul(tensor, x, x)
            if np.linalg.norm(square) <= tol * 0.1:
                break
            jac = 2.0 * np.einsum("ijk,i->jk", tensor, x)
            delta = np.linalg.lstsq(jac, -square, rcond=None)[0]
            delta -= np.dot(delta, x) * x
            if np.linalg.norm(delta) > 1.0:
                delta /= np.linalg.norm(delta)
            moved = x + delta
            moved /= np.linalg.norm(moved)
            if np.linalg.norm(_mul(tensor, moved, moved)) >= np.linalg.norm(square):
                break
            x = moved
        if np.linalg.norm(_mul(tensor, x, x)) <= tol:
            if x[np.argmax(np.abs(x))] < 0:
                x = -x
            if all(np.linalg.norm(x - other) > 1e-6 for other in found):
                found.append(x)
    return [frame @ x for x in found]
