"""Dictionary between metrized commutative algebras and cubic forms.

A metrized commutative algebra determines the cubic u(x) = h(x*x, x)/6,
and conversely a cubic form plus a metric determine structure constants
through t(i, j, k) = third partials of u, c(i, j, .) = G^-1 t(i, j, .).

The degree-5 operator computed by ``hsiang_operator`` is

    M(x) = ( h(x*x, x*x) tr L(x) - h(x*x, x*x*x) ) / 4,

an algebraic rewriting of the second order quantity whose vanishing
against (3/2) theta h(x,x) u characterizes the radial identity tested
in the analysis module.  No symbolic differentiation happens here;
everything is structure-constant arithmetic.
"""

from __future__ import annotations

from typing import Sequence

from . import exactlinalg as xl
from .algebra import Algebra, LinearMap, Report, check_metrized
from .polynomials import CubicForm, Polynomial
from .scalars import ONE, Scalar, ZERO

__all__ = [
    "algebra_from_cubic",
    "cubic_from_algebra",
    "gradient_hessian",
    "hsiang_operator",
    "cartan_munzner_check",
    "generic_vector",
    "poly_product",
    "poly_pairing",
    "trace_polynomial",
]

_SIXTH = ONE / Scalar(6)
_HALF = ONE / Scalar(2)
_QUARTER = ONE / Scalar(4)


def _require_commutative_metrized(alg: Algebra):
    if not alg.commutative:
        raise ValueError("algebra must be commutative")
    report = check_metrized(alg)
    if not report.passed:
        raise ValueError(f"algebra is not metrized (witness {report.witness})")


def cubic_from_algebra(alg: Algebra) -> CubicForm:
    """Cubic form u(x) = h(x*x, x)/6 of a commutative metrized algebra."""
    _require_commutative_metrized(alg)
    n = alg.dim
    out: dict[tuple, Scalar] = {}
    for i, j, k, coeff in alg.structure_entries():
        # h(e_i * e_j, e_l) through the metric column of k
        for l in range(n):
            g = alg.metric[k][l]
            if not g:
                continue
            exps = [0] * n
            exps[i] += 1
            exps[j] += 1
            exps[l] += 1
            key = tuple(exps)
            acc = out.get(key, ZERO) + coeff * g * _SIXTH
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return CubicForm(n, out)


def algebra_from_cubic(
    u: Polynomial, metric: Sequence[Sequence] | None = None, name: str = ""
) -> Algebra:
    """Commutative algebra whose cubic form is u, relative to the metric.

    Structure constants solve h(e_i * e_j, e_k) = d_i d_j d_k u exactly,
    so the result round-trips through cubic_from_algebra.
    """
    if not u.is_homogeneous(3):
        raise ValueError("cubic form must be homogeneous of degree 3")
    n = u.nvars
    if n < 1:
        raise ValueError("cubic form needs at least one variable")
    if metric is None:
        metric = xl.identity(n)
    # t[(i,j,k)] for sorted index triples: third partials of u
    t: dict[tuple[int, int, int], Scalar] = {}
    for exps, coeff in u.terms.items():
        indices = []
        factorial = 1
        for var, e in enumerate(exps):
            indices.extend([var] * e)
            for m in range(2, e + 1):
                factorial *= m
        t[tuple(indices)] = coeff * factorial
    ginv = None
    entries = []
    for i in range(n):
        for j in range(i, n):
            column = [t.get(tuple(sorted((i, j, k))), ZERO) for k in range(n)]
            if not any(column):
                continue
            if ginv is None:
                ginv = xl.inverse([[_as_scalar(x) for x in row] for row in metric])
            c = xl.mat_vec(ginv, column)
            for k, value in enumerate(c):
                if value:
                    entries.append((i, j, k, value))
    return Algebra(n, entries, metric=metric, commutative=True, name=name)


def _as_scalar(x) -> Scalar:
    return x if isinstance(x, Scalar) else Scalar(x)


def gradient_hessian(alg: Algebra, x: Sequence) -> tuple[list[Scalar], LinearMap]:
    """Partials vector D u(x) = G (x*x)/2 and Hessian matrix G L(x)."""
    _require_commutative_metrized(alg)
    square = alg.multiply(x, x)
    grad = [v * _HALF for v in xl.mat_vec(alg.metric, square)]
    hessian = xl.mat_mul(alg.metric, alg.mult_operator(x, "left").matrix)
    return grad, LinearMap(hessian)


def hsiang_operator(alg: Algebra, x: Sequence) -> Scalar:
    """Value of the degree-5 operator M at the point x."""
    _require_commutative_metrized(alg)
    square = alg.multiply(x, x)
    cube = alg.multiply(square, x)
    trace = ZERO
    for i, xi in enumerate(x):
        xi = _as_scalar(xi)
        if xi:
            trace = trace + xi * alg.trace_of_left(i)
    return (alg.h(square, square) * trace - alg.h(square, cube)) * _QUARTER


def cartan_munzner_check(u: Polynomial, constant) -> Report:
    """Does |Du|^2 equal constant * (sum x_i^2)^2 identically?

    The residual polynomial is reported; a nonzero residual yields its
    leading monomial as witness.
    """
    constant = _as_scalar(constant)
    n = u.nvars
    residual = Polynomial(n)
    for i in range(n):
        p = u.partial(i)
        residual = residual + p * p
    radius2 = Polynomial(n)
    for i in range(n):
        exps = [0] * n
        exps[i] = 2
        radius2 = radius2 + Polynomial(n, {tuple(exps): ONE})
    residual = residual - constant * (radius2 * radius2)
    passed = residual.is_zero
    details = {"constant": constant, "residual": str(residual)}
    witness = None if passed else residual.leading()[0]
    return Report("cartan-munzner", passed, details, witness)


# -- symbolic helpers shared with the analysis module ----------------------


def generic_vector(alg: Algebra, offset: int = 0, nvars: int | None = None) -> list[Polynomial]:
    """Vector of variables x_{offset+1} .. x_{offset+dim} as polynomials."""
    total = alg.dim + offset if nvars is None else nvars
    return [Polynomial.variable(total, offset + i) for i in range(alg.dim)]


def poly_product(alg: Algebra, p: list[Polynomial], q: list[Polynomial]) -> list[Polynomial]:
    """Product vector with polynomial entries, via the structure table."""
    nvars = p[0].nvars
    out: list[dict[tuple, Scalar]] = [{} for _ in range(alg.dim)]
    for (i, j), column in alg.table.items():
        pi, qj = p[i], q[j]
        if pi.is_zero or qj.is_zero:
            continue
        prod = pi * qj
        for k, coeff in column.items():
            acc = out[k]
            for exps, value in prod.terms.items():
                total = acc.get(exps, ZERO) + value * coeff
                if total:
                    acc[exps] = total
                else:
                    del acc[exps]
    result = []
    for acc in out:
        poly = Polynomial(nvars)
        poly.terms = acc
        result.append(poly)
    return result


def poly_pairing(alg: Algebra, p: list[Polynomial], q: list[Polynomial]) -> Polynomial:
    """Metric pairing h(p, q) with polynomial entries."""
    nvars = p[0].nvars
    total = Polynomial(nvars)
    n = alg.dim
    for k in range(n):
        if p[k].is_zero:
            continue
        combined = Polynomial(nvars)
        for l in range(n):
            g = alg.metric[k][l]
            if g and not q[l].is_zero:
                combined = combined + q[l] * g
        if not combined.is_zero:
            total = total + p[k] * combined
    return total


def trace_polynomial(alg: Algebra, offset: int = 0, nvars: int | None = None) -> Polynomial:
    """Linear polynomial trace L(x) in the generic coordinates."""
    total = alg.dim + offset if nvars is None else nvars
    out = Polynomial(total)
    for i in range(alg.dim):
        value = alg.trace_of_left(i)
        if value:
            exps = [0] * total
            exps[offset + i] = 1
            out = out + Polynomial(total, {tuple(exps): value})
    return out
