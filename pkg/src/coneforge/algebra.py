"""Finite-dimensional algebras with an invariant metric and involution.

An ``Algebra`` is a bilinear product on Q(sqrt 3)^n given by sparse
structure constants c[i][j][k] (so e_i * e_j = sum_k c[i][j][k] e_k),
together with a symmetric nondegenerate Gram matrix h and a linear
involution sigma (sigma^2 = id, identity when omitted).

The compatibility under test throughout this package is

    h(x * y, z) = h(x, z * sigma(y))    for all x, y, z,

which for identity sigma and a commutative product says the trilinear
form h(x * y, z) is symmetric in all three slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import exactlinalg as xl
from .scalars import ONE, Scalar, ZERO, scalar_format

__all__ = [
    "Algebra",
    "LinearMap",
    "Subspace",
    "Report",
    "check_metrized",
    "killing_form",
    "trace_form_twisted",
    "multilinearize",
    "find_unit",
    "is_exact",
]


def _scalarize(value) -> Scalar:
    return value if isinstance(value, Scalar) else Scalar(value)


@dataclass
class Report:
    """Outcome of a single verification pass."""

    check: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "pass": self.passed,
            "details": _jsonable(self.details),
            "witness": _jsonable(self.witness),
        }

    def __str__(self):
        head = "pass" if self.passed else "FAIL"
        tail = f" witness={self.witness}" if self.witness is not None else ""
        return f"[{head}] {self.check}{tail}"


def _jsonable(value):
    if isinstance(value, Scalar):
        return scalar_format(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return value


class LinearMap:
    """Square matrix over Q(sqrt 3) acting on column vectors."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence[Scalar]]):
        self.matrix = [list(row) for row in matrix]

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, v: Sequence[Scalar]) -> list[Scalar]:
        return xl.mat_vec(self.matrix, v)

    def compose(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(xl.mat_mul(self.matrix, other.matrix))

    __matmul__ = compose

    def transpose(self) -> "LinearMap":
        return LinearMap(xl.transpose(self.matrix))

    def trace(self) -> Scalar:
        return sum((self.matrix[i][i] for i in range(self.dim)), ZERO)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __repr__(self):
        return f"LinearMap({self.matrix!r})"


class Subspace:
    """Subspace of Q(sqrt 3)^n held as a reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence[Scalar]]):
        self.ambient_dim = ambient_dim
        rows = [[_scalarize(x) for x in v] for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        reduced, pivots = xl.rref(rows)
        self.basis = reduced
        self._pivots = pivots

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Scalar]) -> bool:
        return not any(self.reduce(v))

    def reduce(self, v: Sequence[Scalar]) -> list[Scalar]:
        """Residue of v after eliminating the basis directions."""
        w = [_scalarize(x) for x in v]
        for row, c in zip(self.basis, self._pivots):
            f = w[c]
            if f:
                w = [x - f * y for x, y in zip(w, row)]
        return w

    def orthogonal_complement(self, metric: xl.Matrix) -> "Subspace":
        """All w with h(b, w) = 0 for every basis vector b."""
        if not self.basis:
            return Subspace(self.ambient_dim, xl.identity(self.ambient_dim))
        rows = [xl.mat_vec(xl.transpose(metric), b) for b in self.basis]
        return Subspace(self.ambient_dim, xl.nullspace(rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


class Algebra:
    """Bilinear product with Gram matrix and involution on Q(sqrt 3)^n."""

    def __init__(
        self,
        dim: int,
        structure,
        metric: Sequence[Sequence] | None = None,
        involution: Sequence[Sequence] | None = None,
        commutative: bool = False,
        name: str = "",
    ):
        if dim < 1:
            raise ValueError("dimension must be at least 1")
        self.dim = dim
        self.commutative = commutative
        self.name = name
        self.table: dict[tuple[int, int], dict[int, Scalar]] = {}
        entries = structure.items() if isinstance(structure, dict) else structure
        for entry in entries:
            if isinstance(structure, dict):
                (i, j, k), coeff = entry
            else:
                i, j, k, coeff = entry
            coeff = _scalarize(coeff)
            if not coeff:
                continue
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise ValueError(f"structure index out of range: {(i, j, k)}")
            column = self.table.setdefault((i, j), {})
            column[k] = column.get(k, ZERO) + coeff
        for key, column in list(self.table.items()):
            clean = {k: c for k, c in column.items() if c}
            if clean:
                self.table[key] = clean
            else:
                del self.table[key]

        if commutative:
            self._mirror_commutative()

        if metric is None:
            metric = xl.identity(dim)
        self.metric = [[_scalarize(x) for x in row] for row in metric]
        if len(self.metric) != dim or any(len(r) != dim for r in self.metric):
            raise ValueError("metric must be a square matrix of the algebra dimension")
        if not xl.is_symmetric(self.metric):
            raise ValueError("metric must be symmetric")
        if not xl.determinant(self.metric):
            raise ValueError("metric must be nondegenerate")

        if involution is None:
            self.involution = None
        else:
            sigma = [[_scalarize(x) for x in row] for row in involution]
            if len(sigma) != dim or any(len(r) != dim for r in sigma):
                raise ValueError("involution must be a square matrix of the algebra dimension")
            if not xl.mat_eq(xl.mat_mul(sigma, sigma), xl.identity(dim)):
                raise ValueError("involution must square to the identity")
            self.involution = None if xl.mat_eq(sigma, xl.identity(dim)) else sigma

        self._left_cache: dict[int, LinearMap] = {}
        self._right_cache: dict[int, LinearMap] = {}
        self._metric_inverse: xl.Matrix | None = None
        self._metrized_report: Report | None = None

    def _mirror_commutative(self):
        for (i, j), column in list(self.table.items()):
            mirror = self.table.get((j, i))
            if mirror is None:
                if i != j:
                    self.table[(j, i)] = dict(column)
            elif mirror != column:
                raise ValueError(f"commutative flag but c[{i}][{j}] != c[{j}][{i}]")

    # -- basic queries ---------------------------------------------------

    def basis_vector(self, i: int) -> list[Scalar]:
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def structure_entries(self):
        for (i, j), column in sorted(self.table.items()):
            for k in sorted(column):
                yield i, j, k, column[k]

    @property
    def field_tag(self) -> str:
        for _, _, _, c in self.structure_entries():
            if c.b:
                return "Qr3"
        for row in self.metric:
            for c in row:
                if c.b:
                    return "Qr3"
        if self.involution:
            for row in self.involution:
                for c in row:
                    if c.b:
                        return "Qr3"
        return "Q"

    @property
    def has_involution(self) -> bool:
        return self.involution is not None

    def metric_inverse(self) -> xl.Matrix:
        if self._metric_inverse is None:
            self._metric_inverse = xl.inverse(self.metric)
        return self._metric_inverse

    # -- product and operators ---------------------------------------------

    def multiply(self, x: Sequence, y: Sequence) -> list[Scalar]:
        x = [_scalarize(v) for v in x]
        y = [_scalarize(v) for v in y]
        out = [ZERO] * self.dim
        for (i, j), column in self.table.items():
            f = x[i] * y[j]
            if not f:
                continue
            for k, coeff in column.items():
                out[k] = out[k] + f * coeff
        return out

    def mult_operator(self, x: Sequence, side: str = "left") -> LinearMap:
        x = [_scalarize(v) for v in x]
        rows = [[ZERO] * self.dim for _ in range(self.dim)]
        if side == "left":
            for (i, j), column in self.table.items():
                if x[i]:
                    for k, coeff in column.items():
                        rows[k][j] = rows[k][j] + x[i] * coeff
        elif side == "right":
            for (i, j), column in self.table.items():
                if x[j]:
                    for k, coeff in column.items():
                        rows[k][i] = rows[k][i] + x[j] * coeff
        else:
            raise ValueError("side must be 'left' or 'right'")
        return LinearMap(rows)

    def left_basis_operator(self, i: int) -> LinearMap:
        op = self._left_cache.get(i)
        if op is None:
            op = self.mult_operator(self.basis_vector(i), "left")
            self._left_cache[i] = op
        return op

    def right_basis_operator(self, i: int) -> LinearMap:
        op = self._right_cache.get(i)
        if op is None:
            op = self.mult_operator(self.basis_vector(i), "right")
            self._right_cache[i] = op
        return op

    def sigma(self, x: Sequence) -> list[Scalar]:
        x = [_scalarize(v) for v in x]
        if self.involution is None:
            return list(x)
        return xl.mat_vec(self.involution, x)

    def h(self, x: Sequence, y: Sequence) -> Scalar:
        x = [_scalarize(v) for v in x]
        y = [_scalarize(v) for v in y]
        return xl.dot(x, xl.mat_vec(self.metric, y))

    def square_norm(self, x: Sequence) -> Scalar:
        return self.h(x, x)

    def trace_of_left(self, i: int) -> Scalar:
        total = ZERO
        for j in range(self.dim):
            col = self.table.get((i, j))
            if col:
                total = total + col.get(j, ZERO)
        return total

    def rescaled(self, factor: Scalar, name: str | None = None) -> "Algebra":
        """Same metric and involution, product scaled by factor."""
        entries = [(i, j, k, factor * c) for i, j, k, c in self.structure_entries()]
        return Algebra(
            self.dim,
            entries,
            metric=self.metric,
            involution=self.involution,
            commutative=self.commutative,
            name=name if name is not None else self.name,
        )

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.table == other.table
            and self.metric == other.metric
            and (self.involution or None) == (other.involution or None)
            and self.commutative == other.commutative
        )

    def __repr__(self):
        tag = self.name or "?"
        return f"Algebra({tag}, dim={self.dim})"


# -- verification --------------------------------------------------------


def _invariance_witness(alg: Algebra, gram: xl.Matrix):
    """First (i, j, k) violating gram(e_i * e_j, e_k) = gram(e_i, e_k * sigma(e_j)).

    Returns None when the compatibility holds, together with the pair of
    exact values when it does not.
    """
    n = alg.dim
    sigma_basis = [alg.sigma(alg.basis_vector(j)) for j in range(n)]
    for j in range(n):
        right_j = alg.right_basis_operator(j)  # x -> x * e_j
        lhs = xl.mat_mul(xl.transpose(right_j.matrix), gram)
        twisted = alg.mult_operator(sigma_basis[j], "right").matrix
        rhs = xl.mat_mul(gram, twisted)
        if lhs == rhs:
            continue
        for i in range(n):
            for k in range(n):
                if lhs[i][k] != rhs[i][k]:
                    return (i, j, k), lhs[i][k], rhs[i][k]
    return None, None, None


def check_metrized(alg: Algebra) -> Report:
    """Compatibility of metric, product, and involution.

    Checks that sigma is an isometry of the metric and that the product
    satisfies h(x*y, z) = h(x, z*sigma(y)) on all basis triples.  For
    identity sigma on a commutative algebra this is full symmetry of the
    cubic form h(x*y, z).
    """
    if alg._metrized_report is not None:
        return alg._metrized_report
    details: dict = {}
    witness = None
    passed = True
    if alg.involution is not None:
        sig = alg.involution
        pulled = xl.mat_mul(xl.transpose(sig), xl.mat_mul(alg.metric, sig))
        if not xl.mat_eq(pulled, alg.metric):
            bad = next(
                (i, j)
                for i in range(alg.dim)
                for j in range(alg.dim)
                if pulled[i][j] != alg.metric[i][j]
            )
            report = Report(
                "metrized",
                False,
                {
                    "condition": "involution must be an isometry",
                    "lhs": pulled[bad[0]][bad[1]],
                    "rhs": alg.metric[bad[0]][bad[1]],
                },
                witness=bad,
            )
            alg._metrized_report = report
            return report
    triple, lhs, rhs = _invariance_witness(alg, alg.metric)
    if triple is not None:
        passed = False
        witness = triple
        details = {
            "condition": "h(x*y, z) = h(x, z*sigma(y))",
            "lhs": lhs,
            "rhs": rhs,
        }
    report = Report("metrized", passed, details, witness)
    alg._metrized_report = report
    return report


def killing_form(alg: Algebra) -> tuple[xl.Matrix, bool, bool]:
    """Gram matrix of kappa(x, y) = trace L(x) L(y), with flags.

    Returns (matrix, invariant, nondegenerate) where invariance means
    kappa satisfies the same compatibility as the metric in
    check_metrized (sigma-twisted when an involution is present).
    """
    n = alg.dim
    ops = [alg.left_basis_operator(i).matrix for i in range(n)]
    kappa = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = _trace_product(ops[i], ops[j])
            kappa[i][j] = value
            kappa[j][i] = value
    triple, _, _ = _invariance_witness(alg, kappa)
    invariant = triple is None
    nondegenerate = bool(xl.determinant(kappa))
    return kappa, invariant, nondegenerate


def _trace_product(a: xl.Matrix, b: xl.Matrix) -> Scalar:
    total = ZERO
    n = len(a)
    for i in range(n):
        row = a[i]
        for j in range(n):
            if row[j] and b[j][i]:
                total = total + row[j] * b[j][i]
    return total


def trace_form_twisted(alg: Algebra) -> xl.Matrix:
    """Symmetrized Gram matrix of (x, y) -> trace L(x) L(sigma(y))."""
    n = alg.dim
    ops = [alg.left_basis_operator(i).matrix for i in range(n)]
    sig_ops = []
    for j in range(n):
        sj = alg.sigma(alg.basis_vector(j))
        mat = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            if sj[i]:
                for r in range(n):
                    for c in range(n):
                        if ops[i][r][c]:
                            mat[r][c] = mat[r][c] + sj[i] * ops[i][r][c]
        sig_ops.append(mat)
    q = [[ZERO] * n for _ in range(n)]
    half = Scalar(1) / Scalar(2)
    for i in range(n):
        for j in range(i, n):
            value = (_trace_product(ops[i], sig_ops[j]) + _trace_product(ops[j], sig_ops[i])) * half
            q[i][j] = value
            q[j][i] = value
    return q


def multilinearize(func: Callable, args: Sequence[Sequence[Scalar]]):
    """Full polarization of a homogeneous degree-m map at m arguments.

    T(x_1, ..., x_m) = (1/m!) sum over nonempty S of (-1)^(m-|S|) F(sum_S x_i).
    Works for scalar-valued and vector-valued F.
    """
    m = len(args)
    if m == 0:
        raise ValueError("at least one argument required")
    n = len(args[0])
    factorial = 1
    for i in range(2, m + 1):
        factorial *= i
    scale = ONE / Scalar(factorial)
    total = None
    for mask in range(1, 1 << m):
        point = [ZERO] * n
        bits = 0
        for t in range(m):
            if mask >> t & 1:
                bits += 1
                point = [p + _scalarize(a) for p, a in zip(point, args[t])]
        value = func(point)
        sign = 1 if (m - bits) % 2 == 0 else -1
        if isinstance(value, (list, tuple)):
            value = [scale * _scalarize(v) for v in value]
            if sign < 0:
                value = [-v for v in value]
            if total is None:
                total = value
            else:
                total = [a + b for a, b in zip(total, value)]
        else:
            value = scale * _scalarize(value)
            if sign < 0:
                value = -value
            total = value if total is None else total + value
    return total


def find_unit(alg: Algebra) -> list[Scalar] | None:
    """Two-sided unit element, or None."""
    n = alg.dim
    solver = xl.IncrementalSolver(n)
    sides = ("left",) if alg.commutative else ("left", "right")
    try:
        for side in sides:
            for j in range(n):
                for k in range(n):
                    row = [ZERO] * n
                    for i in range(n):
                        key = (i, j) if side == "left" else (j, i)
                        column = alg.table.get(key)
                        if column:
                            c = column.get(k)
                            if c:
                                row[i] = row[i] + c
                    solver.add_row(row, ONE if j == k else ZERO)
    except xl.InconsistentSystem:
        return None
    e = solver.solution()
    left = alg.mult_operator(e, "left")
    if left.matrix != xl.identity(n):
        return None
    if not alg.commutative:
        right = alg.mult_operator(e, "right")
        if right.matrix != xl.identity(n):
            return None
    return e


def is_exact(alg: Algebra) -> bool:
    """True when every left multiplication is trace free."""
    return all(not alg.trace_of_left(i) for i in range(alg.dim))
