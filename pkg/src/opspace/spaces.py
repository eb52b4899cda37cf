"""Norm oracles for finite-dimensional operator space structures.

A structure of dimension n assigns to every matrix level (k, l) a norm on
n-tuples of k-by-l complex coefficient matrices; the tuple (a_1, ..., a_n)
stands for the element sum_i e_i (x) a_i over the structure's basis. Closed
forms are implemented for the concrete, row, column and quadratic (oh)
families. Opposite, intersection, sum and interpolated structures are
derived from their operands. An operator space is represented by its norm
oracle per level, never by a fixed embedding.

Every oracle also exposes a subgradient (for the real pairing
Re <g, d> = Re sum conj(g) * d) so the convex splitting and interpolation
solvers can consume it, and a vectorized batch evaluator used on boundary
grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import (DimensionMismatchError, InputError, ResourceLimitError,
                     UnsupportedStructureError)
from .params import SolverParams

# Desk-scale guard on tuple payloads.
MAX_TUPLE_ELEMENTS = 4096

_INDEP_TOL = 1e-10


# ---------------------------------------------------------------------------
# Matrix tuples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixTuple:
    """An ordered list of n complex k-by-l matrices, stored as an (n, k, l)
    array. Immutable after construction."""

    mats: np.ndarray

    def __post_init__(self):
        arr = np.array(self.mats, dtype=np.complex128)
        if arr.ndim != 3:
            raise InputError(f"expected an (n, k, l) array, got {arr.shape}")
        n, k, l = arr.shape
        if min(n, k, l) < 1:
            raise InputError("empty tuple")
        if n * k * l > MAX_TUPLE_ELEMENTS:
            raise ResourceLimitError(
                f"tuple holds {n * k * l} scalars (cap {MAX_TUPLE_ELEMENTS})")
        if not np.all(np.isfinite(arr)):
            raise InputError("tuple has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "mats", arr)

    @property
    def n(self) -> int:
        return self.mats.shape[0]

    @property
    def k(self) -> int:
        return self.mats.shape[1]

    @property
    def l(self) -> int:
        return self.mats.shape[2]

    @classmethod
    def from_mats(cls, mats: Sequence) -> "MatrixTuple":
        stacked = [linalg.as_matrix(m) for m in mats]
        shapes = {m.shape for m in stacked}
        if len(shapes) != 1:
            raise DimensionMismatchError("tuple matrices differ in shape")
        return cls(np.stack(stacked))

    @classmethod
    def random(cls, n: int, k: int, l: int,
               rng: np.random.Generator) -> "MatrixTuple":
        return cls(linalg.complex_gaussian(rng, (n, k, l)))

    def conj_tuple(self) -> "MatrixTuple":
        return MatrixTuple(np.conj(self.mats))

    def transpose_tuple(self) -> "MatrixTuple":
        return MatrixTuple(self.mats.transpose(0, 2, 1))

    def adjoint_tuple(self) -> "MatrixTuple":
        return MatrixTuple(np.conj(self.mats.transpose(0, 2, 1)))

    def flat(self) -> np.ndarray:
        return self.mats.ravel().copy()

    @classmethod
    def from_flat(cls, vec, n: int, k: int, l: int) -> "MatrixTuple":
        arr = np.asarray(vec, dtype=np.complex128)
        if arr.size != n * k * l:
            raise DimensionMismatchError("flat vector has wrong length")
        return cls(arr.reshape(n, k, l))


def _tuple_data(a) -> np.ndarray:
    """Accept a MatrixTuple or an (n, k, l) array-like."""
    if isinstance(a, MatrixTuple):
        return a.mats
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 3:
        raise InputError(f"expected an (n, k, l) tuple, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("tuple has non-finite entries")
    return arr


def _top_pair(m: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """Largest singular value with its left/right singular vectors."""
    u, s, vh = np.linalg.svd(m)
    return float(s[0]), u[:, 0], vh[0, :].conj()


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------

class SpaceStructure:
    """Base class: a per-level norm oracle of fixed dimension n."""

    n: int
    # True when the level-(1, 1) norm on scalar tuples is the Euclidean norm.
    level1_euclidean: bool = False

    def level_norm(self, a) -> float:
        return float(self.level_norms_batch(_tuple_data(a)[None])[0])

    def level_norms_batch(self, batch: np.ndarray) -> np.ndarray:
        """Norms of a (B, n, k, l) stack of tuples."""
        raise NotImplementedError

    def level_norm_grad(self, a) -> tuple[float, np.ndarray]:
        """Norm and a subgradient g with directional derivative
        Re sum conj(g) * d along the tuple direction d."""
        raise NotImplementedError

    def opposite(self) -> "SpaceStructure":
        return OppositeSpace(self)

    def _check_n(self, mats: np.ndarray):
        if mats.shape[-3] != self.n:
            raise DimensionMismatchError(
                f"tuple length {mats.shape[-3]} != structure dimension {self.n}")


class RowSpace(SpaceStructure):
    """Row Hilbert space: level norm is the operator norm of the block row
    [a_1 ... a_n], i.e. ||sum a_i a_i^*||^(1/2)."""

    level1_euclidean = True

    def __init__(self, n: int):
        if n < 1:
            raise InputError("dimension must be >= 1")
        self.n = int(n)

    def _block(self, batch: np.ndarray) -> np.ndarray:
        b, n, k, l = batch.shape
        return batch.transpose(0, 2, 1, 3).reshape(b, k, n * l)

    def level_norms_batch(self, batch):
        self._check_n(batch)
        return np.linalg.svd(self._block(batch), compute_uv=False)[..., 0]

    def level_norm_grad(self, a):
        mats = _tuple_data(a)
        self._check_n(mats)
        n, k, l = mats.shape
        s, u, v = _top_pair(self._block(mats[None])[0])
        g = np.einsum("p,iq->ipq", u, v.conj().reshape(n, l))
        return s, g

    def __repr__(self):
        return f"RowSpace({self.n})"


class ColumnSpace(SpaceStructure):
    """Column Hilbert space: operator norm of the block column, i.e.
    ||sum a_i^* a_i||^(1/2)."""

    level1_euclidean = True

    def __init__(self, n: int):
        if n < 1:
            raise InputError("dimension must be >= 1")
        self.n = int(n)

    def _block(self, batch: np.ndarray) -> np.ndarray:
        b, n, k, l = batch.shape
        return batch.reshape(b, n * k, l)

    def level_norms_batch(self, batch):
        self._check_n(batch)
        return np.linalg.svd(self._block(batch), compute_uv=False)[..., 0]

    def level_norm_grad(self, a):
        mats = _tuple_data(a)
        self._check_n(mats)
        n, k, l = mats.shape
        s, u, v = _top_pair(self._block(mats[None])[0])
        g = np.einsum("ip,q->ipq", u.reshape(n, k), v.conj())
        return s, g

    def __repr__(self):
        return f"ColumnSpace({self.n})"


class OHSpace(SpaceStructure):
    """Self-dual Hilbertian structure: level norm
    ||sum_i a_i (x) conj(a_i)||^(1/2)."""

    level1_euclidean = True

    def __init__(self, n: int):
        if n < 1:
            raise InputError("dimension must be >= 1")
        self.n = int(n)

    def _gram_block(self, batch: np.ndarray) -> np.ndarray:
        b, n, k, l = batch.shape
        if (k * k) * (l * l) > linalg.MAX_KRON_ELEMENTS:
            raise ResourceLimitError("level exceeds the Kronecker size cap")
        s = np.einsum("bipr,biqs->bpqrs", batch, np.conj(batch))
        return s.reshape(b, k * k, l * l)

    def level_norms_batch(self, batch):
        self._check_n(batch)
        vals = np.linalg.svd(self._gram_block(batch), compute_uv=False)[..., 0]
        return np.sqrt(vals)

    def level_norm_grad(self, a):
        mats = _tuple_data(a)
        self._check_n(mats)
        n, k, l = mats.shape
        s, u, v = _top_pair(self._gram_block(mats[None])[0])
        val = float(np.sqrt(s))
        if val <= 0.0:
            return 0.0, np.zeros_like(mats)
        p = u.reshape(k, k)
        r = v.reshape(l, l)
        # d||S|| along (d_i): Re u^H (sum kron(d_i, conj a_i) + kron(a_i, conj d_i)) v
        g = np.einsum("pq,iqs,rs->ipr", p, mats, r.conj()) \
            + np.einsum("qp,iqs,sr->ipr", p.conj(), mats, r)
        return val, g / (2.0 * val)

    def __repr__(self):
        return f"OHSpace({self.n})"


class ConcreteSpace(SpaceStructure):
    """Structure realized by a linearly independent family of d1-by-d2
    matrices; level norms are operator norms of sum_i kron(b_i, a_i)."""

    def __init__(self, basis):
        arr = np.asarray([linalg.as_matrix(b) for b in basis],
                         dtype=np.complex128)
        if arr.ndim != 3:
            raise InputError("basis must be a list of equal-shape matrices")
        n = arr.shape[0]
        flat = arr.reshape(n, -1)
        sv = np.linalg.svd(flat, compute_uv=False)
        if sv[-1] <= _INDEP_TOL * sv[0] or n > flat.shape[1]:
            raise InputError("basis is not linearly independent")
        self.basis = arr
        self.n = n

    @property
    def d1(self) -> int:
        return self.basis.shape[1]

    @property
    def d2(self) -> int:
        return self.basis.shape[2]

    def _assemble(self, batch: np.ndarray) -> np.ndarray:
        b, n, k, l = batch.shape
        if (self.d1 * k) * (self.d2 * l) > linalg.MAX_KRON_ELEMENTS:
            raise ResourceLimitError("level exceeds the Kronecker size cap")
        m = np.einsum("ipr,biqs->bpqrs", self.basis, batch)
        return m.reshape(b, self.d1 * k, self.d2 * l)

    def level_norms_batch(self, batch):
        self._check_n(batch)
        return np.linalg.svd(self._assemble(batch), compute_uv=False)[..., 0]

    def level_norm_grad(self, a):
        mats = _tuple_data(a)
        self._check_n(mats)
        n, k, l = mats.shape
        s, u, v = _top_pair(self._assemble(mats[None])[0])
        p = u.reshape(self.d1, k)
        r = v.reshape(self.d2, l)
        g = np.conj(np.einsum("pq,ipr,rs->iqs", p.conj(), self.basis, r))
        return s, g

    def __repr__(self):
        return f"ConcreteSpace(n={self.n}, {self.d1}x{self.d2})"


def row_units(n: int) -> ConcreteSpace:
    """Concrete realization of the row structure by 1-by-n unit rows."""
    basis = np.zeros((n, 1, n), dtype=np.complex128)
    for i in range(n):
        basis[i, 0, i] = 1.0
    return ConcreteSpace(basis)


def column_units(n: int) -> ConcreteSpace:
    """Concrete realization of the column structure by n-by-1 unit columns."""
    basis = np.zeros((n, n, 1), dtype=np.complex128)
    for i in range(n):
        basis[i, i, 0] = 1.0
    return ConcreteSpace(basis)


def matrix_units(n: int) -> ConcreteSpace:
    """Concrete realization of the full n-by-n matrix algebra, with the unit
    basis ordered row-major: index (i, j) -> i * n + j."""
    basis = np.zeros((n * n, n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            basis[i * n + j, i, j] = 1.0
    return ConcreteSpace(basis)


class OppositeSpace(SpaceStructure):
    """Transposed structure: the level norm of (a_i) is the inner level norm
    of the transposed tuple (a_i^T)."""

    def __init__(self, inner: SpaceStructure):
        self.inner = inner
        self.n = inner.n
        self.level1_euclidean = inner.level1_euclidean

    def opposite(self) -> SpaceStructure:
        return self.inner

    def level_norms_batch(self, batch):
        return self.inner.level_norms_batch(batch.transpose(0, 1, 3, 2))

    def level_norm_grad(self, a):
        mats = _tuple_data(a)
        val, g = self.inner.level_norm_grad(mats.transpose(0, 2, 1))
        return val, g.transpose(0, 2, 1)

    def __repr__(self):
        return f"OppositeSpace({self.inner!r})"


class IntersectionSpace(SpaceStructure):
    """Max of two structures on the same coefficient space."""

    def __init__(self, s0: SpaceStructure, s1: SpaceStructure):
        if s0.n != s1.n:
            raise DimensionMismatchError("operand dimensions differ")
        self.s0, self.s1 = s0, s1
        self.n = s0.n
        self.level1_euclidean = s0.level1_euclidean and s1.level1_euclidean

    def level_norms_batch(self, batch):
        return np.maximum(self.s0.level_norms_batch(batch),
                          self.s1.level_norms_batch(batch))

    def level_norm_grad(self, a):
        mats = _tuple_data(a)
        v0, g0 = self.s0.level_norm_grad(mats)
        v1, g1 = self.s1.level_norm_grad(mats)
        return (v0, g0) if v0 >= v1 else (v1, g1)

    def __repr__(self):
        return f"IntersectionSpace({self.s0!r}, {self.s1!r})"


@dataclass
class SumSplit:
    """Result of the infimal-convolution solve: value is an upper bound on
    inf N0(y) + N1(z) over splittings a = y + z."""

    value: float
    y: np.ndarray
    z: np.ndarray
    converged: bool
    rel_tol: float


def _sum_split(s0: SpaceStructure, s1: SpaceStructure, mats: np.ndarray,
               solver: SolverParams) -> SumSplit:
    """Projected subgradient descent on y for N0(y) + N1(a - y)."""
    rng = np.random.default_rng(solver.seed)
    scale = float(np.linalg.norm(mats))
    if scale == 0.0:
        return SumSplit(0.0, np.zeros_like(mats), np.zeros_like(mats),
                        True, 0.0)

    def objective(y):
        return s0.level_norm(y) + s1.level_norm(mats - y)

    inits = [mats.copy(), mats / 2.0, np.zeros_like(mats)]
    while len(inits) < max(solver.restarts, 3) + 2:
        inits.append(linalg.complex_gaussian(rng, mats.shape) * scale / 2.0)

    best_val, best_y = np.inf, None
    iters = max(solver.max_iter, 60)
    for y0 in inits:
        y = y0.copy()
        for t in range(iters):
            v0, g0 = s0.level_norm_grad(y)
            v1, g1 = s1.level_norm_grad(mats - y)
            f = v0 + v1
            if f < best_val:
                best_val, best_y = f, y.copy()
            g = g0 - g1
            gn = float(np.linalg.norm(g))
            if gn < 1e-14:
                break
            step = 0.4 * scale * (0.01 ** (t / max(1, iters - 1)))
            y = y - step * (g / gn)
    # stall-based convergence estimate: rerun tail improvement
    y = best_y
    tail_start = best_val
    for t in range(iters // 3):
        v0, g0 = s0.level_norm_grad(y)
        v1, g1 = s1.level_norm_grad(mats - y)
        f = v0 + v1
        if f < best_val:
            best_val, best_y = f, y.copy()
        g = g0 - g1
        gn = float(np.linalg.norm(g))
        if gn < 1e-14:
            break
        y = y - 0.02 * scale * (0.05 ** (t / max(1, iters // 3))) * (g / gn)
    rel = abs(tail_start - best_val) / max(best_val, 1e-30)
    return SumSplit(best_val, best_y, mats - best_y, rel < 1e-3, rel)


class SumSpace(SpaceStructure):
    """Infimal convolution of two structures: the level norm is the best
    found value of N0(y) + N1(a - y), an upper bound on the true infimum.

    This is the Banach-level quotient norm at each level; no claim is made
    that it matches a matrix-level operator space structure for k >= 2.
    """

    def __init__(self, s0: SpaceStructure, s1: SpaceStructure,
                 solver: Optional[SolverParams] = None):
        if s0.n != s1.n:
            raise DimensionMismatchError("operand dimensions differ")
        self.s0, self.s1 = s0, s1
        self.solver = solver if solver is not None else SolverParams()
        self.n = s0.n

    def split(self, a) -> SumSplit:
        return _sum_split(self.s0, self.s1, _tuple_data(a), self.solver)

    def level_norm(self, a) -> float:
        return self.split(a).value

    def level_norms_batch(self, batch):
        return np.array([self.level_norm(batch[i])
                         for i in range(batch.shape[0])])

    def __repr__(self):
        return f"SumSpace({self.s0!r}, {self.s1!r})"


class InterpolatedSpace(SpaceStructure):
    """Complex interpolation of two structures at parameter theta. Exposes
    certified bounds per level rather than a single number."""

    def __init__(self, s0: SpaceStructure, s1: SpaceStructure, theta: float,
                 solver: Optional[SolverParams] = None):
        if s0.n != s1.n:
            raise DimensionMismatchError("operand dimensions differ")
        if not (0.0 < theta < 1.0):
            raise InputError(f"theta={theta} outside (0, 1)")
        self.s0, self.s1 = s0, s1
        self.theta = float(theta)
        self.solver = solver if solver is not None else SolverParams()
        self.n = s0.n

    def level_bounds(self, a, with_lower: bool = True):
        """Certified NormBounds for the tuple's interpolated level norm."""
        from . import interp
        mats = _tuple_data(a)
        _, k, l = mats.shape
        cl = couple_level(self.s0, self.s1, k, l, with_duals=with_lower)
        return interp.interp_norm_bounds(cl, self.theta, mats.ravel(),
                                         self.solver,
                                         require_lower=with_lower)

    def level_norm(self, a) -> float:
        raise UnsupportedStructureError(
            "interpolated structures expose level_bounds, not a single norm")

    def level_norms_batch(self, batch):
        raise UnsupportedStructureError(
            "interpolated structures expose level_bounds, not a single norm")

    def __repr__(self):
        return (f"InterpolatedSpace({self.s0!r}, {self.s1!r}, "
                f"theta={self.theta})")


# ---------------------------------------------------------------------------
# Functional oracles
# ---------------------------------------------------------------------------

def row_level_norm(a) -> float:
    mats = _tuple_data(a)
    return RowSpace(mats.shape[0]).level_norm(mats)


def column_level_norm(a) -> float:
    mats = _tuple_data(a)
    return ColumnSpace(mats.shape[0]).level_norm(mats)


def oh_level_norm(a) -> float:
    mats = _tuple_data(a)
    return OHSpace(mats.shape[0]).level_norm(mats)


def min_tensor_level_norm(s: ConcreteSpace, a) -> float:
    if not isinstance(s, ConcreteSpace):
        raise UnsupportedStructureError(
            "min tensor evaluation needs a concrete structure")
    return s.level_norm(a)


def intersection_level_norm(s0: SpaceStructure, s1: SpaceStructure,
                            a) -> float:
    return IntersectionSpace(s0, s1).level_norm(a)


def sum_level_norm(s0: SpaceStructure, s1: SpaceStructure, a,
                   solver: Optional[SolverParams] = None) -> SumSplit:
    return SumSpace(s0, s1, solver).split(a)


def opposite(s: SpaceStructure) -> SpaceStructure:
    return s.opposite()


def opposite_level_norm(s: SpaceStructure, a) -> float:
    return s.opposite().level_norm(a)


def haagerup_cs_lhs(a, b) -> float:
    """Operator norm of sum_i a_i (x) conj(b_i) for same-length tuples; the
    operator Cauchy-Schwarz inequality bounds it by the product of the
    quadratic level norms of (a_i) and (b_i)."""
    am, bm = _tuple_data(a), _tuple_data(b)
    if am.shape[0] != bm.shape[0]:
        raise DimensionMismatchError("tuples differ in length")
    ka, la = am.shape[1:]
    kb, lb = bm.shape[1:]
    if (ka * kb) * (la * lb) > linalg.MAX_KRON_ELEMENTS:
        raise ResourceLimitError("level exceeds the Kronecker size cap")
    s = np.einsum("ipr,iqs->pqrs", am, np.conj(bm))
    return float(np.linalg.svd(s.reshape(ka * kb, la * lb),
                               compute_uv=False)[0])


# ---------------------------------------------------------------------------
# Closed-form duals (trace pairing <b, a> = sum_i tr(b_i^H a_i))
# ---------------------------------------------------------------------------

def _block_row(mats: np.ndarray) -> np.ndarray:
    n, k, l = mats.shape
    return mats.transpose(1, 0, 2).reshape(k, n * l)


def _block_col(mats: np.ndarray) -> np.ndarray:
    n, k, l = mats.shape
    return mats.reshape(n * k, l)


def dual_level_norm(s: SpaceStructure, b) -> float:
    """Banach dual of the level norm under the trace pairing, closed-form
    cases only. Row: trace norm of the block row; Column: trace norm of the
    block column; any Euclidean level-(1, 1) structure: Euclidean norm."""
    mats = _tuple_data(b)
    n, k, l = mats.shape
    if isinstance(s, RowSpace):
        return float(np.linalg.svd(_block_row(mats), compute_uv=False).sum())
    if isinstance(s, ColumnSpace):
        return float(np.linalg.svd(_block_col(mats), compute_uv=False).sum())
    if isinstance(s, OppositeSpace):
        return dual_level_norm(s.inner, mats.transpose(0, 2, 1))
    if (k, l) == (1, 1) and s.level1_euclidean:
        return float(np.linalg.norm(mats.ravel()))
    raise UnsupportedStructureError(
        f"no closed-form dual for {s!r} at level ({k}, {l})")


# ---------------------------------------------------------------------------
# Interpolation adapters: flat-vector oracles over a structure level
# ---------------------------------------------------------------------------

class LevelNormOracle:
    """Flat-vector view of a structure's level-(k, l) norm."""

    def __init__(self, structure: SpaceStructure, k: int, l: int):
        self.structure = structure
        self.n, self.k, self.l = structure.n, k, l
        self.dim = self.n * k * l

    def _mats(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x, dtype=np.complex128).reshape(
            self.n, self.k, self.l)

    def value(self, x) -> float:
        return self.structure.level_norm(self._mats(x))

    def values(self, xs) -> np.ndarray:
        arr = np.asarray(xs, dtype=np.complex128)
        batch = arr.reshape(arr.shape[0], self.n, self.k, self.l)
        return self.structure.level_norms_batch(batch)

    def subgrad(self, x):
        val, g = self.structure.level_norm_grad(self._mats(x))
        return val, g.ravel()


class _TraceDualOracle:
    """Trace norm of the block row (axis='row') or block column of the
    reshaped tuple; the dual of the corresponding level norm."""

    def __init__(self, n: int, k: int, l: int, axis: str):
        self.n, self.k, self.l = n, k, l
        self.axis = axis
        self.dim = n * k * l

    def _blocks(self, arr: np.ndarray) -> np.ndarray:
        b = arr.reshape(-1, self.n, self.k, self.l)
        if self.axis == "row":
            return b.transpose(0, 2, 1, 3).reshape(-1, self.k,
                                                   self.n * self.l)
        return b.reshape(-1, self.n * self.k, self.l)

    def value(self, x) -> float:
        m = self._blocks(np.asarray(x, dtype=np.complex128)[None])[0]
        return float(np.linalg.svd(m, compute_uv=False).sum())

    def values(self, xs) -> np.ndarray:
        ms = self._blocks(np.asarray(xs, dtype=np.complex128))
        return np.linalg.svd(ms, compute_uv=False).sum(axis=-1)

    def subgrad(self, x):
        m = self._blocks(np.asarray(x, dtype=np.complex128)[None])[0]
        u, sv, vh = np.linalg.svd(m, full_matrices=False)
        g = u @ vh
        if self.axis == "row":
            g = g.reshape(self.k, self.n, self.l).transpose(1, 0, 2)
        else:
            g = g.reshape(self.n, self.k, self.l)
        return float(sv.sum()), g.ravel()


class EuclideanOracle:
    def __init__(self, dim: int):
        self.dim = dim

    def value(self, x) -> float:
        return float(np.linalg.norm(x))

    def values(self, xs) -> np.ndarray:
        return np.linalg.norm(np.asarray(xs), axis=1)

    def subgrad(self, x):
        v = float(np.linalg.norm(x))
        if v == 0.0:
            return 0.0, np.zeros_like(np.asarray(x, dtype=np.complex128))
        return v, np.asarray(x, dtype=np.complex128) / v


def structure_oracle(s: SpaceStructure, k: int, l: int) -> LevelNormOracle:
    return LevelNormOracle(s, k, l)


def structure_dual_oracle(s: SpaceStructure, k: int, l: int):
    """Dual oracle with subgradients for the closed-form cases; raises
    UnsupportedStructureError otherwise."""
    if isinstance(s, RowSpace):
        return _TraceDualOracle(s.n, k, l, "row")
    if isinstance(s, ColumnSpace):
        return _TraceDualOracle(s.n, k, l, "col")
    if (k, l) == (1, 1) and s.level1_euclidean:
        return EuclideanOracle(s.n)
    raise UnsupportedStructureError(
        f"no closed-form dual for {s!r} at level ({k}, {l})")


def couple_level(s0: SpaceStructure, s1: SpaceStructure, k: int, l: int,
                 with_duals: bool = True):
    """Build an interpolation couple from two structures at one level."""
    from .interp import CoupleLevel
    if s0.n != s1.n:
        raise DimensionMismatchError("structure dimensions differ")
    d0 = d1 = None
    if with_duals:
        d0 = structure_dual_oracle(s0, k, l)
        d1 = structure_dual_oracle(s1, k, l)
    return CoupleLevel(n_total=s0.n * k * l,
                       N0=structure_oracle(s0, k, l),
                       N1=structure_oracle(s1, k, l),
                       D0=d0, D1=d1)
