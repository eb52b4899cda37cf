"""Tensor norms by factorization search, completely bounded norm estimation
at matrix levels, and coefficient maps between structures.

Tensor elements u of E (x) F are stored as coefficient matrices U (m x n)
with respect to the structures' bases, u = sum_ij U_ij e_i (x) f_j. A
representation u = sum_i x_i (x) y_i of rank r is a factorization U = X Y^T.
The searches optimize over the gauge freedom (X, Y) -> (X Q, Y Q^{-T}); the
reported tensor-norm values are upper bounds (any representation is
feasible), while cb values are lower bounds (any witness tuple is feasible).

The quadratic factor norm ||sum_i x_i (x) conj(x_i)||^(1/2) has closed forms
per structure: the largest singular value of X for the self-dual Hilbertian
family, the Frobenius norm of X X^H raised to 1/2 for row/column, and a
direct Kronecker evaluation for concrete structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import (DimensionMismatchError, InfeasibleRankError, InputError,
                     UnsupportedStructureError)
from .params import SolverParams
from .spaces import (ColumnSpace, ConcreteSpace, IntersectionSpace, OHSpace,
                     OppositeSpace, RowSpace, SpaceStructure)

_RANK_TOL = 1e-12
_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class TensorElement:
    """u in E (x) F with coefficient matrix U of shape (dim E, dim F)."""

    E: SpaceStructure
    F: SpaceStructure
    U: np.ndarray

    def __post_init__(self):
        u = linalg.as_matrix(self.U)
        if u.shape != (self.E.n, self.F.n):
            raise DimensionMismatchError(
                f"coefficients {u.shape} do not match structures "
                f"({self.E.n}, {self.F.n})")
        object.__setattr__(self, "U", u)


@dataclass(frozen=True)
class Representation:
    """Factorization U = X Y^T; columns of X and Y are the factors."""

    X: np.ndarray
    Y: np.ndarray

    @property
    def rank(self) -> int:
        return self.X.shape[1]

    def residual(self, U: np.ndarray) -> float:
        return float(np.linalg.norm(U - self.X @ self.Y.T))

    def check(self, U: np.ndarray):
        if self.residual(U) > _RESIDUAL_TOL * max(1.0,
                                                  float(np.linalg.norm(U))):
            raise InputError("representation does not reproduce u")


@dataclass(frozen=True)
class CoeffMap:
    """Linear map between coefficient spaces of two structures."""

    domain: SpaceStructure
    codomain: SpaceStructure
    M: np.ndarray

    def __post_init__(self):
        m = linalg.as_matrix(self.M)
        if m.shape != (self.codomain.n, self.domain.n):
            raise DimensionMismatchError(
                f"matrix {m.shape} does not map dim {self.domain.n} "
                f"to dim {self.codomain.n}")
        object.__setattr__(self, "M", m)

    def apply_tuple(self, mats: np.ndarray) -> np.ndarray:
        return np.einsum("ji,ikl->jkl", self.M, mats)


# ---------------------------------------------------------------------------
# Quadratic factor norms  ||sum_i x_i (x) conj(x_i)||^(1/2)
# ---------------------------------------------------------------------------

def _oh_factor_norm(s: SpaceStructure, X: np.ndarray) -> float:
    """Minimal tensor norm of sum_i x_i (x) conj(x_i) in E (x) conj(E),
    square-rooted; columns of X are the coefficient vectors x_i."""
    if isinstance(s, OHSpace):
        return float(np.linalg.svd(X, compute_uv=False)[0])
    if isinstance(s, (RowSpace, ColumnSpace)):
        w = X @ X.conj().T
        return float(np.sqrt(np.linalg.norm(w)))
    if isinstance(s, ConcreteSpace):
        v = np.einsum("ji,jkl->ikl", X, s.basis)  # images of the columns
        m = np.einsum("ipr,iqs->pqrs", v, np.conj(v))
        d1, d2 = s.d1, s.d2
        val = np.linalg.svd(m.reshape(d1 * d1, d2 * d2),
                            compute_uv=False)[0]
        return float(np.sqrt(val))
    if isinstance(s, OppositeSpace):
        return _oh_factor_norm(_opposite_realization(s.inner), X)
    raise UnsupportedStructureError(
        f"no quadratic factor norm for {s!r}")


def _oh_factor_grad(s: SpaceStructure, X: np.ndarray):
    """Value and subgradient (Re pairing) of the quadratic factor norm."""
    if isinstance(s, OHSpace):
        u, sv, vh = np.linalg.svd(X)
        return float(sv[0]), np.outer(u[:, 0], vh[0, :].conj())
    if isinstance(s, (RowSpace, ColumnSpace)):
        w = X @ X.conj().T
        nf = float(np.linalg.norm(w))
        val = float(np.sqrt(nf))
        if val == 0.0:
            return 0.0, np.zeros_like(X)
        return val, (w @ X) / (nf * val)
    if isinstance(s, ConcreteSpace):
        v = np.einsum("ji,jkl->ikl", X, s.basis)
        m = np.einsum("ipr,iqs->pqrs", v, np.conj(v))
        d1, d2 = s.d1, s.d2
        u, sv, vh = np.linalg.svd(m.reshape(d1 * d1, d2 * d2))
        val = float(np.sqrt(sv[0]))
        if val == 0.0:
            return 0.0, np.zeros_like(X)
        p = u[:, 0].reshape(d1, d1)
        rr = vh[0, :].conj().reshape(d2, d2)
        gv = np.einsum("pq,iqs,rs->ipr", p, v, rr.conj()) \
            + np.einsum("qp,iqs,sr->ipr", p.conj(), v, rr)
        gx = np.einsum("jkl,ikl->ji", np.conj(s.basis), gv)
        return val, gx / (2.0 * val)
    if isinstance(s, OppositeSpace):
        return _oh_factor_grad(_opposite_realization(s.inner), X)
    raise UnsupportedStructureError(f"no quadratic factor norm for {s!r}")


def _opposite_realization(s: SpaceStructure) -> SpaceStructure:
    if isinstance(s, RowSpace):
        return ColumnSpace(s.n)
    if isinstance(s, ColumnSpace):
        return RowSpace(s.n)
    if isinstance(s, OHSpace):
        return s
    if isinstance(s, ConcreteSpace):
        return ConcreteSpace(s.basis.transpose(0, 2, 1))
    if isinstance(s, OppositeSpace):
        return s.inner
    raise UnsupportedStructureError(f"no concrete opposite for {s!r}")


def _haagerup_factor_grad(s: SpaceStructure, X: np.ndarray, side: str):
    """Value/subgradient of the rectangular-level factor norm: the row of
    factors (x_1 ... x_r) at level (1, r) for side='row', or the column at
    level (r, 1) for side='col'. Rows of X are the per-basis coefficients."""
    n, r = X.shape
    if side == "row":
        mats = X.reshape(n, 1, r)
    else:
        mats = X.reshape(n, r, 1)
    val, g = s.level_norm_grad(mats)
    return val, g.reshape(n, r)


# ---------------------------------------------------------------------------
# Gauge search
# ---------------------------------------------------------------------------

def _base_factorization(U: np.ndarray, r: int):
    u, sv, vh = np.linalg.svd(U)
    rank = int(np.sum(sv > _RANK_TOL * max(sv[0], 1e-300)))
    if r < rank:
        raise InfeasibleRankError(f"rank {r} below coefficient rank {rank}")
    root = np.sqrt(sv[:r])
    x0 = u[:, :r] * root[None, :]
    y0 = vh[:r, :].conj().T * root[None, :]
    return x0, np.conj(y0), rank


def _lower_tri_params(r: int):
    idx = np.tril_indices(r, k=-1)
    return idx


def _params_to_l(diag_log: np.ndarray, low: np.ndarray, r: int,
                 idx) -> np.ndarray:
    l = np.zeros((r, r), dtype=np.complex128)
    l[idx] = low
    l[np.diag_indices(r)] = np.exp(diag_log)
    return l


def _gauge_search(x0: np.ndarray, y0: np.ndarray,
                  fx_grad, fy_grad,
                  solver: SolverParams,
                  extra_reps: Sequence[Representation] = ()):
    """Minimize fx(X0 Q) * fy(Y0 Q^{-T}) over invertible gauges Q.

    The gauge is parameterized by its Cholesky-type lower triangular factor
    (unitary right factors leave both factor norms invariant), alternating
    analytic-gradient descent steps with a closed-form balancing rescale.
    Every evaluated gauge yields a feasible representation, so the running
    minimum is a valid upper bound. Extra representations are evaluated
    directly and participate in the minimum."""
    r = x0.shape[1]
    rng = np.random.default_rng(solver.seed)
    idx = _lower_tri_params(r)

    def objective(q: np.ndarray):
        qinvt = np.linalg.inv(q).T
        x, y = x0 @ q, y0 @ qinvt
        vx, gx = fx_grad(x)
        vy, gy = fy_grad(y)
        if vx <= 0.0 or vy <= 0.0:
            return 0.0, x, y, None
        # gradient wrt Q of log(fx) + log(fy)
        g1 = x0.conj().T @ gx / vx
        b = qinvt @ gy.conj().T @ y0 @ qinvt
        g2 = -np.conj(b) / vy
        grad = g1 + g2
        # project on the lower-triangular tangent (real diagonal)
        grad = np.tril(grad)
        di = np.diag_indices(r)
        grad[di] = grad[di].real
        return vx * vy, x, y, grad

    best_val, best_xy = np.inf, None
    for rep in extra_reps:
        vx, _ = fx_grad(rep.X)
        vy, _ = fy_grad(rep.Y)
        if vx * vy < best_val:
            best_val, best_xy = vx * vy, (rep.X, rep.Y)

    inits = [np.eye(r, dtype=np.complex128)]
    while len(inits) < solver.restarts:
        d = 0.3 * rng.standard_normal(r)
        low = 0.3 * linalg.complex_gaussian(rng, len(idx[0]))
        inits.append(_params_to_l(d, low, r, idx))

    patience = max(8, solver.max_iter // 5)
    for q0 in inits:
        q = q0.copy()
        stall = 0
        local_best = np.inf
        for t in range(solver.max_iter):
            val, x, y, grad = objective(q)
            if val <= 0.0:
                break
            if val < best_val:
                best_val, best_xy = val, (x, y)
            if val < local_best * (1 - 1e-9):
                local_best, stall = val, 0
            else:
                stall += 1
                if stall > patience:
                    break
            if grad is None:
                break
            gn = float(np.linalg.norm(grad))
            if gn < 1e-14:
                break
            step = 0.25 * (0.02 ** (t / max(1, solver.max_iter - 1)))
            q_new = q - step * grad / gn
            # keep the diagonal positive
            di = np.diag_indices(r)
            q_new[di] = np.maximum(q_new[di].real, 1e-8)
            q = np.tril(q_new)
            # balancing rescale: equalize the two factor norms
            vx, _ = fx_grad(x0 @ q)
            vy, _ = fy_grad(y0 @ np.linalg.inv(q).T)
            if vx > 0 and vy > 0:
                q = q / np.sqrt(vx / vy)
    return best_val, best_xy


def _tensor_norm_ub(t: TensorElement, fx_grad, fy_grad,
                    r: Optional[int], solver: Optional[SolverParams],
                    extra_seeds: Sequence[Representation]):
    if solver is None:
        solver = SolverParams(restarts=20, max_iter=60)
    x0, y0, rank = _base_factorization(t.U, r if r is not None else
                                       _numeric_rank(t.U))
    for rep in extra_seeds:
        rep.check(t.U)
    val, (x, y) = _gauge_search(x0, y0, fx_grad, fy_grad, solver,
                                extra_seeds)
    rep = Representation(x, y)
    rep.check(t.U)
    return val, rep


def _numeric_rank(U: np.ndarray) -> int:
    sv = np.linalg.svd(U, compute_uv=False)
    return max(1, int(np.sum(sv > _RANK_TOL * max(sv[0], 1e-300))))


def oh_tensor_norm_ub(t: TensorElement, r: Optional[int] = None,
                      solver: Optional[SolverParams] = None,
                      extra_seeds: Sequence[Representation] = ()):
    """Upper bound on the quadratic tensor norm

        inf ||sum x_i (x) conj(x_i)||^(1/2) ||sum y_i (x) conj(y_i)||^(1/2)

    over representations u = sum x_i (x) y_i; returns (value, witness
    representation). The default rank is the rank of the coefficients."""
    return _tensor_norm_ub(
        t, lambda X: _oh_factor_grad(t.E, X),
        lambda Y: _oh_factor_grad(t.F, Y), r, solver, extra_seeds)


def haagerup_norm_ub(t: TensorElement, r: Optional[int] = None,
                     solver: Optional[SolverParams] = None,
                     extra_seeds: Sequence[Representation] = ()):
    """Upper bound on the row-times-column tensor norm: the level-(1, r)
    norm of the factor row in E times the level-(r, 1) norm of the factor
    column in F, minimized over representations."""
    return _tensor_norm_ub(
        t, lambda X: _haagerup_factor_grad(t.E, X, "row"),
        lambda Y: _haagerup_factor_grad(t.F, Y, "col"), r, solver,
        extra_seeds)


# ---------------------------------------------------------------------------
# Completely bounded norm estimation
# ---------------------------------------------------------------------------

def _ratio_ascent(cmap: CoeffMap, k: int, seeds: Sequence[np.ndarray],
                  solver: SolverParams) -> tuple[float, np.ndarray]:
    """Maximize N_codomain((M a)) / N_domain(a) over level-k tuples by
    normalized log-ratio ascent from the given seeds plus random restarts.
    Every evaluated ratio is feasible, so the running max is a valid lower
    bound."""
    rng = np.random.default_rng(solver.seed)
    nd = cmap.domain.n
    starts = [s.copy() for s in seeds]
    while len(starts) < len(seeds) + solver.restarts:
        starts.append(linalg.complex_gaussian(rng, (nd, k, k)))

    best, best_a = 0.0, None
    for a0 in starts:
        a = a0.copy()
        na = cmap.domain.level_norm(a)
        if na <= 0.0:
            continue
        a = a / na
        for t in range(solver.max_iter):
            vd, gd = cmap.domain.level_norm_grad(a)
            vb, gb = cmap.codomain.level_norm_grad(cmap.apply_tuple(a))
            if vd <= 0.0:
                break
            ratio = vb / vd
            if ratio > best:
                best, best_a = ratio, a.copy()
            if vb <= 0.0:
                break
            gnum = np.einsum("ji,jkl->ikl", np.conj(cmap.M), gb)
            g = gnum / vb - gd / vd
            gn = float(np.linalg.norm(g))
            if gn < 1e-12:
                break
            step = 0.5 * (0.02 ** (t / max(1, solver.max_iter - 1)))
            a = a + step * g / gn
            na = cmap.domain.level_norm(a)
            if na <= 0.0:
                break
            a = a / na
    return best, best_a


def _embed_block(a: np.ndarray, k: int) -> np.ndarray:
    """Pad a level-j witness tuple to level k with zero blocks."""
    n, j, _ = a.shape
    out = np.zeros((n, k, k), dtype=np.complex128)
    out[:, :j, :j] = a
    return out


def cb_level_lower(cmap: CoeffMap, k: int,
                   solver: Optional[SolverParams] = None,
                   return_witness: bool = False):
    """Lower bound on the completely bounded norm of the map: the largest
    found ratio of level-k norms. Nondecreasing in k by construction: the
    search is seeded with the best lower-level witness embedded block-
    diagonally (which preserves the level norms of this library's closed
    forms), so each level starts from the previous level's value."""
    if k < 1:
        raise InputError("level must be >= 1")
    if solver is None:
        solver = SolverParams(max_iter=150, restarts=8)
    # level (1, 1): exact by SVD when both scalar-level norms are Euclidean
    if cmap.domain.level1_euclidean and cmap.codomain.level1_euclidean:
        _, sv, vh = np.linalg.svd(cmap.M)
        best = float(sv[0])
        witness = vh[0, :].conj().reshape(cmap.domain.n, 1, 1)
    else:
        best, witness = _ratio_ascent(cmap, 1, [], solver)
    for level in range(2, k + 1):
        seeds = [_embed_block(witness, level)] if witness is not None else []
        val, w = _ratio_ascent(cmap, level, seeds, solver)
        if val >= best and w is not None:
            best, witness = val, w
    if return_witness:
        return best, witness
    return best


def cb_norm_oh_exact(cmap: CoeffMap) -> float:
    """Exact cb norm for maps between the self-dual Hilbertian structures:
    every bounded map is automatically completely bounded with cb norm equal
    to the operator norm of its coefficient matrix."""
    if not (isinstance(cmap.domain, OHSpace)
            and isinstance(cmap.codomain, OHSpace)):
        raise UnsupportedStructureError(
            "exact cb norm requires OH domain and codomain")
    return linalg.operator_norm(cmap.M)


# ---------------------------------------------------------------------------
# The multiplication map and projection constants
# ---------------------------------------------------------------------------

def phi_map(t: TensorElement) -> CoeffMap:
    """The linear map a -> sum U_(ij),(kl) e_ij a e_kl on the matrix algebra,
    for u in M_d (x) M_d given in the row-major unit basis; e_ij a e_kl =
    a_jk e_il, so the coefficient matrix acts by Phi[(il),(jk)] = U[(ij),(kl)]."""
    if not (isinstance(t.E, ConcreteSpace) and isinstance(t.F, ConcreteSpace)):
        raise UnsupportedStructureError("phi_map needs matrix-unit structures")
    d = int(round(np.sqrt(t.E.n)))
    if d * d != t.E.n or t.E.n != t.F.n:
        raise DimensionMismatchError("phi_map needs square matrix algebras")
    u4 = t.U.reshape(d, d, d, d)           # indices (i, j, k, l)
    phi = u4.transpose(0, 3, 1, 2).reshape(d * d, d * d)  # (il) x (jk)
    return CoeffMap(domain=t.E, codomain=t.F, M=phi)


def transpose_tensor(t: TensorElement) -> TensorElement:
    """Apply the transpose to both legs: e_ij (x) e_kl -> e_ji (x) e_lk."""
    d = int(round(np.sqrt(t.E.n)))
    u4 = t.U.reshape(d, d, d, d)
    ut = u4.transpose(1, 0, 3, 2).reshape(d * d, d * d)
    return TensorElement(t.E, t.F, ut)


def row_column_constant(p: CoeffMap, samples: int = 50,
                        solver: Optional[SolverParams] = None,
                        tuple_len: Optional[int] = None):
    """Lower bounds (C_row, C_col) for the smallest constants in

        ||sum P(x_i) P(x_i)^*|| <= C_row^2 ||sum x_i x_i^*||
        ||sum P(x_i)^* P(x_i)|| <= C_col^2 ||sum x_i^* x_i||

    found by sampling tuples and ascending the norm ratios."""
    if solver is None:
        solver = SolverParams(max_iter=120, restarts=6)
    if not isinstance(p.domain, ConcreteSpace):
        raise UnsupportedStructureError("projection constants need a "
                                        "matrix-algebra structure")
    d = p.domain.d1
    n_coeff = p.domain.n
    count = tuple_len if tuple_len is not None else min(n_coeff, 4)
    rng = np.random.default_rng(solver.seed)

    # structured seeds: rows/columns of matrix units, frequent extremizers
    # of projection-constant ratios
    structured = []
    for i in range(d):
        row = np.zeros((count, d, d), dtype=np.complex128)
        col = np.zeros((count, d, d), dtype=np.complex128)
        for j in range(min(count, d)):
            row[j, i, j] = 1.0
            col[j, j, i] = 1.0
        structured.extend([row, col])

    out = []
    for side_space in (RowSpace(count), ColumnSpace(count)):
        best = 0.0
        # coefficient tuples (x_1, ..., x_count) of d x d matrices, encoded
        # as a (count, d, d) array; P acts entrywise through coefficients
        def ratio_and_grad(xs):
            imgs = np.einsum("qp,ip->iq", p.M,
                             xs.reshape(count, -1)).reshape(count, d, d)
            vn, gn_ = side_space.level_norm_grad(imgs)
            vd, gd_ = side_space.level_norm_grad(xs)
            return vn, vd, gn_, gd_

        starts = structured + [linalg.complex_gaussian(rng, (count, d, d))
                               for _ in range(samples)]
        for xs in starts:
            vd0 = side_space.level_norm(xs)
            if vd0 <= 0:
                continue
            xs = xs / vd0
            for t in range(solver.max_iter):
                vn, vd, gn_, gd_ = ratio_and_grad(xs)
                if vd <= 0:
                    break
                best = max(best, vn / vd)
                if vn <= 0:
                    break
                gup = np.einsum("qp,iq->ip", np.conj(p.M),
                                gn_.reshape(count, -1)).reshape(count, d, d)
                g = gup / vn - gd_ / vd
                gnorm = float(np.linalg.norm(g))
                if gnorm < 1e-12:
                    break
                step = 0.4 * (0.02 ** (t / max(1, solver.max_iter - 1)))
                xs = xs + step * g / gnorm
                nrm = side_space.level_norm(xs)
                if nrm <= 0:
                    break
                xs = xs / nrm
        out.append(best)
    return out[0], out[1]
