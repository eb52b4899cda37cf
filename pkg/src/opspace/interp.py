"""Complex interpolation engine for compatible couples of norms on a common
finite-dimensional complex coefficient space.

The interpolated norm at parameter theta is the infimum, over bounded
analytic functions f on the unit strip with f(theta) = x, of the larger of
the two boundary-line suprema measured in the respective endpoint norms.

Upper bounds: the strip is mapped conformally onto the unit disk with theta
going to the center, so the two boundary lines become complementary circle
arcs whose normalized lengths are the harmonic measures 1-theta and theta.
Candidate functions are polynomials in the disk variable with the constant
coefficient pinned to x; the maximum of the labeled endpoint norms over a
boundary grid is convex in the remaining coefficients and is minimized by
subgradient descent with Polyak-style steps and restarts. The best family
member is then re-evaluated densely along the boundary (scan plus local
refinement, inflated by the trigonometric-polynomial overshoot factor), so
the reported upper bound is a true boundary supremum of an admissible
function. A scalar-exponential witness x * r**(z - theta), whose boundary
suprema are exact, is always taken into account; it guarantees the reported
value never exceeds N0(x)**(1-theta) * N1(x)**theta.

Lower bounds: for any functional xi, |<xi, x>| divided by an upper bound on
the interpolated dual norm of xi is a valid lower bound (bilinear pairing
<xi, x> = sum_i xi_i x_i). Candidates come from endpoint subgradients at x,
the boundary subgradient of the best upper witness, and random restarts;
each candidate's dual norm is upper-bounded by the same machinery run on
the dual couple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, InputError, \
    UnsupportedStructureError
from .params import SolverParams

_SANDWICH_TOL = 1e-12


# ---------------------------------------------------------------------------
# Boundary geometry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryGrid:
    """Labeled boundary grid: points w on the unit circle, label 1 on the arc
    of harmonic measure theta (image of the right strip line), label 0 on the
    complementary arc."""

    theta: float
    size: int
    angles: np.ndarray
    w: np.ndarray
    labels: np.ndarray
    spacing: tuple[float, float]  # angular spacing per label (0, 1)

    def strip_points(self) -> np.ndarray:
        """Pull the grid back to the strip boundary (Re z = label)."""
        return disk_to_strip(self.w, self.theta)


def strip_to_disk(z, theta: float):
    """Conformal map of the unit strip onto the disk sending theta to 0."""
    w0 = np.exp(1j * np.pi * theta)
    e = np.exp(1j * np.pi * np.asarray(z, dtype=np.complex128))
    return (e - w0) / (e - np.conj(w0))


def disk_to_strip(w, theta: float):
    """Inverse of strip_to_disk; the real part is wrapped into [-0.5, 1.5)
    so boundary points land on their lines despite the log branch cut."""
    w0 = np.exp(1j * np.pi * theta)
    w = np.asarray(w, dtype=np.complex128)
    h = (np.conj(w0) * w - w0) / (w - 1.0)
    z = np.log(h) / (1j * np.pi)
    re = np.mod(z.real + 0.5, 2.0) - 0.5
    re = np.where(re > 1.5, re - 2.0, re)
    return re + 1j * z.imag


def conformal_boundary_grid(theta: float, grid: int) -> BoundaryGrid:
    """Midpoint grids on the two labeled circle arcs, `grid` points each.

    Label-1 points sit on the arc (0, 2*pi*theta), label-0 points on
    (2*pi*theta, 2*pi); the arcs have harmonic measure theta and 1 - theta
    at the disk center. At theta = 1/2 the grid is symmetric under complex
    conjugation.
    """
    if not (0.0 < theta < 1.0):
        raise InputError(f"theta={theta} outside (0, 1)")
    if grid < 8:
        raise InputError("grid must be >= 8")
    g = int(grid)
    span1 = 2.0 * np.pi * theta
    span0 = 2.0 * np.pi * (1.0 - theta)
    ang1 = span1 * (np.arange(g) + 0.5) / g
    ang0 = span1 + span0 * (np.arange(g) + 0.5) / g
    angles = np.concatenate([ang1, ang0])
    labels = np.concatenate([np.ones(g, dtype=int), np.zeros(g, dtype=int)])
    return BoundaryGrid(theta=float(theta), size=g, angles=angles,
                        w=np.exp(1j * angles), labels=labels,
                        spacing=(span0 / g, span1 / g))


# ---------------------------------------------------------------------------
# Couples and witnesses
# ---------------------------------------------------------------------------

def _values(oracle, xs: np.ndarray) -> np.ndarray:
    values = getattr(oracle, "values", None)
    if values is not None:
        return np.asarray(values(xs), dtype=float)
    return np.array([oracle.value(x) for x in xs], dtype=float)


def _subgrad(oracle, x: np.ndarray):
    subgrad = getattr(oracle, "subgrad", None)
    if subgrad is not None:
        return subgrad(x)
    # central finite differences in the 2d real coordinates (slow fallback)
    x = np.asarray(x, dtype=np.complex128)
    f0 = oracle.value(x)
    h = 1e-6 * max(1.0, float(np.linalg.norm(x)))
    g = np.zeros_like(x)
    for i in range(x.size):
        for part, unit in ((1.0, 1.0), (1j, 1j)):
            e = np.zeros_like(x)
            e[i] = unit * h
            d = (oracle.value(x + e) - oracle.value(x - e)) / (2 * h)
            g[i] += d * part
    return f0, g


@dataclass
class CoupleLevel:
    """A compatible couple at one fixed level: two norm oracles N0, N1 on the
    same coefficient space (identity inclusions), with optional dual-norm
    oracles D0, D1 for the bilinear pairing <xi, x> = sum_i xi_i x_i.

    `prefactor_init`, when set, maps (x, theta) to a line-map pair
    (pre0, pre1) = (B**(-theta), B**(1-theta)) for the witness family; it is
    only valid when the imaginary powers of B leave both endpoint norms
    invariant (entrywise-positive vectors for absolute norms, norm-self-
    adjoint positive maps for Hilbertian couples). `dual_prefactor_init`
    plays the same role for the dual couple in lower-bound solves."""

    n_total: int
    N0: object
    N1: object
    D0: object = None
    D1: object = None
    prefactor_init: object = None
    dual_prefactor_init: object = None

    def has_duals(self) -> bool:
        return self.D0 is not None and self.D1 is not None

    def validate_duality(self, rng: np.random.Generator,
                         samples: int = 50) -> float:
        """Sampled pairing check; returns the largest violation of
        |<xi, x>| <= D_i(xi) N_i(x) (positive means inconsistent duals)."""
        if not self.has_duals():
            raise UnsupportedStructureError("couple has no dual oracles")
        worst = -np.inf
        for _ in range(samples):
            x = linalg.complex_gaussian(rng, self.n_total)
            xi = linalg.complex_gaussian(rng, self.n_total)
            pay = abs(np.dot(xi, x))
            for nrm, dual in ((self.N0, self.D0), (self.N1, self.D1)):
                worst = max(worst, pay - dual.value(xi) * nrm.value(x))
        return worst


def _apply_pre(pre, y: np.ndarray) -> np.ndarray:
    """Apply a line map (None, positive scalar, positive vector or matrix)
    to rows of y."""
    if pre is None:
        return y
    p = np.asarray(pre)
    if p.ndim == 0:
        return float(p) * y
    if p.ndim == 1:
        return y * p[None, :] if y.ndim == 2 else y * p
    return y @ p.T


def _pre_pullback(pre, g: np.ndarray) -> np.ndarray:
    """Adjoint of a line map applied to a subgradient."""
    if pre is None:
        return g
    p = np.asarray(pre)
    if p.ndim == 0:
        return float(p) * g
    if p.ndim == 1:
        return g * p
    return p.conj().T @ g


@dataclass
class StripFunction:
    """Analytic family member

        f(z) = B**(z - theta) (sum_j c_j psi(z)**j)

    where psi maps the strip to the disk with psi(theta) = 0 and B is a
    prefactor (scalar, entrywise-positive vector, or a linear map) whose
    imaginary powers B**(it) leave both endpoint norms invariant. The value
    constraint is carried exactly by the constant coefficient: f(theta) =
    coeffs[0]. On a boundary line the norm therefore equals the endpoint
    norm of the transformed polynomial pre_label(p(w)) where pre0 =
    B**(-theta) and pre1 = B**(1-theta), so the boundary objective stays
    convex in the coefficients. The zero-correction member (c_j = 0 for
    j >= 1) is the exponential witness whose boundary suprema are exact."""

    theta: float
    coeffs: np.ndarray  # (m + 1, d)
    pre0: object = None
    pre1: object = None

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def effective_degree(self) -> int:
        scale = float(np.abs(self.coeffs).max())
        if scale == 0.0:
            return 0
        nz = np.nonzero(np.abs(self.coeffs).max(axis=1) > 1e-14 * scale)[0]
        return int(nz[-1]) if nz.size else 0

    def line_coeffs(self, label: int) -> np.ndarray:
        pre = self.pre1 if label == 1 else self.pre0
        return _apply_pre(pre, self.coeffs)

    def poly_values(self, w: np.ndarray) -> np.ndarray:
        """Untransformed polynomial part at disk points w, (len(w), d)."""
        powers = np.asarray(w)[:, None] ** np.arange(self.coeffs.shape[0])
        return powers @ self.coeffs

    def value_at(self, z) -> np.ndarray:
        """Witness value at an interior strip point (for diagnostics)."""
        z = complex(z)
        w = strip_to_disk(z, self.theta)
        p = self.poly_values(np.atleast_1d(w))[0]
        if self.pre0 is None and self.pre1 is None:
            return p
        u0 = np.asarray(self.pre0 if self.pre0 is not None else 1.0)
        u1 = np.asarray(self.pre1 if self.pre1 is not None else 1.0)
        if u0.ndim < 2:
            b = u1 / u0
            pref = np.exp((z - self.theta) * np.log(b))
            return pref * p
        evals, vecs = np.linalg.eig(u1 @ np.linalg.inv(u0))
        pw = vecs @ np.diag(evals ** (z - self.theta)) @ np.linalg.inv(vecs)
        return pw @ p


@dataclass
class ExpWitness:
    """Scalar-exponential witness f(z) = x * ratio**(z - theta); its boundary
    suprema are N0(x) * ratio**(-theta) and N1(x) * ratio**(1 - theta),
    attained with the optimal ratio N0(x) / N1(x)."""

    theta: float
    x: np.ndarray
    ratio: float
    value: float


@dataclass
class UpperResult:
    value: float               # certified upper bound (witness boundary sup)
    witness: object            # StripFunction or ExpWitness
    grid_value: float          # optimizer's raw grid optimum
    delta_g: float             # reported grid-slack inflation for grid_value
    converged: bool


@dataclass
class LowerResult:
    value: float
    witness: np.ndarray        # the dual functional xi
    converged: bool


@dataclass
class NormBounds:
    """Certified bracket for an interpolated norm."""

    lower: float
    upper: float
    upper_witness: object
    lower_witness: Optional[np.ndarray]
    grid_upper: float
    delta_g: float
    converged_upper: bool
    converged_lower: bool

    def __post_init__(self):
        slack = max(_SANDWICH_TOL, _SANDWICH_TOL * abs(self.upper))
        if self.lower > self.upper + slack:
            raise AssertionError(
                f"bound inversion: lower={self.lower} > upper={self.upper}")

    @property
    def width(self) -> float:
        return self.upper - self.lower


# ---------------------------------------------------------------------------
# Upper bound
# ---------------------------------------------------------------------------

def _overshoot(degree: int, spacing: float) -> float:
    """Worst-case ratio of a degree-m trigonometric polynomial's supremum to
    its maximum on an equispaced grid of the given angular spacing."""
    half = 0.5 * degree * spacing
    if half >= 0.5 * np.pi:
        return np.inf
    return 1.0 / math.cos(half)


def _exp_witness(theta: float, x: np.ndarray, v0: float,
                 v1: float) -> ExpWitness:
    if v0 <= 0.0 or v1 <= 0.0:
        return ExpWitness(theta, x, 1.0, 0.0)
    ratio = v0 / v1
    return ExpWitness(theta, x, ratio, v0 ** (1.0 - theta) * v1 ** theta)


def _scan_line_sup(fn: StripFunction, oracle, lo: float, hi: float,
                   density: int) -> tuple[float, float]:
    """Supremum of the labeled norm of the polynomial part along one boundary
    arc: dense scan plus golden-section refinement around the best scan
    points. Returns (sup, overshoot factor)."""
    m = max(fn.effective_degree, 1)
    count = density * m
    step = (hi - lo) / count
    phis = lo + step * (np.arange(count) + 0.5)
    vals = _values(oracle, fn.poly_values(np.exp(1j * phis)))
    best = float(vals.max())

    def eval_phi(phi: float) -> float:
        return float(oracle.value(fn.poly_values(
            np.exp(1j * np.atleast_1d(phi)))[0]))

    order = np.argsort(vals)[::-1][:3]
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    for idx in order:
        a = max(phis[idx] - step, lo)
        b = min(phis[idx] + step, hi)
        c, d = b - gr * (b - a), a + gr * (b - a)
        fc, fd = eval_phi(c), eval_phi(d)
        for _ in range(28):
            if fc > fd:
                b, d, fd = d, c, fc
                c = b - gr * (b - a)
                fc = eval_phi(c)
            else:
                a, c, fc = c, d, fd
                d = a + gr * (b - a)
                fd = eval_phi(d)
        best = max(best, fc, fd)
    if fn.effective_degree == 0:
        return best, 1.0
    return best, _overshoot(m, step)


def _certify_witness(fn: StripFunction, cl: CoupleLevel, theta: float,
                     density: int = 24) -> float:
    """Certified boundary supremum of a family witness. Per-line transformed
    coefficients are folded into derived witnesses so the scan sees plain
    polynomials."""
    span1 = 2.0 * np.pi * theta
    fn0 = StripFunction(theta, fn.line_coeffs(0))
    fn1 = StripFunction(theta, fn.line_coeffs(1))
    sup1, over1 = _scan_line_sup(fn1, cl.N1, 0.0, span1, density)
    sup0, over0 = _scan_line_sup(fn0, cl.N0, span1, 2.0 * np.pi, density)
    return max(sup0 * over0, sup1 * over1)


def _initial_coeffs(m: int, d: int, scale: float, restarts: int,
                    warm: Optional[np.ndarray],
                    rng: np.random.Generator) -> list[np.ndarray]:
    inits = [np.zeros((m, d), dtype=np.complex128)]
    if warm is not None:
        w = np.zeros((m, d), dtype=np.complex128)
        take = min(m, warm.shape[0])
        w[:take] = warm[:take]
        inits.append(w)
    while len(inits) < restarts:
        c = linalg.complex_gaussian(rng, (m, d))
        c *= 0.25 * scale / max(np.sqrt(m * d), 1.0)
        inits.append(c)
    return inits


def interp_upper_bound(cl: CoupleLevel, theta: float, x,
                       solver: Optional[SolverParams] = None,
                       warm_start: Optional[np.ndarray] = None) -> UpperResult:
    """Certified upper bound for the interpolated norm of x at theta.

    Returns the boundary supremum of the best admissible witness found:
    the minimum of the polished polynomial-family value and the exact
    scalar-exponential value. The optimizer's raw grid optimum and its
    overshoot-based inflation are reported alongside.
    """
    if solver is None:
        solver = SolverParams()
    if not (0.0 < theta < 1.0):
        raise InputError(f"theta={theta} outside (0, 1)")
    x = np.asarray(x, dtype=np.complex128).ravel()
    if x.size != cl.n_total:
        raise DimensionMismatchError("x does not match the couple dimension")

    v0, v1 = cl.N0.value(x), cl.N1.value(x)
    exp_w = _exp_witness(theta, x, v0, v1)
    if float(np.linalg.norm(x)) == 0.0:
        fn = StripFunction(theta, x[None].copy())
        return UpperResult(0.0, fn, 0.0, 0.0, True)

    m = solver.degree
    if m == 0:
        value = max(v0, v1)
        fn = StripFunction(theta, x[None].copy())
        return UpperResult(value, fn, value, 0.0, True)

    grid = conformal_boundary_grid(theta, solver.grid)
    # pad each line's constraint set a little past the arc junctions: the
    # optimizer then cannot park spikes just outside the sampled arc, and
    # the padded max still upper-bounds the arc max (superset of points)
    pad = max(2, solver.grid // 16)
    span1 = 2.0 * np.pi * theta
    step1, step0 = grid.spacing[1], grid.spacing[0]
    ext1 = np.concatenate([-step1 * (np.arange(pad) + 0.5),
                           span1 + step1 * (np.arange(pad) + 0.5)])
    ext0 = np.concatenate([span1 - step0 * (np.arange(pad) + 0.5),
                           2.0 * np.pi + step0 * (np.arange(pad) + 0.5)])
    angles = np.concatenate([grid.angles, ext1, ext0])
    labels = np.concatenate([grid.labels, np.ones(2 * pad, dtype=int),
                             np.zeros(2 * pad, dtype=int)])
    w_solve = np.exp(1j * angles)
    idx1 = labels == 1
    idx0 = ~idx1
    powers = w_solve[:, None] ** np.arange(1, m + 1)
    rng = np.random.default_rng(solver.seed)
    scale = max(v0, v1)

    if cl.prefactor_init is not None:
        pre0, pre1 = cl.prefactor_init(x, theta)
    else:
        pre0 = exp_w.ratio ** (-theta)
        pre1 = exp_w.ratio ** (1.0 - theta)

    def batch_vals(c: np.ndarray):
        y = x[None, :] + powers @ c
        vals = np.empty(y.shape[0])
        vals[idx0] = _values(cl.N0, _apply_pre(pre0, y[idx0]))
        vals[idx1] = _values(cl.N1, _apply_pre(pre1, y[idx1]))
        return y, vals

    state = {"best": np.inf, "c": None, "late": False}

    def descend(c: np.ndarray, n_it: int, eps0: float, eps1: float):
        # Polyak-style steps toward a shrinking target below the running
        # best; the subgradient is averaged over the near-active grid points
        # to damp zigzag between active pieces.
        local_best = np.inf
        for t in range(n_it):
            y, vals = batch_vals(c)
            f = float(vals.max())
            local_best = min(local_best, f)
            if f < state["best"]:
                if t > 0.7 * n_it:
                    state["late"] = True
                state["best"], state["c"] = f, c.copy()
            frac = 0.05 * (2e-3) ** (t / max(1, n_it - 1))
            active = np.nonzero(vals >= f * (1.0 - frac))[0][:8]
            grad = np.zeros_like(c)
            for g_idx in active:
                if labels[g_idx] == 1:
                    oracle, pre = cl.N1, pre1
                else:
                    oracle, pre = cl.N0, pre0
                _, gn = _subgrad(oracle, _apply_pre(pre, y[g_idx]))
                grad += np.conj(powers[g_idx])[:, None] \
                    * _pre_pullback(pre, gn)[None, :]
            grad /= len(active)
            gn2 = float(np.sum(np.abs(grad) ** 2))
            if gn2 < 1e-28:
                break
            eps_t = eps0 * (eps1 / eps0) ** (t / max(1, n_it - 1))
            target = local_best * (1.0 - eps_t)
            c = c - ((f - target) / gn2) * grad

    iters = solver.max_iter
    for c0 in _initial_coeffs(m, x.size, scale, solver.restarts,
                              warm_start, rng):
        descend(c0.copy(), iters, solver.step_eps0, solver.step_eps1)
    if state["c"] is not None:
        # polish the global best with a tight target schedule
        descend(state["c"].copy(), max(iters // 2, 40), 0.01, 2e-4)

    best_val, best_c = state["best"], state["c"]
    fn = StripFunction(theta, np.vstack([x[None, :], best_c]),
                       pre0=pre0, pre1=pre1)
    delta_bern = max(_overshoot(m, grid.spacing[0]),
                     _overshoot(m, grid.spacing[1])) - 1.0
    certified = _certify_witness(fn, cl, theta)
    if exp_w.value <= certified:
        return UpperResult(exp_w.value, exp_w, best_val, delta_bern,
                           not state["late"])
    return UpperResult(certified, fn, best_val, delta_bern,
                       not state["late"])


# ---------------------------------------------------------------------------
# Lower bound
# ---------------------------------------------------------------------------

def _lower_candidates(cl: CoupleLevel, x: np.ndarray,
                      upper: Optional[UpperResult],
                      theta: float, extra: int,
                      rng: np.random.Generator,
                      hints=()) -> list[np.ndarray]:
    cands = [np.asarray(h, dtype=np.complex128).ravel() for h in hints]
    cands.append(np.conj(x) / float(np.linalg.norm(x)))
    for oracle in (cl.N0, cl.N1):
        _, g = _subgrad(oracle, x)
        if np.linalg.norm(g) > 0:
            cands.append(np.conj(g))
    if upper is not None and isinstance(upper.witness, StripFunction):
        fn = upper.witness
        grid = conformal_boundary_grid(theta, 16)
        y = fn.poly_values(grid.w)
        y[grid.labels == 0] = _apply_pre(fn.pre0, y[grid.labels == 0])
        y[grid.labels == 1] = _apply_pre(fn.pre1, y[grid.labels == 1])
        vals = np.empty(y.shape[0])
        vals[grid.labels == 0] = _values(cl.N0, y[grid.labels == 0])
        vals[grid.labels == 1] = _values(cl.N1, y[grid.labels == 1])
        g_idx = int(np.argmax(vals))
        oracle = cl.N1 if grid.labels[g_idx] == 1 else cl.N0
        _, g = _subgrad(oracle, y[g_idx])
        if np.linalg.norm(g) > 0:
            cands.append(np.conj(g))
    for _ in range(extra):
        xi = linalg.complex_gaussian(rng, x.size)
        cands.append(xi / np.linalg.norm(xi))
    return cands


def interp_lower_bound(cl: CoupleLevel, theta: float, x,
                       solver: Optional[SolverParams] = None,
                       upper: Optional[UpperResult] = None,
                       hints=()) -> LowerResult:
    """Certified lower bound via duality: the best |<xi, x>| / UB(dual norm
    of xi) over candidate functionals. Requires dual oracles.

    `hints` may carry extra candidate functionals (for instance the
    subgradient of a conjectured closed form); they only ever tighten the
    bound since every candidate is certified through the dual upper solve.
    Candidates are screened with the exact exponential dual bound and only
    the most promising ones get a full dual solve.
    """
    if solver is None:
        solver = SolverParams()
    if not cl.has_duals():
        raise UnsupportedStructureError(
            "lower bound requires dual oracles D0, D1")
    x = np.asarray(x, dtype=np.complex128).ravel()
    if float(np.linalg.norm(x)) == 0.0:
        return LowerResult(0.0, np.zeros_like(x), True)

    dual_cl = CoupleLevel(cl.n_total, cl.D0, cl.D1,
                          prefactor_init=cl.dual_prefactor_init)
    dual_solver = solver.dual()
    rng = np.random.default_rng(solver.seed + 104729)
    cands = _lower_candidates(cl, x, upper, theta,
                              solver.lower_candidates, rng, hints)
    scored = []
    for xi in cands:
        pay = abs(np.dot(xi, x))
        if pay <= 1e-30:
            continue
        d0, d1 = cl.D0.value(xi), cl.D1.value(xi)
        if d0 <= 0.0 or d1 <= 0.0:
            continue
        proxy = d0 ** (1.0 - theta) * d1 ** theta
        scored.append((pay / proxy, pay, xi))
    scored.sort(key=lambda s: -s[0])

    best, best_xi, any_conv = 0.0, None, False
    for proxy_val, pay, xi in scored[:max(3, len(hints) + 1)]:
        if proxy_val > best:
            best, best_xi, any_conv = proxy_val, xi, True
        ub = interp_upper_bound(dual_cl, theta, xi, dual_solver)
        if ub.value <= 0.0:
            continue
        val = pay / ub.value
        if val > best:
            best, best_xi, any_conv = val, xi, ub.converged
    return LowerResult(best, best_xi, any_conv)


def interp_norm_bounds(cl: CoupleLevel, theta: float, x,
                       solver: Optional[SolverParams] = None,
                       warm_start: Optional[np.ndarray] = None,
                       require_lower: bool = True,
                       lower_hints=()) -> NormBounds:
    """Run both bounds and assert the sandwich."""
    if solver is None:
        solver = SolverParams()
    up = interp_upper_bound(cl, theta, x, solver, warm_start)
    if require_lower:
        lo = interp_lower_bound(cl, theta, x, solver, upper=up,
                                hints=lower_hints)
    else:
        lo = LowerResult(0.0, None, True)
    return NormBounds(lower=lo.value,
                      upper=up.value,
                      upper_witness=up.witness,
                      lower_witness=lo.witness,
                      grid_upper=up.grid_value,
                      delta_g=up.delta_g,
                      converged_upper=up.converged,
                      converged_lower=lo.converged)


# ---------------------------------------------------------------------------
# Classical vector norms (oracle couples for calibration)
# ---------------------------------------------------------------------------

def _phase(z: np.ndarray) -> np.ndarray:
    out = np.zeros_like(z)
    nz = np.abs(z) > 0
    out[nz] = z[nz] / np.abs(z[nz])
    return out


class SupNorm:
    """Entrywise supremum norm on complex vectors."""

    def __init__(self, dim: int):
        self.dim = dim

    def value(self, x) -> float:
        return float(np.max(np.abs(x)))

    def values(self, xs) -> np.ndarray:
        return np.max(np.abs(np.asarray(xs)), axis=1)

    def subgrad(self, x):
        x = np.asarray(x, dtype=np.complex128)
        j = int(np.argmax(np.abs(x)))
        g = np.zeros_like(x)
        g[j] = _phase(x[j:j + 1])[0] if abs(x[j]) > 0 else 1.0
        return float(np.abs(x[j])), g

    def dual(self) -> "SumAbsNorm":
        return SumAbsNorm(self.dim)


class SumAbsNorm:
    """Sum of absolute values on complex vectors."""

    def __init__(self, dim: int):
        self.dim = dim

    def value(self, x) -> float:
        return float(np.sum(np.abs(x)))

    def values(self, xs) -> np.ndarray:
        return np.sum(np.abs(np.asarray(xs)), axis=1)

    def subgrad(self, x):
        x = np.asarray(x, dtype=np.complex128)
        return float(np.sum(np.abs(x))), _phase(x)

    def dual(self) -> SupNorm:
        return SupNorm(self.dim)


class EuclideanNorm:
    """Euclidean norm on complex vectors; self-dual."""

    def __init__(self, dim: int):
        self.dim = dim

    def value(self, x) -> float:
        return float(np.linalg.norm(x))

    def values(self, xs) -> np.ndarray:
        return np.linalg.norm(np.asarray(xs), axis=1)

    def subgrad(self, x):
        x = np.asarray(x, dtype=np.complex128)
        v = float(np.linalg.norm(x))
        if v == 0.0:
            return 0.0, np.zeros_like(x)
        return v, x / v

    def dual(self) -> "EuclideanNorm":
        return EuclideanNorm(self.dim)


def sup_sum_slot_ratios(x, theta: float, sup_first: bool = True) -> np.ndarray:
    """Per-coordinate exponential rates minimizing the zero-correction
    witness value for a (sup-type, sum-type) couple.

    For N0 = sup, N1 = sum the minimizer of
    max(max_j r_j**(-theta) |x_j|, sum_j r_j**(1-theta) |x_j|) equalizes the
    sup-side entries, giving r_j = (|x_j| / ||x||_{1/theta})**(1/theta); the
    mirrored formula handles the (sum, sup) order. Entries are floored so
    zero coordinates keep finite weights."""
    a = np.abs(np.asarray(x, dtype=np.complex128).ravel())
    a = np.maximum(a, 1e-3 * max(float(a.max()), 1e-300))
    if sup_first:
        p = 1.0 / theta
        c = float(np.sum(a ** p)) ** (1.0 / p)
        return (a / c) ** p
    p = 1.0 / (1.0 - theta)
    c = float(np.sum(a ** p)) ** (1.0 / p)
    return (c / a) ** p


def _slot_ratio_prefactor(ratios: np.ndarray, theta: float):
    r = np.asarray(ratios, dtype=float)
    return r ** (-theta), r ** (1.0 - theta)


def linf_l1_couple(dim: int) -> CoupleLevel:
    """The (sup, sum) couple whose midpoint interpolation is the Euclidean
    norm; a classical closed-form oracle for the engine."""
    return CoupleLevel(
        dim, SupNorm(dim), SumAbsNorm(dim), SumAbsNorm(dim), SupNorm(dim),
        prefactor_init=lambda x, th: _slot_ratio_prefactor(
            sup_sum_slot_ratios(x, th, True), th),
        dual_prefactor_init=lambda x, th: _slot_ratio_prefactor(
            sup_sum_slot_ratios(x, th, False), th))


def hilbertian_prefactor(g0, g1):
    """Line maps for a Hilbertian couple: (B**(-theta), B**(1-theta)) with
    B = (g0^{-1} g1)^{-1/2}. B is self-adjoint positive for both endpoint
    inner products, so its imaginary powers preserve both norms and the
    zero-correction witness achieves the geometric-mean norm exactly."""
    g0 = linalg.as_matrix(g0)
    w0, v0 = np.linalg.eigh((g0 + g0.conj().T) / 2.0)
    root0 = (v0 * np.sqrt(w0)) @ v0.conj().T
    iroot0 = (v0 * (1.0 / np.sqrt(w0))) @ v0.conj().T
    s = iroot0 @ linalg.as_matrix(g1) @ iroot0
    s = (s + s.conj().T) / 2.0
    ws, vs = np.linalg.eigh(s)

    def power(t: float) -> np.ndarray:
        # (g0^{-1} g1)^t = g0^{-1/2} S^t g0^{1/2}
        return iroot0 @ ((vs * (ws ** t)) @ vs.conj().T) @ root0

    def init(x, theta):
        return power(theta / 2.0), power(-(1.0 - theta) / 2.0)

    return init


def hilbertian_couple(g0, g1) -> CoupleLevel:
    n0, n1 = HilbertianNorm(g0), HilbertianNorm(g1)
    if n0.dim != n1.dim:
        raise DimensionMismatchError("Gram sizes differ")
    return CoupleLevel(n0.dim, n0, n1, n0.dual(), n1.dual(),
                       prefactor_init=hilbertian_prefactor(g0, g1),
                       dual_prefactor_init=hilbertian_prefactor(
                           n0.dual().gram, n1.dual().gram))


# ---------------------------------------------------------------------------
# Hilbertian fast path
# ---------------------------------------------------------------------------

class HilbertianNorm:
    """Norm x -> sqrt(x^H G x) for a positive definite Gram G."""

    def __init__(self, gram):
        self.gram = linalg.as_matrix(gram)
        w, v = np.linalg.eigh((self.gram + self.gram.conj().T) / 2.0)
        if w[0] <= 0:
            raise InputError("Gram matrix is not positive definite")
        self._inv = (v * (1.0 / w)) @ v.conj().T
        self.dim = self.gram.shape[0]

    def value(self, x) -> float:
        x = np.asarray(x, dtype=np.complex128)
        return float(np.sqrt(max(np.real(np.vdot(x, self.gram @ x)), 0.0)))

    def values(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.complex128)
        q = np.einsum("bi,ij,bj->b", np.conj(xs), self.gram, xs)
        return np.sqrt(np.maximum(q.real, 0.0))

    def subgrad(self, x):
        x = np.asarray(x, dtype=np.complex128)
        v = self.value(x)
        if v == 0.0:
            return 0.0, np.zeros_like(x)
        return v, self.gram @ x / v

    def dual(self) -> "HilbertianNorm":
        # dual for the bilinear pairing <xi, x> = sum xi_i x_i: the Gram is
        # the conjugate of the inverse (sup |xi^T x| over x^H G x <= 1)
        return HilbertianNorm(np.conj(self._inv))


def hilbertian_interp(g0, g1, theta: float) -> np.ndarray:
    """Gram matrix of the interpolated norm of two Hilbertian norms: the
    theta-weighted geometric mean of the Grams. Exact fast path that the
    strip solver cross-validates."""
    return linalg.geometric_mean(g0, g1, theta)
