"""Dense complex matrix kernel.

Decompositions, the operator and trace norms, Kronecker products, fractional
powers of positive definite matrices and the two-matrix geometric mean. All
inputs are dense complex128 arrays; everything is pure and reentrant.
"""

from __future__ import annotations

import numpy as np

from .errors import (DimensionMismatchError, InputError, NearSingularError,
                     ResourceLimitError)

# Relative PD threshold: reject near-singular Grams, never regularize them.
EPS_PD = 1e-12

# Cap on the entry count of any Kronecker-type product.
MAX_KRON_ELEMENTS = 1 << 20

_HERM_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    """Validate and return `a` as a 2-D complex128 array with finite entries."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError("matrix has non-finite entries")
    return arr


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Independent standard complex Gaussian entries (unit total variance)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) \
        / np.sqrt(2.0)


def operator_norm(a) -> float:
    """Largest singular value of `a`."""
    arr = as_matrix(a)
    return float(np.linalg.svd(arr, compute_uv=False)[0])


def trace_norm(a) -> float:
    """Sum of the singular values of `a`."""
    arr = as_matrix(a)
    return float(np.linalg.svd(arr, compute_uv=False).sum())


def kron(a, b, max_elements: int = MAX_KRON_ELEMENTS) -> np.ndarray:
    """Kronecker product with a size guard."""
    am, bm = as_matrix(a), as_matrix(b)
    n_out = am.size * bm.size
    if n_out > max_elements:
        raise ResourceLimitError(
            f"kron output would hold {n_out} entries (cap {max_elements})")
    return np.kron(am, bm)


def conj(a) -> np.ndarray:
    """Entrywise complex conjugate."""
    return np.conj(as_matrix(a))


def transpose(a) -> np.ndarray:
    """Matrix transpose (no conjugation)."""
    return as_matrix(a).T.copy()


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def is_hermitian(a, tol: float = _HERM_TOL) -> bool:
    arr = as_matrix(a)
    if arr.shape[0] != arr.shape[1]:
        return False
    scale = max(1.0, float(np.linalg.norm(arr)))
    return float(np.linalg.norm(arr - arr.conj().T)) <= tol * scale


def _pd_eigh(g, eps_pd: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian positive definite matrix.

    Raises InputError if `g` is not Hermitian (relative tolerance 1e-12) and
    NearSingularError if the smallest eigenvalue falls at or below
    eps_pd * max(1, largest eigenvalue).
    """
    arr = as_matrix(g)
    if arr.shape[0] != arr.shape[1]:
        raise InputError("positive definite input must be square")
    if not is_hermitian(arr):
        raise InputError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh((arr + arr.conj().T) / 2.0)
    if w[0] <= eps_pd * max(1.0, float(w[-1])):
        raise NearSingularError(
            f"smallest eigenvalue {w[0]:.3e} below PD threshold")
    return w, v


def fractional_power(g, t: float, eps_pd: float = EPS_PD) -> np.ndarray:
    """g**t for Hermitian positive definite `g` and t in [0, 1]."""
    if not (0.0 <= t <= 1.0):
        raise InputError(f"exponent t={t} outside [0, 1]")
    w, v = _pd_eigh(g, eps_pd)
    out = (v * (w ** t)) @ v.conj().T
    return (out + out.conj().T) / 2.0


def geometric_mean(g0, g1, theta: float, eps_pd: float = EPS_PD) -> np.ndarray:
    """Weighted geometric mean g0^{1/2} (g0^{-1/2} g1 g0^{-1/2})^theta g0^{1/2}.

    This is the Gram matrix of the interpolated norm of two Hilbertian norms
    with Grams g0, g1; for theta = 1/2 it is symmetric in its arguments.
    """
    if not (0.0 < theta < 1.0):
        raise InputError(f"theta={theta} outside (0, 1)")
    w0, v0 = _pd_eigh(g0, eps_pd)
    g1m = as_matrix(g1)
    if g1m.shape != (w0.size, w0.size):
        raise DimensionMismatchError("geometric_mean operands differ in size")
    root = (v0 * np.sqrt(w0)) @ v0.conj().T
    iroot = (v0 * (1.0 / np.sqrt(w0))) @ v0.conj().T
    mid = iroot @ g1m @ iroot
    mid = (mid + mid.conj().T) / 2.0
    wm, vm = _pd_eigh(mid, eps_pd)
    mid_t = (vm * (wm ** theta)) @ vm.conj().T
    out = root @ mid_t @ root
    return (out + out.conj().T) / 2.0
