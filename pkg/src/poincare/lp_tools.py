"""
L^p building blocks: signed powers, the Mazur map and the coordinatewise
L^p center (the inner infimum inf_x Σ ν(n) ‖f(n) − x‖_p^p).
"""

import math

import numpy as np

from src.config import Config
from src.utils.errors import BadParameter, ShapeMismatch

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GOLDEN_MAX_STEPS = 400


def signed_power(z, alpha: float) -> np.ndarray:
    """{z}^α = |z|^{α−1} z with {0}^α = 0"""
    z = np.asarray(z, dtype=float)
    return np.sign(z) * np.abs(z) ** alpha


def normed_power(x, alpha: float) -> np.ndarray:
    """{x}^α = ‖x‖^{α−1} x for the rows of x (Euclidean norm), {0}^α = 0"""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        return signed_power(x, alpha)
    norms = np.linalg.norm(x, axis=1)
    scale = np.zeros_like(norms)
    nonzero = norms > 0
    scale[nonzero] = norms[nonzero] ** (alpha - 1.0)
    return scale[:, None] * x


def mazur_map(f, p: float, q: float, vector_norm: str = "coordinate") -> np.ndarray:
    """
    M_{p,q}(f) = {f}^{p/q} pointwise.

    With vector_norm="coordinate" the power acts on each ℓ^p coordinate, which is the
    Mazur map of L^p on atoms; "euclidean" uses ‖x‖_2^{p/q−1} x on each row.
    """
    if p < 1 or q < 1:
        raise BadParameter(f"Mazur map needs p, q >= 1, got p={p}, q={q}")
    if vector_norm == "coordinate":
        return signed_power(f, p / q)
    if vector_norm == "euclidean":
        return normed_power(f, p / q)
    raise BadParameter(f"unknown vector norm {vector_norm!r}")


def lp_norm(values, weights, p: float) -> float:
    """‖f‖_{L^p(w; ℓ^p_k)} for rows of values weighted by w"""
    values = np.asarray(values, dtype=float)
    magnitudes = np.abs(values) ** p
    if magnitudes.ndim == 2:
        magnitudes = magnitudes.sum(axis=1)
    return float(np.dot(weights, magnitudes) ** (1.0 / p))


def _as_columns(values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        return values[:, None]
    if values.ndim != 2:
        raise ShapeMismatch(f"expected points as a (n,) or (n, k) array, got {values.shape}")
    return values


def _coordinate_objective(values: np.ndarray, weights: np.ndarray, x: np.ndarray, p: float) -> np.ndarray:
    return weights @ (np.abs(values - x[None, :]) ** p)


def lp_center(values, weights, p: float, tol: float = None) -> np.ndarray:
    """
    Minimizer x ∈ ℝ^k of Σ_n w(n) Σ_j |values(n)_j − x_j|^p.

    The objective is separable, so each coordinate is a 1-D convex problem
    bracketed by the coordinate min and max. All coordinates run one
    vectorized golden-section search; p = 2 uses the weighted mean.
    """
    if p <= 1:
        raise BadParameter(f"p must exceed 1, got {p}")
    tol = Config.GOLDEN_TOL if tol is None else tol
    columns = _as_columns(values)
    weights = np.asarray(weights, dtype=float)
    if weights.shape[0] != columns.shape[0]:
        raise ShapeMismatch(f"{weights.shape[0]} weights for {columns.shape[0]} points")

    if p == 2:
        return weights @ columns / weights.sum()

    lo = columns.min(axis=0)
    hi = columns.max(axis=0)
    scale = max(1.0, float(np.max(np.abs(np.concatenate([lo, hi])))))
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc = _coordinate_objective(columns, weights, c, p)
    fd = _coordinate_objective(columns, weights, d, p)

    for _ in range(GOLDEN_MAX_STEPS):
        if np.max(hi - lo) <= tol * scale:
            break
        left = fc < fd
        # minimum in [lo, d]: shrink from the right, reuse c as the new d
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        inner = np.where(left, hi - INV_PHI * (hi - lo), lo + INV_PHI * (hi - lo))
        f_inner = _coordinate_objective(columns, weights, inner, p)
        new_c = np.where(left, inner, d)
        new_fc = np.where(left, f_inner, fd)
        new_d = np.where(left, c, inner)
        new_fd = np.where(left, fc, f_inner)
        c, fc, d, fd = new_c, new_fc, new_d, new_fd

    return (lo + hi) / 2.0


def p_mean(nu, points, p: float) -> np.ndarray:
    """
    The point x ∈ ℝ^k minimizing Σ ν(n) ‖points(n) − x‖_p^p; unique for p > 1.

    Args:
        nu: Probability vector over the points
        points: (n,) or (n, k) array
        p: Exponent > 1

    Returns:
        x as a length-k array
    """
    if p <= 1:
        raise BadParameter(f"p-mean needs p > 1, got {p}")
    center = lp_center(_as_columns(points), nu, p)
    return np.asarray(center, dtype=float)
