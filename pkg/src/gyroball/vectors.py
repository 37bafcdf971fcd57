"""Scalar and vector kernels shared by every ball model.

All kernels operate on the trailing axis, so the same function serves a
single point of shape ``(n,)`` and a batch of shape ``(N, n)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BoundaryError, DimensionMismatchError, DomainError

# Points with norm >= 1 - BOUNDARY_GUARD are rejected: atanh and the Lorentz
# factor blow up there, and silent clamping would corrupt metric checks.
BOUNDARY_GUARD = 1e-12

# Property suites sample inside this radius so that a single global tolerance
# covers all formulas; rim behavior gets dedicated directed tests.
SAMPLE_RADIUS_CAP = 0.95

DEFAULT_ATOL = 1e-9
DEFAULT_RTOL = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Comparison rule |a - b| <= atol + rtol * max(|a|, |b|), coordinatewise."""

    atol: float = DEFAULT_ATOL
    rtol: float = DEFAULT_RTOL

    def close(self, a, b) -> bool:
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        bound = self.atol + self.rtol * np.maximum(np.abs(a), np.abs(b))
        return bool(np.all(np.abs(a - b) <= bound))


def promote_float(v) -> np.ndarray:
    """View as a float array without narrowing wider float dtypes.

    Kernels go through this instead of ``asarray(..., float)`` so they can be
    evaluated in extended precision where cancellation demands it.
    """
    v = np.asarray(v)
    return v if v.dtype.kind == "f" else v.astype(float)


def as_vector(coords) -> np.ndarray:
    """Validate a real vector: finite entries, dimension >= 1."""
    v = np.asarray(coords, dtype=float)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.shape[-1] < 1:
        raise DomainError("vectors must have dimension >= 1")
    if not np.all(np.isfinite(v)):
        raise DomainError("vector entries must be finite")
    return v


def inner_product(u, v):
    """Euclidean inner product over the trailing axis."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] != v.shape[-1]:
        raise DimensionMismatchError(
            f"dimension mismatch: {u.shape[-1]} vs {v.shape[-1]}"
        )
    return np.sum(u * v, axis=-1)


def euclidean_norm(v):
    v = np.asarray(v, dtype=float)
    return np.sqrt(np.sum(v * v, axis=-1))


def ball_point(coords) -> np.ndarray:
    """Validate a point strictly inside the guarded open unit ball."""
    v = as_vector(coords)
    ensure_in_ball(v)
    return v


def ensure_in_ball(v) -> None:
    """Raise BoundaryError if any point has norm >= 1 - BOUNDARY_GUARD."""
    nrm = euclidean_norm(v)
    if np.any(nrm >= 1.0 - BOUNDARY_GUARD):
        worst = float(np.max(nrm))
        raise BoundaryError(
            f"point norm {worst!r} reaches the boundary guard 1 - {BOUNDARY_GUARD}"
        )


def lorentz_gamma(v):
    """Relativistic dilation factor 1/sqrt(1 - |v|^2) for |v| < 1."""
    v = np.asarray(v, dtype=float)
    ensure_in_ball(v)
    return 1.0 / np.sqrt(1.0 - np.sum(v * v, axis=-1))


def atanh_guarded(x):
    """Inverse hyperbolic tangent on [0, 1), guarded at both ends.

    All gyronorm call sites feed a norm here, hence the nonnegativity
    requirement.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise DomainError(f"atanh_guarded expects a nonnegative argument, got {float(np.min(x))!r}")
    if np.any(x >= 1.0 - BOUNDARY_GUARD):
        raise BoundaryError(
            f"atanh argument {float(np.max(x))!r} reaches the boundary guard 1 - {BOUNDARY_GUARD}"
        )
    out = np.arctanh(x)
    return float(out) if out.ndim == 0 else out


def arctanh_unchecked(x):
    """atanh without guards; out-of-domain inputs yield inf/nan silently.

    The property engine uses this so that a bad sample shows up as a
    skippable non-finite row instead of aborting a whole suite.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.arctanh(np.asarray(x, dtype=float))


def scalar_einstein_add(r, s):
    """Addition (r + s)/(1 + rs) on the open interval (-1, 1)."""
    r = float(r)
    s = float(s)
    if abs(r) >= 1.0 or abs(s) >= 1.0:
        raise DomainError(f"scalar arguments must lie in (-1, 1), got {r!r}, {s!r}")
    return (r + s) / (1.0 + r * s)


def sample_ball_points(n, count, rng, cap=SAMPLE_RADIUS_CAP):
    """Draw ``count`` points of dimension ``n`` with norm <= cap.

    Direction is uniform on the sphere (normalized Gaussian deviates);
    radius is cap * u**(1/n) for u uniform in [0, 1), which is the uniform
    distribution on the capped ball.  Deterministic given the generator
    state.
    """
    z = rng.standard_normal((count, n))
    lengths = np.sqrt(np.sum(z * z, axis=-1, keepdims=True))
    lengths[lengths == 0.0] = 1.0
    u = rng.random((count, 1))
    radius = cap * u ** (1.0 / n)
    return z / lengths * radius


def sample_ball_point(n, rng, cap=SAMPLE_RADIUS_CAP):
    """Single draw; see sample_ball_points for the distribution."""
    return sample_ball_points(n, 1, rng, cap=cap)[0]
