"""Mobius gyrogroup on the open unit ball and its isomorphism with the
Einstein model."""

import numpy as np

from .vectors import (
    arctanh_unchecked,
    atanh_guarded,
    ensure_in_ball,
    euclidean_norm,
    promote_float,
)


def mobius_add(u, v):
    """Mobius addition of ball points (trailing axis)."""
    u = promote_float(u)
    v = promote_float(v)
    ip = np.sum(u * v, axis=-1, keepdims=True)
    usq = np.sum(u * u, axis=-1, keepdims=True)
    vsq = np.sum(v * v, axis=-1, keepdims=True)
    num = (1.0 + 2.0 * ip + vsq) * u + (1.0 - usq) * v
    den = 1.0 + 2.0 * ip + usq * vsq
    return num / den


def phi(v):
    """Isomorphism onto the Einstein model: v -> 2v / (1 + |v|^2)."""
    v = np.asarray(v, dtype=float)
    vsq = np.sum(v * v, axis=-1, keepdims=True)
    return 2.0 * v / (1.0 + vsq)


def phi_inv(w):
    """Inverse of phi via the closed radical formula.

    Near w = 0 the radical quotient degenerates to 0/0, so for |w| < 1e-8 the
    series limit w/2 is used instead.
    """
    w = np.asarray(w, dtype=float)
    wsq = np.sum(w * w, axis=-1, keepdims=True)
    small = wsq < 1e-16
    safe = np.where(small, 1.0, wsq)
    factor = np.where(small, 0.5, (1.0 - np.sqrt(1.0 - wsq)) / safe)
    return factor * w


def gyronorm_M(v):
    """Gyronorm pulled back through phi: half the Einstein rapidity of phi(v).

    Computed by the defining formula; the closed form atanh(|v|) lives only in
    the tests that verify the simplification.
    """
    v = np.asarray(v, dtype=float)
    ensure_in_ball(v)
    return 0.5 * atanh_guarded(euclidean_norm(phi(v)))


def rapidity_metric_dM(u, v):
    """Rapidity metric of the Mobius model, half the Poincare distance."""
    u = np.asarray(u, dtype=float)
    ensure_in_ball(u)
    return gyronorm_M(mobius_add(-u, v))


def rapidity_norm_unchecked(v):
    """Engine-facing Mobius rapidity norm; no boundary guard."""
    return 0.5 * arctanh_unchecked(euclidean_norm(phi(v)))
