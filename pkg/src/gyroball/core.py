"""Abstract gyrogroup machinery.

A :class:`GyrogroupModel` bundles identity, addition, negation and (optionally)
a closed-form gyration over some carrier; gyrations default to the gyrator
identity, and closed forms are cross-checked against it by the table suite
rather than trusted.  A :class:`GyronormedModel` adds a length function, from
which the induced metric, witness isometries, and the decomposition of
isometries are built generically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DegeneracyError, LeftInvarianceError
from .rng import make_rng
from .vectors import Tolerance, euclidean_norm, sample_ball_points


@dataclass(frozen=True, eq=False)
class GyrogroupModel:
    """A concrete gyrogroup over an array carrier.

    ``add``/``neg``/``closed_gyr`` operate on the trailing axis and must
    broadcast, so the engine can evaluate whole sample batches at once.
    ``hom``, when present, is a pair ``(target_model, map)`` giving a
    reference gyrogroup homomorphism used by the gyration-preservation check.
    """

    name: str
    dim: int
    add: Callable
    neg: Callable
    sample: Callable  # sample(rng, count) -> (count, dim) array
    closed_gyr: Optional[Callable] = None
    hom: Optional[tuple] = None
    validate: Optional[Callable] = None

    @property
    def identity(self) -> np.ndarray:
        return np.zeros(self.dim)

    def gyr(self, a, b, c):
        """Gyration gyr[a, b]c; closed form when the model has one."""
        if self.closed_gyr is not None:
            return self.closed_gyr(a, b, c)
        return gyr_via_gyrator_identity(self, a, b, c)


def gyr_via_gyrator_identity(m: GyrogroupModel, a, b, c):
    """gyr[a, b]c computed from additions alone.

    Evaluated in extended precision: the outer addition cancels
    catastrophically when a + b lands near the rim, costing up to ~1e-9 in
    double precision, which would swamp the default tolerance.
    """
    a = np.asarray(a, dtype=np.longdouble)
    b = np.asarray(b, dtype=np.longdouble)
    c = np.asarray(c, dtype=np.longdouble)
    out = m.add(m.neg(m.add(a, b)), m.add(a, m.add(b, c)))
    return np.asarray(out, dtype=float)


@dataclass(frozen=True, eq=False)
class GyronormedModel:
    """A gyrogroup model with a gyronorm attached."""

    model: GyrogroupModel
    norm_name: str
    norm: Callable

    def distance(self, x, y):
        """The induced metric d(x, y) = norm(neg(x) + y)."""
        m = self.model
        return self.norm(m.add(m.neg(x), y))


def induced_metric(nm: GyronormedModel) -> Callable:
    """Metric induced by the gyronorm; a bound alias of ``nm.distance``."""
    return nm.distance


def gyronorm_from_metric(m, d, rng=None, check_samples=200, tol=None):
    """Recover the gyronorm x -> d(e, x) from a left-invariant metric.

    Left invariance is checked on sampled triples, not assumed; a violation
    beyond tolerance raises LeftInvarianceError carrying the witness.
    """
    tol = tol or Tolerance()
    rng = rng if rng is not None else make_rng(0)
    a = m.sample(rng, check_samples)
    x = m.sample(rng, check_samples)
    y = m.sample(rng, check_samples)
    lhs = np.asarray(d(m.add(a, x), m.add(a, y)), dtype=float)
    rhs = np.asarray(d(x, y), dtype=float)
    excess = np.abs(lhs - rhs) - (tol.atol + tol.rtol * np.maximum(np.abs(lhs), np.abs(rhs)))
    if np.any(excess > 0.0):
        i = int(np.argmax(excess))
        raise LeftInvarianceError(
            "metric is not invariant under left gyrotranslation on samples",
            witness={
                "a": a[i].tolist(),
                "x": x[i].tolist(),
                "y": y[i].tolist(),
                "d_translated": float(lhs[i]),
                "d_original": float(rhs[i]),
            },
        )
    e = m.identity

    def norm(z):
        return d(e, z)

    return norm


# --- isometry specifications -------------------------------------------------

@dataclass(frozen=True, eq=False)
class LeftTranslation:
    """x -> point + x."""

    point: np.ndarray


@dataclass(frozen=True, eq=False)
class Gyration:
    """x -> gyr[a, b]x."""

    a: np.ndarray
    b: np.ndarray


@dataclass(frozen=True, eq=False)
class IsometrySpec:
    """Finite composition of primitive isometries, applied left to right.

    The empty sequence is the identity map.  Kept as explicit data (rather
    than an opaque callable) so decompositions can read off f(e) and specs
    can be serialized into reports.
    """

    steps: tuple = ()

    def describe(self):
        out = []
        for step in self.steps:
            if isinstance(step, LeftTranslation):
                out.append({"left_translation": np.asarray(step.point).tolist()})
            else:
                out.append({
                    "gyration": {
                        "a": np.asarray(step.a).tolist(),
                        "b": np.asarray(step.b).tolist(),
                    }
                })
        return out


def apply_isometry(m: GyrogroupModel, spec: IsometrySpec, x):
    """Apply the steps of ``spec`` to ``x``, first step first."""
    for step in spec.steps:
        if isinstance(step, LeftTranslation):
            x = m.add(step.point, x)
        elif isinstance(step, Gyration):
            x = m.gyr(step.a, step.b, x)
        else:
            raise TypeError(f"unknown isometry step {step!r}")
    return x


def homogeneity_witness(m: GyrogroupModel, x, y) -> IsometrySpec:
    """Isometry mapping x to y: translate x to the identity, then to y."""
    return IsometrySpec((LeftTranslation(m.neg(np.asarray(x, dtype=float))),
                         LeftTranslation(np.asarray(y, dtype=float))))


def isotropy_witness(m: GyrogroupModel, p, a, b, probes=None, tol=None) -> IsometrySpec:
    """Nonidentity isometry fixing p, conjugating the gyration gyr[a, b].

    Raises DegeneracyError when gyr[a, b] is the identity map on all probe
    points, as happens for every gyration of a plain group.
    """
    tol = tol or Tolerance()
    if probes is None:
        probes = m.sample(make_rng(0), 8)
    moved = euclidean_norm(m.gyr(a, b, probes) - probes)
    bound = tol.atol + tol.rtol * euclidean_norm(probes)
    if np.all(moved <= bound):
        raise DegeneracyError(
            "gyr[a, b] is the identity map on all probe points; "
            "no nonidentity isometry can be built from it"
        )
    p = np.asarray(p, dtype=float)
    return IsometrySpec((LeftTranslation(m.neg(p)), Gyration(np.asarray(a, dtype=float),
                                                             np.asarray(b, dtype=float)),
                         LeftTranslation(p)))


def mazur_ulam_decompose(nm: GyronormedModel, f: IsometrySpec):
    """Split an isometry as a left translation by f(e) after a map fixing e.

    Returns (t, rho) with t = f(e) and rho = L_{neg t} o f; rho fixes the
    identity and is an isometry, and L_t o rho reproduces f.
    """
    m = nm.model
    t = apply_isometry(m, f, m.identity)
    rho = IsometrySpec(f.steps + (LeftTranslation(m.neg(t)),))
    return t, rho


# --- degenerate fixtures -----------------------------------------------------

def group_adapter(n: int) -> GyronormedModel:
    """(R^n, +) viewed as a gyrogroup with trivial gyrations.

    The Euclidean norm is its gyronorm and the induced metric is the
    Euclidean distance.  Sampling stays in the capped unit ball so the same
    tolerances apply as for the curved models.
    """
    model = GyrogroupModel(
        name="group",
        dim=n,
        add=lambda a, b: np.asarray(a, dtype=float) + np.asarray(b, dtype=float),
        neg=lambda a: -np.asarray(a, dtype=float),
        sample=lambda rng, count: sample_ball_points(n, count, rng),
        closed_gyr=lambda a, b, c: np.broadcast_to(
            np.asarray(c, dtype=float),
            np.broadcast_shapes(np.shape(a), np.shape(b), np.shape(c)),
        ).copy(),
    )
    # The doubling automorphism is the reference homomorphism of the adapter.
    object.__setattr__(model, "hom", (model, lambda v: 2.0 * np.asarray(v, dtype=float)))
    return GyronormedModel(model, "euclidean", euclidean_norm)


def discrete_gyronorm(m: GyrogroupModel, threshold=1e-9) -> GyronormedModel:
    """Gyronorm that is 0 at the identity and 1 elsewhere.

    Floating carriers need a threshold for "at the identity"; the induced
    metric is the discrete metric.
    """

    def norm(x):
        return np.where(euclidean_norm(x) <= threshold, 0.0, 1.0)

    return GyronormedModel(m, "discrete", norm)
