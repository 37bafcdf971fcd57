"""Seeded verification and falsification suites.

Every suite draws its samples from one PCG64 stream, evaluates each property
on whole batches at once, and assembles an immutable report.  Identical
(model, suite, seed, samples, tolerance) inputs yield byte-identical
serialized reports.  Rows that evaluate to non-finite values (boundary
blow-ups) are skipped and counted; a suite with more than 1% skips raises
SamplingHealthError instead of reporting, since silent skips could mask
violations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .core import (
    Gyration,
    IsometrySpec,
    LeftTranslation,
    apply_isometry,
    gyr_via_gyrator_identity,
    mazur_ulam_decompose,
)
from .einstein import einstein_add
from .errors import SamplingHealthError, UnknownNameError
from .registry import MODEL_NAMES, get_normed
from .rng import make_rng
from .vectors import arctanh_unchecked, euclidean_norm, sample_ball_points

MAX_SKIP_FRACTION = 0.01

# Directions of the "norm zero implies identity" check: exact zeros are
# measure-zero under sampling, so anything below this floor must sit at e.
POSITIVITY_FLOOR = 1e-7


@dataclass(frozen=True)
class CheckConfig:
    samples: int = 10000
    seed: int = 42
    atol: float = 1e-9
    rtol: float = 1e-9
    probes: int = 32  # probe points per function-equality check
    positivity_floor: float = POSITIVITY_FLOOR
    max_failures: int = 10  # counterexamples recorded per property


@dataclass
class Counterexample:
    property_name: str
    sample_index: int
    inputs: dict
    lhs: object
    rhs: object
    diff: float

    def to_dict(self):
        return {
            "inputs": self.inputs,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "diff": self.diff,
        }


@dataclass
class PropertyResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    checked: int
    failed: int
    skipped: int
    failures: list = field(default_factory=list)
    note: str = ""

    def to_dict(self):
        out = {
            "name": self.name,
            "status": self.status,
            "checked": self.checked,
            "failed": self.failed,
            "failures": [c.to_dict() for c in self.failures],
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CheckReport:
    suite: str
    model: str
    gyronorm: str
    dim: int
    seed: int
    samples: int
    atol: float
    rtol: float
    skipped: int
    properties: list

    @property
    def passed(self) -> bool:
        return all(p.status != "fail" for p in self.properties)

    def to_dict(self):
        return {
            "suite": self.suite,
            "model": self.model,
            "gyronorm": self.gyronorm,
            "dim": self.dim,
            "seed": self.seed,
            "samples": self.samples,
            "tolerance": {"abs": self.atol, "rel": self.rtol},
            "skipped": self.skipped,
            "properties": [p.to_dict() for p in self.properties],
        }

    def to_json(self) -> str:
        # json emits shortest round-trip decimals, keeping output byte-stable.
        return json.dumps(self.to_dict(), indent=2)


def _serialize(value):
    arr = np.asarray(value)
    if arr.ndim == 0:
        return float(arr)
    return [float(x) for x in arr]


class _SuiteRun:
    """Sampling stream plus property recorder for one suite evaluation."""

    def __init__(self, nm, cfg):
        self.nm = nm
        self.m = nm.model
        self.cfg = cfg
        self.rng = make_rng(cfg.seed)
        self.results = []
        self.skipped = 0

    def draw(self, count):
        return self.m.sample(self.rng, count)

    def probe_rows(self, a, b, probes):
        """Expand (a, b) rows against a shared probe set for pointwise
        function-equality checks."""
        p = probes.shape[0]
        aP = np.repeat(a, p, axis=0)
        bP = np.repeat(b, p, axis=0)
        xP = np.tile(probes, (a.shape[0], 1))
        return aP, bP, xP

    def equal(self, name, inputs, lhs, rhs, note=""):
        self._record(name, inputs, lhs, rhs, mode="eq", note=note)

    def less_equal(self, name, inputs, lhs, rhs, note=""):
        self._record(name, inputs, lhs, rhs, mode="le", note=note)

    def _record(self, name, inputs, lhs, rhs, mode, note=""):
        cfg = self.cfg
        lhs = np.asarray(lhs, dtype=float)
        rhs = np.asarray(rhs, dtype=float)
        lhs, rhs = np.broadcast_arrays(lhs, rhs)
        axes = tuple(range(1, lhs.ndim))
        finite = np.isfinite(lhs) & np.isfinite(rhs)
        if axes:
            finite = finite.all(axis=axes)
        if mode == "eq":
            err = np.abs(lhs - rhs)
            bound = cfg.atol + cfg.rtol * np.maximum(np.abs(lhs), np.abs(rhs))
        else:
            err = lhs - rhs
            bound = cfg.atol + cfg.rtol * np.abs(rhs)
        with np.errstate(invalid="ignore"):
            ok = err <= bound
        diff = np.maximum(err, 0.0) if mode == "le" else err
        if axes:
            ok = ok.all(axis=axes)
            with np.errstate(invalid="ignore"):
                diff = np.nanmax(np.where(np.isfinite(diff), diff, 0.0), axis=axes)
        n = lhs.shape[0]
        skipped_rows = int(np.count_nonzero(~finite))
        fail_idx = np.flatnonzero(finite & ~ok)
        failures = []
        for i in fail_idx[: cfg.max_failures]:
            failures.append(Counterexample(
                property_name=name,
                sample_index=int(i),
                inputs={k: _serialize(np.asarray(v)[i]) for k, v in inputs.items()},
                lhs=_serialize(lhs[i]),
                rhs=_serialize(rhs[i]),
                diff=float(diff[i]),
            ))
        if skipped_rows == n and n > 0:
            status = "skipped"
        else:
            status = "fail" if fail_idx.size else "pass"
        self.results.append(PropertyResult(
            name=name,
            status=status,
            checked=int(n - skipped_rows),
            failed=int(fail_idx.size),
            skipped=skipped_rows,
            failures=failures,
            note=note,
        ))
        self.skipped += skipped_rows

    def skip_property(self, name, count, note):
        self.results.append(PropertyResult(name, "skipped", 0, 0, count, [], note))

    def equivalence_verdict(self, name, first, second):
        """Suite-level consistency of two universally quantified conditions:
        either both hold on all samples or both are violated somewhere.
        Per-sample divergence is informational only."""
        consistent = (first.failed > 0) == (second.failed > 0)
        note = (
            f"{first.name}: {first.status} ({first.failed} violations); "
            f"{second.name}: {second.status} ({second.failed} violations)"
        )
        self.results.append(PropertyResult(
            name=name,
            status="pass" if consistent else "fail",
            checked=min(first.checked, second.checked),
            failed=0 if consistent else 1,
            skipped=0,
            failures=[],
            note=note,
        ))


# --- suites ------------------------------------------------------------------

def suite_axioms(nm, cfg):
    run = _SuiteRun(nm, cfg)
    m = run.m
    a, b, c = run.draw(cfg.samples), run.draw(cfg.samples), run.draw(cfg.samples)
    run.equal("G1-left-identity", {"a": a}, m.add(m.identity, a), a)
    run.equal("G2-left-inverse", {"a": a}, m.add(m.neg(a), a), np.zeros_like(a))
    run.equal("G3-left-gyroassociative", {"a": a, "b": b, "c": c},
              m.add(a, m.add(b, c)), m.add(m.add(a, b), m.gyr(a, b, c)))
    probes = run.draw(cfg.probes)
    aP, bP, xP = run.probe_rows(a, b, probes)
    yP = np.tile(np.roll(probes, 1, axis=0), (cfg.samples, 1))
    run.equal("G4-left-loop", {"a": aP, "b": bP, "x": xP},
              m.gyr(m.add(aP, bP), bP, xP), m.gyr(aP, bP, xP))
    run.equal("gyr-automorphism", {"a": aP, "b": bP, "x": xP, "y": yP},
              m.gyr(aP, bP, m.add(xP, yP)),
              m.add(m.gyr(aP, bP, xP), m.gyr(aP, bP, yP)))
    return run


def suite_table1(nm, cfg):
    run = _SuiteRun(nm, cfg)
    m = run.m
    a, b, c = run.draw(cfg.samples), run.draw(cfg.samples), run.draw(cfg.samples)
    probes = run.draw(cfg.probes)
    aP, bP, xP = run.probe_rows(a, b, probes)
    run.equal("involution-of-inversion", {"a": a}, m.neg(m.neg(a)), a)
    run.equal("left-cancellation", {"a": a, "b": b},
              m.add(m.neg(a), m.add(a, b)), b)
    run.equal("gyrator-identity", {"a": a, "b": b, "c": c},
              m.gyr(a, b, c), gyr_via_gyrator_identity(m, a, b, c))
    run.equal("inverse-of-sum", {"a": a, "b": b},
              m.neg(m.add(a, b)), m.gyr(a, b, m.add(m.neg(b), m.neg(a))))
    run.equal("cancellation-chain", {"a": a, "b": b, "c": c},
              m.add(m.add(m.neg(a), b), m.gyr(m.neg(a), b, m.add(m.neg(b), c))),
              m.add(m.neg(a), c))
    run.equal("even-property", {"a": aP, "b": bP, "x": xP},
              m.gyr(m.neg(aP), m.neg(bP), xP), m.gyr(aP, bP, xP))
    run.equal("inversive-symmetry", {"a": aP, "b": bP, "x": xP},
              m.gyr(bP, aP, m.gyr(aP, bP, xP)), xP)
    if m.hom is not None:
        target, f = m.hom
        run.equal("gyration-preservation-hom", {"a": a, "b": b, "c": c},
                  f(m.gyr(a, b, c)), target.gyr(f(a), f(b), f(c)))
    else:
        run.skip_property("gyration-preservation-hom", cfg.samples,
                          "model registers no reference homomorphism")
    run.equal("composition-law", {"a": aP, "b": bP, "x": xP},
              m.add(aP, m.add(bP, xP)), m.add(m.add(aP, bP), m.gyr(aP, bP, xP)))
    return run


def suite_gyronorm(nm, cfg):
    run = _SuiteRun(nm, cfg)
    m, norm = run.m, nm.norm
    x, y = run.draw(cfg.samples), run.draw(cfg.samples)
    a, b = run.draw(cfg.samples), run.draw(cfg.samples)
    nx = norm(x)
    run.less_equal("positivity-nonnegative", {"x": x}, np.zeros(cfg.samples), nx)
    # Both directions of "zero exactly at the identity": the identity itself
    # (prepended row) plus the floor direction on sampled points.
    xe = np.vstack([m.identity[None, :], x])
    nxe = norm(xe)
    near_zero = nxe < cfg.positivity_floor
    run.equal("positivity-zero-iff-identity", {"x": xe},
              np.where(near_zero, euclidean_norm(xe), 0.0), np.zeros(cfg.samples + 1))
    run.equal("inverse-invariance", {"x": x}, norm(m.neg(x)), nx)
    run.less_equal("subadditivity", {"x": x, "y": y},
                   norm(m.add(x, y)), nx + norm(y))
    run.equal("gyration-invariance", {"a": a, "b": b, "x": x},
              norm(m.gyr(a, b, x)), nx)
    return run


def suite_metric(nm, cfg):
    run = _SuiteRun(nm, cfg)
    d = nm.distance
    x, y, z = run.draw(cfg.samples), run.draw(cfg.samples), run.draw(cfg.samples)
    dxy = d(x, y)
    run.less_equal("nonnegativity", {"x": x, "y": y}, np.zeros(cfg.samples), dxy)
    pair_x = np.vstack([x, x])
    pair_y = np.vstack([x, y])
    lhs = np.concatenate([
        d(x, x),
        np.where(dxy < cfg.positivity_floor, euclidean_norm(x - y), 0.0),
    ])
    run.equal("identity-of-indiscernibles", {"x": pair_x, "y": pair_y},
              lhs, np.zeros(2 * cfg.samples))
    run.equal("symmetry", {"x": x, "y": y}, dxy, d(y, x))
    run.less_equal("triangle-inequality", {"x": x, "y": y, "z": z},
                   d(x, z), d(x, y) + d(y, z))
    return run


def suite_left_invariance(nm, cfg):
    run = _SuiteRun(nm, cfg)
    m, d = run.m, nm.distance
    a, x, y = run.draw(cfg.samples), run.draw(cfg.samples), run.draw(cfg.samples)
    run.equal("left-gyrotranslation-invariance", {"a": a, "x": x, "y": y},
              d(m.add(a, x), m.add(a, y)), d(x, y))
    return run


def suite_isometry(nm, cfg, tau=None):
    """Norm preservation and distance preservation of one gyroautomorphism."""
    run = _SuiteRun(nm, cfg)
    m, norm, d = run.m, nm.norm, nm.distance
    if tau is None:
        pair = run.draw(2)
        tau = (pair[0], pair[1])
    a0, b0 = tau
    x, y = run.draw(cfg.samples), run.draw(cfg.samples)
    tau_x = m.gyr(a0, b0, x)
    tau_y = m.gyr(a0, b0, y)
    A = np.broadcast_to(a0, x.shape)
    B = np.broadcast_to(b0, x.shape)
    run.equal("gyration-norm-preservation", {"a": A, "b": B, "x": x},
              norm(tau_x), norm(x))
    run.equal("gyration-distance-preservation", {"a": A, "b": B, "x": x, "y": y},
              d(tau_x, tau_y), d(x, y))
    return run


def suite_klee(nm, cfg):
    run = _SuiteRun(nm, cfg)
    m, d = run.m, nm.distance
    x, y = run.draw(cfg.samples), run.draw(cfg.samples)
    a, b = run.draw(cfg.samples), run.draw(cfg.samples)
    run.less_equal("right-gyrotranslation-inequality", {"x": x, "y": y, "a": a},
                   d(m.add(x, a), m.add(y, a)), d(x, y))
    run.less_equal("klee-condition", {"x": x, "y": y, "a": a, "b": b},
                   d(m.add(x, y), m.add(a, b)), d(x, a) + d(y, b))
    run.equivalence_verdict("equivalence-consistency",
                            run.results[-2], run.results[-1])
    return run


def suite_commutative_like(nm, cfg):
    run = _SuiteRun(nm, cfg)
    m, norm, d = run.m, nm.norm, nm.distance
    a, x, y = run.draw(cfg.samples), run.draw(cfg.samples), run.draw(cfg.samples)
    lhs = norm(m.add(m.add(a, x), m.gyr(a, x, m.add(y, m.neg(a)))))
    run.equal("commutative-like-condition", {"a": a, "x": x, "y": y},
              lhs, norm(m.add(x, y)))
    dxy = d(x, y)
    bi_lhs = np.stack([d(m.add(x, a), m.add(y, a)), d(m.add(a, x), m.add(a, y))], axis=-1)
    bi_rhs = np.stack([dxy, dxy], axis=-1)
    run.equal("bi-gyrotranslation-invariance", {"a": a, "x": x, "y": y},
              bi_lhs, bi_rhs)
    run.equivalence_verdict("equivalence-consistency",
                            run.results[-2], run.results[-1])
    return run


def random_isometry_spec(m, rng, max_steps=4) -> IsometrySpec:
    """Random 1..max_steps composition of translations and gyrations."""
    steps = []
    for _ in range(int(rng.integers(1, max_steps + 1))):
        if int(rng.integers(0, 2)) == 0:
            steps.append(LeftTranslation(m.sample(rng, 1)[0]))
        else:
            pts = m.sample(rng, 2)
            steps.append(Gyration(pts[0], pts[1]))
    return IsometrySpec(tuple(steps))


def suite_mazur_ulam(nm, cfg, f=None):
    run = _SuiteRun(nm, cfg)
    m, d = run.m, nm.distance
    if f is None:
        f = random_isometry_spec(m, run.rng)
    t, rho = mazur_ulam_decompose(nm, f)
    e = m.identity
    run.equal("rho-fixes-identity", {"e": e[None, :]},
              apply_isometry(m, rho, e)[None, :], e[None, :])
    x, y = run.draw(cfg.samples), run.draw(cfg.samples)
    rx = apply_isometry(m, rho, x)
    ry = apply_isometry(m, rho, y)
    run.equal("rho-isometry", {"x": x, "y": y}, d(rx, ry), d(x, y))
    run.equal("decomposition-reproduces-f", {"x": x},
              apply_isometry(m, f, x), m.add(t, rx))
    return run


def suite_homogeneity_isotropy(nm, cfg):
    run = _SuiteRun(nm, cfg)
    m, d = run.m, nm.distance
    x, y = run.draw(cfg.samples), run.draw(cfg.samples)
    u, v = run.draw(cfg.samples), run.draw(cfg.samples)
    # T = L_y o L_{neg x} maps x to y and is an isometry.
    run.equal("homogeneity-maps-x-to-y", {"x": x, "y": y},
              m.add(y, m.add(m.neg(x), x)), y)
    Tu = m.add(y, m.add(m.neg(x), u))
    Tv = m.add(y, m.add(m.neg(x), v))
    run.equal("homogeneity-witness-isometry", {"x": x, "y": y, "u": u, "v": v},
              d(Tu, Tv), d(u, v))

    a, b, p = run.draw(cfg.samples), run.draw(cfg.samples), run.draw(cfg.samples)
    probes = run.draw(cfg.probes)
    aP, bP, xP = run.probe_rows(a, b, probes)
    moved_dist = euclidean_norm(m.gyr(aP, bP, xP) - xP)
    bound = cfg.atol + cfg.rtol * euclidean_norm(xP)
    row_moved = (moved_dist > bound).reshape(cfg.samples, cfg.probes).any(axis=1)
    if not row_moved.any():
        note = ("all sampled gyrations are the identity map; "
                "model is degenerate, isotropy not applicable")
        for name in ("isotropy-fixes-p", "isotropy-witness-isometry",
                     "isotropy-moves-a-probe"):
            run.skip_property(name, cfg.samples, note)
        return run
    # T = L_p o gyr[a, b] o L_{neg p} fixes p, is an isometry, and is not
    # the identity map whenever the gyration moves some probe.
    Tp = m.add(p, m.gyr(a, b, m.add(m.neg(p), p)))
    run.equal("isotropy-fixes-p", {"p": p, "a": a, "b": b}, Tp, p)
    Tu2 = m.add(p, m.gyr(a, b, m.add(m.neg(p), u)))
    Tv2 = m.add(p, m.gyr(a, b, m.add(m.neg(p), v)))
    run.equal("isotropy-witness-isometry", {"p": p, "a": a, "b": b, "u": u, "v": v},
              d(Tu2, Tv2), d(u, v))
    run.equal("isotropy-moves-a-probe", {"a": a, "b": b},
              row_moved.astype(float), np.ones(cfg.samples),
              note="1.0 means gyr[a, b] moved at least one probe point")
    return run


def suite_topology(nm, cfg):
    """Einstein-only: tanh(eps)-radius ball inclusions between d_e and d_E."""
    run = _SuiteRun(nm, cfg)
    n = run.m.dim
    for eps in (0.1, 0.5, 1.0):
        u = run.draw(cfg.samples)
        s = sample_ball_points(n, cfg.samples, run.rng, cap=np.tanh(eps) * (1.0 - 1e-9))
        w = einstein_add(u, s)
        de = euclidean_norm(einstein_add(-u, w))
        dE = arctanh_unchecked(de)
        run.less_equal(f"ball-inclusion-eps-{eps}", {"u": u, "w": w},
                       dE, np.full(cfg.samples, eps))
        run.less_equal(f"gyrometric-below-rapidity-eps-{eps}", {"u": u, "w": w},
                       de, dE)
    return run


_SUITES = {
    "axioms": suite_axioms,
    "table1": suite_table1,
    "gyronorm": suite_gyronorm,
    "metric": suite_metric,
    "left-invariance": suite_left_invariance,
    "isometry": suite_isometry,
    "klee": suite_klee,
    "commutative-like": suite_commutative_like,
    "mazur-ulam": suite_mazur_ulam,
    "homogeneity-isotropy": suite_homogeneity_isotropy,
    "topology": suite_topology,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(model_name, suite_name, cfg=None, dim=3, gyronorm=None) -> CheckReport:
    """Run a registered suite against a registered model; deterministic."""
    cfg = cfg or CheckConfig()
    if suite_name not in _SUITES:
        raise UnknownNameError(
            f"unknown suite '{suite_name}'; valid suites: {', '.join(SUITE_NAMES)}"
        )
    if suite_name == "topology" and model_name != "einstein":
        raise UnknownNameError(
            "suite 'topology' is defined only for model 'einstein'"
        )
    nm = get_normed(model_name, dim=dim, gyronorm=gyronorm)
    run = _SUITES[suite_name](nm, cfg)
    report = CheckReport(
        suite=suite_name,
        model=model_name,
        gyronorm=nm.norm_name,
        dim=nm.model.dim,
        seed=cfg.seed,
        samples=cfg.samples,
        atol=cfg.atol,
        rtol=cfg.rtol,
        skipped=run.skipped,
        properties=run.results,
    )
    total = sum(p.checked + p.skipped for p in run.results)
    degenerate_skips = sum(p.skipped for p in run.results if p.status == "skipped")
    counted_skips = run.skipped - degenerate_skips
    if total > 0 and counted_skips / total > MAX_SKIP_FRACTION:
        raise SamplingHealthError(
            f"{counted_skips} of {total} sample evaluations were skipped "
            f"(> {MAX_SKIP_FRACTION:.0%}); results would not be trustworthy",
            report=report,
        )
    return report


# Spec-level convenience wrappers ---------------------------------------------

def check_axioms(nm, cfg=None):
    return _finish(nm, "axioms", suite_axioms(nm, cfg or CheckConfig()), cfg)


def check_table1(nm, cfg=None):
    return _finish(nm, "table1", suite_table1(nm, cfg or CheckConfig()), cfg)


def check_gyronorm(nm, cfg=None):
    return _finish(nm, "gyronorm", suite_gyronorm(nm, cfg or CheckConfig()), cfg)


def check_metric(nm, cfg=None):
    return _finish(nm, "metric", suite_metric(nm, cfg or CheckConfig()), cfg)


def check_left_invariance(nm, cfg=None):
    return _finish(nm, "left-invariance", suite_left_invariance(nm, cfg or CheckConfig()), cfg)


def check_automorphism_isometry(nm, tau, cfg=None):
    return _finish(nm, "isometry", suite_isometry(nm, cfg or CheckConfig(), tau=tau), cfg)


def check_right_inequality_and_klee(nm, cfg=None):
    return _finish(nm, "klee", suite_klee(nm, cfg or CheckConfig()), cfg)


def check_commutative_like(nm, cfg=None):
    return _finish(nm, "commutative-like", suite_commutative_like(nm, cfg or CheckConfig()), cfg)


def check_mazur_ulam(nm, f=None, cfg=None):
    return _finish(nm, "mazur-ulam", suite_mazur_ulam(nm, cfg or CheckConfig(), f=f), cfg)


def check_homogeneity_isotropy(nm, cfg=None):
    return _finish(nm, "homogeneity-isotropy", suite_homogeneity_isotropy(nm, cfg or CheckConfig()), cfg)


def _finish(nm, suite_name, run, cfg):
    cfg = cfg or CheckConfig()
    return CheckReport(
        suite=suite_name,
        model=nm.model.name,
        gyronorm=nm.norm_name,
        dim=nm.model.dim,
        seed=cfg.seed,
        samples=cfg.samples,
        atol=cfg.atol,
        rtol=cfg.rtol,
        skipped=run.skipped,
        properties=run.results,
    )
