"""Cross-module property suites, shared by ``spinpmf verify`` and the tests.

Every suite is deterministic given ``VerifyConfig.seed``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from spinpmf.bloch import density_from_bloch, spin_expectation
from spinpmf.charfn import (
    BochnerSearchConfig,
    bochner_search,
    cf_handle,
    mh_cf_closed,
    mh_cf_oracle,
    pmf_fourier,
    wigner_weyl_cf,
    wigner_weyl_cf_matrix,
)
from spinpmf.pmf import independence_report, invert_cf_to_pmf, moments, pmf_from_bloch, quasi_from_bloch

WITNESS_BLOCH = (0.5, 0.5, 0.5)


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    draws: int = 10_000
    inversion_draws: int = 1_000
    bochner_restarts: int = 10_000
    bochner_states: int = 100
    bochner_sets_per_state: int = 1_000
    oracle_tol: float = 1e-12
    wigner_tol: float = 1e-10
    positivity_slack: float = 1e-14
    expectation_tol: float = 1e-13
    inversion_tol: float = 1e-12
    fourier_tol: float = 1e-12
    independence_tol: float = 1e-10
    bochner_witness_below: float = -1e-6
    bochner_psd_floor: float = -1e-10


@dataclass
class SuiteResult:
    name: str
    max_error: float
    tolerance: float
    passed: bool
    detail: str = ""
    failing_case: dict | None = field(default=None)


def random_ball(rng: np.random.Generator, n: int) -> np.ndarray:
    """n points uniform in the closed unit ball."""
    v = rng.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * rng.uniform(0, 1, size=(n, 1)) ** (1 / 3)


def random_octahedron(rng: np.random.Generator, n: int) -> np.ndarray:
    """n points uniform in |p1|+|p2|+|p3| <= 1."""
    e = rng.exponential(size=(n, 4))
    simplex = e[:, :3] / e.sum(axis=1, keepdims=True)
    return simplex * rng.choice((-1.0, 1.0), size=(n, 3))


def _rng(cfg: VerifyConfig, suite: str) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, sum(map(ord, suite))])


def suite_oracle(cfg: VerifyConfig) -> SuiteResult:
    rng = _rng(cfg, "oracle")
    ps = random_ball(rng, cfg.draws)
    ts = rng.uniform(-2 * math.pi, 2 * math.pi, size=(cfg.draws, 3))
    worst, case = 0.0, None
    for p, t in zip(ps, ts):
        err = abs(mh_cf_oracle(p, t).value - mh_cf_closed(p, t).value)
        if err > worst:
            worst, case = err, {"p": p.tolist(), "t": t.tolist()}
    return SuiteResult("oracle", worst, cfg.oracle_tol, worst < cfg.oracle_tol, "max |mh - mh_oracle|", case)


def suite_wigner(cfg: VerifyConfig) -> SuiteResult:
    rng = _rng(cfg, "wigner")
    ps = random_ball(rng, cfg.draws)
    ts = rng.uniform(-2 * math.pi, 2 * math.pi, size=(cfg.draws, 3))
    worst, case = 0.0, None
    for p, t in zip(ps, ts):
        err = abs(wigner_weyl_cf(p, t).value - wigner_weyl_cf_matrix(p, t, series=True))
        if err > worst:
            worst, case = err, {"p": p.tolist(), "t": t.tolist()}
    return SuiteResult(
        "wigner", worst, cfg.wigner_tol, worst < cfg.wigner_tol, "max |ww - Tr(rho expm)|", case
    )


def suite_positivity(cfg: VerifyConfig) -> SuiteResult:
    rng = _rng(cfg, "positivity")
    bad = 0
    case = None
    for p in random_ball(rng, cfg.draws):
        q = quasi_from_bloch(p)
        nonneg = min(q.masses) >= -cfg.positivity_slack
        in_oct = np.abs(p).sum() <= 1 + cfg.positivity_slack
        if nonneg != in_oct:
            bad += 1
            case = case or {"p": p.tolist(), "min_mass": min(q.masses)}
    return SuiteResult("positivity", bad, 0, bad == 0, "misclassified points", case)


def suite_expectation(cfg: VerifyConfig) -> SuiteResult:
    rng = _rng(cfg, "expectation")
    worst, case = 0.0, None
    for p in random_octahedron(rng, cfg.draws):
        first = moments(pmf_from_bloch(p)).first
        quantum = spin_expectation(density_from_bloch(p))
        err = max(abs(first[k] / 2 - quantum[k]) for k in range(3))
        if err > worst:
            worst, case = err, {"p": p.tolist()}
    return SuiteResult(
        "expectation", worst, cfg.expectation_tol, worst < cfg.expectation_tol, "max |E[X]/2 - Tr(rho S)|", case
    )


def suite_inversion(cfg: VerifyConfig) -> SuiteResult:
    rng = _rng(cfg, "inversion")
    ps = np.vstack([random_ball(rng, cfg.inversion_draws), [WITNESS_BLOCH]])
    worst, case = 0.0, None
    for p in ps:
        got = invert_cf_to_pmf(cf_handle("MARGENAU_HILL", p)).masses
        want = quasi_from_bloch(p).masses
        err = max(abs(a - b) for a, b in zip(got, want))
        if err > worst:
            worst, case = err, {"p": p.tolist()}
    witness_mass = invert_cf_to_pmf(cf_handle("MARGENAU_HILL", WITNESS_BLOCH))[(-1, -1, -1)]
    return SuiteResult(
        "inversion",
        worst,
        cfg.inversion_tol,
        worst < cfg.inversion_tol,
        f"max |invert(mh) - quasi|; mass at (-1,-1,-1) for p=(0.5,0.5,0.5): {witness_mass:.12g}",
        case,
    )


def suite_fourier(cfg: VerifyConfig) -> SuiteResult:
    rng = _rng(cfg, "fourier")
    ps = random_octahedron(rng, cfg.draws)
    ts = rng.uniform(-2 * math.pi, 2 * math.pi, size=(cfg.draws, 3))
    worst, case = 0.0, None
    for p, t in zip(ps, ts):
        err = abs(pmf_fourier(pmf_from_bloch(p), t).value - mh_cf_closed(p, t).value)
        if err > worst:
            worst, case = err, {"p": p.tolist(), "t": t.tolist()}
    return SuiteResult("fourier", worst, cfg.fourier_tol, worst < cfg.fourier_tol, "max |pmf_fourier - mh|", case)


def independence_design() -> list[tuple[float, float, float]]:
    """Axis points, coordinate-plane points and generic points."""
    axes = [(a, 0.0, 0.0) for a in (1.0, -0.7, 0.3)]
    axes += [(0.0, a, 0.0) for a in (0.5, -1.0)] + [(0.0, 0.0, a) for a in (0.9, -0.2)]
    axes += [(0.0, 0.0, 0.0)]
    planes = [(0.3, 0.3, 0.0), (0.5, 0.0, -0.4), (0.0, -0.2, 0.6), (0.1, 0.0, 0.1)]
    generic = [(0.2, 0.3, 0.4), (-0.1, 0.5, -0.3), (0.33, -0.33, 0.33), (1e-3, 1e-3, 1e-3)]
    return axes + planes + generic


def suite_independence(cfg: VerifyConfig) -> SuiteResult:
    rng = _rng(cfg, "independence")
    ps = random_octahedron(rng, cfg.draws)
    # zero out components at random so every zero pattern is exercised
    mask = rng.random(size=ps.shape) < 0.4
    ps = np.where(mask, 0.0, ps)
    points = [np.array(p) for p in independence_design()] + list(ps)
    bad, case = 0, None
    for p in points:
        report = independence_report(pmf_from_bloch(p), cfg.independence_tol)
        expected = int(np.sum(np.abs(p) < cfg.independence_tol)) >= 2
        pair_ok = all(
            report.pairwise[(j, k)] == (abs(p[j - 1] * p[k - 1]) / 4 <= cfg.independence_tol)
            for j, k in report.pairwise
        )
        if report.fully_independent != expected or not pair_ok:
            bad += 1
            case = case or {"p": p.tolist()}
    return SuiteResult("independence", bad, 0, bad == 0, f"misclassified of {len(points)}", case)


def suite_bochner(cfg: VerifyConfig) -> SuiteResult:
    witness = bochner_search(
        cf_handle("MARGENAU_HILL", WITNESS_BLOCH),
        BochnerSearchConfig(restarts=cfg.bochner_restarts, seed=cfg.seed),
    )
    rng = _rng(cfg, "bochner")
    floor, case = math.inf, None
    for i, p in enumerate(random_octahedron(rng, cfg.bochner_states)):
        found = bochner_search(
            cf_handle("MARGENAU_HILL", p),
            BochnerSearchConfig(restarts=cfg.bochner_sets_per_state, seed=cfg.seed * 1_000_003 + i),
        )
        if found.min_eigenvalue < floor:
            floor, case = found.min_eigenvalue, {"p": p.tolist(), "points": found.points.tolist()}
    passed = witness.min_eigenvalue < cfg.bochner_witness_below and floor >= cfg.bochner_psd_floor
    detail = (
        f"witness min eigenvalue {witness.min_eigenvalue:.12g} for p=(0.5,0.5,0.5) "
        f"with {len(witness.points)} points; in-octahedron floor {floor:.12g}"
    )
    failing = None
    if witness.min_eigenvalue >= cfg.bochner_witness_below:
        failing = {"p": list(WITNESS_BLOCH)}
    elif floor < cfg.bochner_psd_floor:
        failing = case
    return SuiteResult("bochner", witness.min_eigenvalue, cfg.bochner_witness_below, passed, detail, failing)


SUITES: dict[str, Callable[[VerifyConfig], SuiteResult]] = {
    "oracle": suite_oracle,
    "wigner": suite_wigner,
    "positivity": suite_positivity,
    "expectation": suite_expectation,
    "inversion": suite_inversion,
    "fourier": suite_fourier,
    "independence": suite_independence,
    "bochner": suite_bochner,
}

# the CLI default keeps the Bochner in-octahedron sweep short
QUICK = VerifyConfig(bochner_restarts=2_000, bochner_states=20, bochner_sets_per_state=200)


def run(names: list[str] | None = None, cfg: VerifyConfig = QUICK) -> list[SuiteResult]:
    return [SUITES[name](cfg) for name in (names or list(SUITES))]


def with_overrides(cfg: VerifyConfig, **overrides) -> VerifyConfig:
    return replace(cfg, **overrides)
