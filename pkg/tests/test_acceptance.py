"""Exit criteria, each at its stated tolerance and size.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""

import math
import time

import numpy as np

from spinpmf.bloch import density_from_bloch, spin_expectation
from spinpmf.charfn import (
    BochnerSearchConfig,
    bochner_search,
    cf_handle,
    mh_cf_closed,
    mh_cf_oracle,
    wigner_weyl_cf,
    wigner_weyl_cf_matrix,
)
from spinpmf.cli import main
from spinpmf.pmf import independence_report, invert_cf_to_pmf, moments, pmf_from_bloch, quasi_from_bloch
from spinpmf.sampling import empirical_cf, estimate_bloch, sample
from spinpmf.scan import ScanSpec, volume_fraction
from spinpmf.verify import independence_design, random_ball, random_octahedron

SEED = 2026


def _rng(k):
    return np.random.default_rng([SEED, k])


def test_01_oracle_equivalence(criterion):
    rng = _rng(1)
    ps = random_ball(rng, 10_000)
    ts = rng.uniform(-2 * math.pi, 2 * math.pi, size=(10_000, 3))
    start = time.perf_counter()
    worst = max(abs(mh_cf_oracle(p, t).value - mh_cf_closed(p, t).value) for p, t in zip(ps, ts))
    elapsed = time.perf_counter() - start
    ok = criterion(
        "1 oracle equivalence", worst < 1e-12 and elapsed < 10,
        f"max |oracle - closed| = {worst:.3g} (< 1e-12) over 1e4 draws in {elapsed:.1f}s",
    )
    assert ok


def test_02_wigner_weyl_vs_matrix_exponential(criterion):
    rng = _rng(2)
    ps = random_ball(rng, 10_000)
    ts = rng.uniform(-2 * math.pi, 2 * math.pi, size=(10_000, 3))
    start = time.perf_counter()
    worst = max(
        abs(wigner_weyl_cf(p, t).value - wigner_weyl_cf_matrix(p, t, series=True)) for p, t in zip(ps, ts)
    )
    elapsed = time.perf_counter() - start
    ok = criterion(
        "2 Wigner-Weyl closed form vs Tr(rho expm)", worst < 1e-10 and elapsed < 10,
        f"max diff = {worst:.3g} (< 1e-10) over 1e4 draws in {elapsed:.1f}s",
    )
    assert ok


def test_03_positivity_iff_octahedron(criterion):
    wrong = 0
    for p in random_ball(_rng(3), 10_000):
        nonneg = min(quasi_from_bloch(p).masses) >= -1e-14
        wrong += nonneg != (abs(p[0]) + abs(p[1]) + abs(p[2]) <= 1 + 1e-14)
    assert criterion("3 positivity <=> octahedron", wrong == 0, f"{wrong} misclassified of 1e4")


def test_04_expectation_correspondence(criterion):
    worst = 0.0
    for p in random_octahedron(_rng(4), 10_000):
        first = moments(pmf_from_bloch(p)).first
        quantum = spin_expectation(density_from_bloch(p))
        worst = max(worst, *(abs(first[k] / 2 - quantum[k]) for k in range(3)))
    assert criterion("4 expectation correspondence", worst <= 1e-13, f"max |E[X]/2 - Tr(rho S)| = {worst:.3g} (<= 1e-13)")


def test_05_inversion_round_trip(criterion):
    ps = np.vstack([random_ball(_rng(5), 1_000), [(0.5, 0.5, 0.5)]])
    worst = 0.0
    outside = 0
    for p in ps:
        got = np.array(invert_cf_to_pmf(cf_handle("MARGENAU_HILL", p)).masses)
        want = np.array(quasi_from_bloch(p).masses)
        worst = max(worst, float(np.max(np.abs(got - want))))
        outside += want.min() < 0
    witness = invert_cf_to_pmf(cf_handle("MARGENAU_HILL", (0.5, 0.5, 0.5)))[(-1, -1, -1)]
    ok = criterion(
        "5 inversion round trip", worst < 1e-12 and abs(witness + 0.0625) < 1e-12 and outside > 0,
        f"max error {worst:.3g} (< 1e-12) over {len(ps)} p ({outside} outside octahedron); "
        f"mass at (-1,-1,-1) for (0.5,0.5,0.5) = {witness:.12g}",
    )
    assert ok


def test_06_independence_characterization(criterion):
    rng = _rng(6)
    random_pts = random_octahedron(rng, 10_000)
    random_pts = np.where(rng.random(size=random_pts.shape) < 0.4, 0.0, random_pts)
    points = [np.array(p, dtype=float) for p in independence_design()] + list(random_pts)
    wrong = 0
    for p in points:
        expected = int(np.sum(np.abs(p) < 1e-10)) >= 2
        wrong += independence_report(pmf_from_bloch(p), 1e-10).fully_independent != expected
    ok = criterion(
        "6 independence characterization", wrong == 0,
        f"{wrong} misclassified of {len(points)} (designed set + 1e4 random)",
    )
    assert ok


def test_07_bochner_witness(criterion):
    start = time.perf_counter()
    witness = bochner_search(cf_handle("MARGENAU_HILL", (0.5, 0.5, 0.5)), BochnerSearchConfig(restarts=10_000, seed=SEED))
    floor = math.inf
    for i, p in enumerate(random_octahedron(_rng(7), 100)):
        found = bochner_search(cf_handle("MARGENAU_HILL", p), BochnerSearchConfig(restarts=1_000, seed=SEED + i))
        floor = min(floor, found.min_eigenvalue)
    elapsed = time.perf_counter() - start
    ok = criterion(
        "7 Bochner witness",
        witness.min_eigenvalue < -1e-6 and floor >= -1e-10 and elapsed < 60,
        f"witness eigenvalue {witness.min_eigenvalue:.6g} (< -1e-6) with {len(witness.points)} points; "
        f"in-octahedron floor {floor:.3g} (>= -1e-10) over 100 x 1e3 sets; {elapsed:.1f}s",
    )
    assert ok


def test_08_volume_ratio(criterion):
    start = time.perf_counter()
    fraction = volume_fraction(ScanSpec(resolution=201))
    elapsed = time.perf_counter() - start
    ok = criterion(
        "8 octahedron/ball volume ratio", abs(fraction - 1 / math.pi) < 0.01 and elapsed < 120,
        f"fraction {fraction:.5f} vs 1/pi = {1 / math.pi:.5f} at 201^3 in {elapsed:.1f}s",
    )
    assert ok


PROBES = np.array(
    [[0.1 * k, -0.07 * k + 0.3, 0.05 * k * (-1) ** k] for k in range(1, 21)]
)


def test_09_sampling_consistency(criterion):
    p = (0.3, 0.1, -0.2)
    n = 1_000_000
    batch = sample(pmf_from_bloch(p), n, seed=SEED)
    est = estimate_bloch(batch)
    p_err = max(abs(est.p_hat[k] - p[k]) for k in range(3))
    cf_err = max(abs(empirical_cf(batch, t) - mh_cf_closed(p, t).value) for t in PROBES)
    ok = criterion(
        "9 sampling consistency", p_err < 4 / math.sqrt(n) and cf_err < 0.005,
        f"max |p_hat - p| = {p_err:.3g} (< {4 / math.sqrt(n):.3g}); max empirical cf error {cf_err:.3g} (< 0.005) at 20 probes",
    )
    assert ok


def test_10_determinism(criterion, tmp_path, capsys):
    def twice(*argv):
        outs = []
        for i in range(2):
            path = tmp_path / f"{argv[0]}-{i}.out"
            code = main([*argv, "--out", str(path)])
            assert code == 0
            outs.append(path.read_bytes())
        capsys.readouterr()
        return outs[0] == outs[1] and len(outs[0]) > 0

    same_verify = twice("verify", "--seed", "99")
    same_scan = twice("scan", "--resolution", "41")
    same_sample = twice("sample", "0.2", "-0.3", "0.1", "--n", "100000", "--seed", "7")
    ok = criterion(
        "10 determinism", same_verify and same_scan and same_sample,
        f"byte-identical reruns: verify={same_verify} scan={same_scan} sample={same_sample}",
    )
    assert ok
