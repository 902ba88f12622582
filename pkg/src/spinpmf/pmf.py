"""The trivariate mass function on {-1,+1}^3 generated by a Bloch vector.

Masses are stored in lexicographic order of (x1, x2, x3) with -1 < +1, so
index ``4*(x1>0) + 2*(x2>0) + (x3>0)`` addresses outcome (x1, x2, x3).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from spinpmf.bloch import BlochOutOfBall, BlochVector, octahedron_condition

Outcome = tuple[int, int, int]
OUTCOMES: tuple[Outcome, ...] = tuple(itertools.product((-1, 1), repeat=3))
OUTCOME_ARRAY = np.array(OUTCOMES, dtype=float)

NORM_TOL = 1e-12
NEG_SLACK = 1e-15
# L1 overshoot tolerated when building a PMF, matching the 1e-12 ball slack
OCTAHEDRON_SLACK = 1e-12
DEFAULT_INDEPENDENCE_TOL = 1e-10

CharFn = Callable[[np.ndarray], np.ndarray]


def outcome_index(x: Sequence[int]) -> int:
    x1, x2, x3 = x
    return 4 * (x1 > 0) + 2 * (x2 > 0) + (x3 > 0)


class DomainViolation(ValueError):
    """The Bloch vector lies outside the octahedron; some would-be mass is negative."""

    def __init__(self, p: BlochVector, outcome: Outcome, mass: float):
        self.p = p
        self.outcome = outcome
        self.mass = mass
        super().__init__(
            f"Bloch vector {p.as_tuple()} is outside the octahedron: "
            f"mass {mass:.12g} at outcome {outcome}"
        )


def _check_normalized(masses: tuple[float, ...]) -> None:
    if len(masses) != 8:
        raise ValueError(f"expected 8 masses, got {len(masses)}")
    total = math.fsum(masses)
    if abs(total - 1) > NORM_TOL:
        raise ValueError(f"masses sum to {total!r}, not 1")


@dataclass(frozen=True)
class QuasiMassFunction:
    """Eight real, possibly negative, masses summing to one."""

    masses: tuple[float, ...]
    source_bloch: BlochVector | None = None

    def __post_init__(self):
        masses = tuple(float(m) for m in self.masses)
        _check_normalized(masses)
        object.__setattr__(self, "masses", masses)

    def __getitem__(self, x: Sequence[int]) -> float:
        return self.masses[outcome_index(x)]

    def items(self) -> list[tuple[Outcome, float]]:
        return list(zip(OUTCOMES, self.masses))

    def most_negative(self) -> tuple[Outcome, float]:
        i = min(range(8), key=self.masses.__getitem__)
        return OUTCOMES[i], self.masses[i]


@dataclass(frozen=True)
class SpinPMF:
    """A genuine probability mass function on {-1,+1}^3."""

    masses: tuple[float, ...]
    source_bloch: BlochVector | None = None

    def __post_init__(self):
        masses = tuple(float(m) for m in self.masses)
        _check_normalized(masses)
        if min(masses) < -NEG_SLACK:
            raise ValueError(f"negative mass {min(masses)!r} in SpinPMF")
        object.__setattr__(self, "masses", masses)

    def __getitem__(self, x: Sequence[int]) -> float:
        return self.masses[outcome_index(x)]

    def items(self) -> list[tuple[Outcome, float]]:
        return list(zip(OUTCOMES, self.masses))


@dataclass(frozen=True)
class Moments:
    first: tuple[float, float, float]
    # E[X1 X2], E[X1 X3], E[X2 X3]
    second_cross: tuple[float, float, float]
    third: float


def _formula_masses(p: BlochVector) -> tuple[float, ...]:
    return tuple((1 + x1 * p.p1 + x2 * p.p2 + x3 * p.p3) / 8 for x1, x2, x3 in OUTCOMES)


def quasi_from_bloch(p: BlochVector | Sequence[float]) -> QuasiMassFunction:
    """(1 + x.p) / 8 on all eight outcomes, whatever its sign."""
    p = BlochVector.of(p)
    if not p.in_ball():
        raise BlochOutOfBall(p)
    return QuasiMassFunction(_formula_masses(p), p)


def pmf_from_bloch(p: BlochVector | Sequence[float]) -> SpinPMF:
    """The genuine PMF for p in the octahedron |p1|+|p2|+|p3| <= 1.

    The octahedron lies inside the ball, so the ball check never fires for a
    point that passed the octahedron test; both are kept anyway. Points with
    L1 up to 1 + 1e-12 are accepted and their would-be negative masses (at most
    1.25e-13 in magnitude) clipped to zero.
    """
    p = BlochVector.of(p)
    if not p.in_ball():
        raise BlochOutOfBall(p)
    masses = _formula_masses(p)
    if not octahedron_condition(p) and p.l1 > 1 + OCTAHEDRON_SLACK:
        i = min(range(8), key=masses.__getitem__)
        raise DomainViolation(p, OUTCOMES[i], masses[i])
    masses = tuple(max(m, 0.0) for m in masses)
    total = math.fsum(masses)
    return SpinPMF(tuple(m / total for m in masses), p)


def moments(pmf: SpinPMF | QuasiMassFunction) -> Moments:
    """Moments by summing over the eight outcomes."""
    items = pmf.items()
    first = tuple(math.fsum(m * x[k] for x, m in items) for k in range(3))
    second = tuple(
        math.fsum(m * x[j] * x[k] for x, m in items) for j, k in ((0, 1), (0, 2), (1, 2))
    )
    third = math.fsum(m * x[0] * x[1] * x[2] for x, m in items)
    return Moments(first, second, third)


def marginal(pmf: SpinPMF | QuasiMassFunction, k: int) -> tuple[float, float]:
    """(P(X_k = +1), P(X_k = -1)) for k in {1, 2, 3}."""
    if k not in (1, 2, 3):
        raise IndexError(f"variable index must be 1, 2 or 3, got {k!r}")
    plus = math.fsum(m for x, m in pmf.items() if x[k - 1] == 1)
    minus = math.fsum(m for x, m in pmf.items() if x[k - 1] == -1)
    return plus, minus


def _pair_marginal(pmf, j: int, k: int) -> dict[tuple[int, int], float]:
    out: dict[tuple[int, int], float] = {}
    for x, m in pmf.items():
        key = (x[j], x[k])
        out[key] = out.get(key, 0.0) + m
    return out


@dataclass(frozen=True)
class IndependenceReport:
    fully_independent: bool
    # keyed (1, 2), (1, 3), (2, 3)
    pairwise: dict[tuple[int, int], bool]
    witness: Outcome | None
    witness_joint: float | None = None
    witness_product: float | None = None


PAIRS = ((1, 2), (1, 3), (2, 3))


def independence_report(
    pmf: SpinPMF, tol: float = DEFAULT_INDEPENDENCE_TOL
) -> IndependenceReport:
    """Check mutual and pairwise factorization of the joint masses."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    marg = {k: dict(zip((1, -1), marginal(pmf, k))) for k in (1, 2, 3)}

    witness = joint = product = None
    for x, m in pmf.items():
        prod = marg[1][x[0]] * marg[2][x[1]] * marg[3][x[2]]
        if abs(m - prod) > tol:
            witness, joint, product = x, m, prod
            break

    pairwise = {}
    for j, k in PAIRS:
        pm = _pair_marginal(pmf, j - 1, k - 1)
        pairwise[(j, k)] = all(
            abs(pm[(a, b)] - marg[j][a] * marg[k][b]) <= tol for a in (1, -1) for b in (1, -1)
        )
    return IndependenceReport(witness is None, pairwise, witness, joint, product)


# subsets S of {1,2,3} as index tuples, and the probe point t_S with
# t_k = pi/2 for k in S and 0 otherwise
_SUBSETS = tuple(s for r in range(4) for s in itertools.combinations(range(3), r))


def _probe(subset: tuple[int, ...]) -> np.ndarray:
    t = np.zeros(3)
    t[list(subset)] = np.pi / 2
    return t


def invert_cf_to_pmf(cf: CharFn) -> QuasiMassFunction:
    """Recover the eight masses from a characteristic function of ±1 variables.

    For x = ±1, exp(i x pi/2) = i x exactly. Hence at t_S,
    cf(t_S) = E[prod_{k in S} (i X_k)] = i^|S| m_S with m_S = E[prod_{k in S} X_k],
    so m_S = cf(t_S) / i^|S|. The masses follow from the Walsh expansion
    P(x) = (1/8) sum_S m_S prod_{k in S} x_k. Only the real part of m_S is
    kept; for a genuine (or quasi) distribution the imaginary part is round-off.
    """
    m = {}
    for s in _SUBSETS:
        value = complex(np.asarray(cf(_probe(s))))
        m[s] = (value / (1j ** len(s))).real
    masses = []
    for x in OUTCOMES:
        masses.append(math.fsum(m[s] * math.prod(x[k] for k in s) for s in _SUBSETS) / 8)
    return QuasiMassFunction(tuple(masses))
