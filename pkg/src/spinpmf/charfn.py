"""Quantum characteristic functions of a spin-1/2 state.

Two correspondence rules are implemented:

* Wigner-Weyl, ``Tr(rho exp(i t.sigma))``, in closed form.
* Margenau-Hill, the average over the six orderings of
  ``exp(i sigma_a t_a) exp(i sigma_b t_b) exp(i sigma_c t_c)`` traced against
  rho. ``mh_cf_oracle`` multiplies the matrices out; ``mh_cf_closed`` is the
  simplified trigonometric form.

Array variants (``*_array``) take points of shape (..., 3) and are what the
characteristic-function handles used by the Bochner probe evaluate.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from spinpmf.bloch import BlochOutOfBall, BlochVector, density_from_bloch
from spinpmf.pauli import (
    Matrix2,
    mat_exp_i,
    mat_exp_i_series,
    mat_mul,
    pauli_dot,
    pauli_exp,
    sinc,
    trace,
)
from spinpmf.pmf import OUTCOME_ARRAY, SpinPMF

CharFn = Callable[[np.ndarray], np.ndarray]


class CharFnKind(enum.Enum):
    WIGNER_WEYL = "WIGNER_WEYL"
    MARGENAU_HILL = "MARGENAU_HILL"
    MH_ORACLE = "MH_ORACLE"
    PMF_FOURIER = "PMF_FOURIER"


@dataclass(frozen=True)
class ProbePoint:
    t1: float
    t2: float
    t3: float

    def __post_init__(self):
        for name in ("t1", "t2", "t3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"non-finite probe coordinate {name}={v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def of(cls, t: ProbePoint | Sequence[float]) -> ProbePoint:
        if isinstance(t, ProbePoint):
            return t
        t1, t2, t3 = t
        return cls(t1, t2, t3)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.t1, self.t2, self.t3)

    def __neg__(self) -> ProbePoint:
        return ProbePoint(-self.t1, -self.t2, -self.t3)


@dataclass(frozen=True)
class CharFnValue:
    value: complex
    point: ProbePoint
    kind: CharFnKind

    def __complex__(self) -> complex:
        return self.value


def _state(p) -> BlochVector:
    p = BlochVector.of(p)
    if not p.in_ball():
        raise BlochOutOfBall(p)
    return p


def wigner_weyl_cf(p, t) -> CharFnValue:
    """cos|t| + i <p, t> sin|t| / |t|."""
    p, t = _state(p), ProbePoint.of(t)
    tv = t.as_tuple()
    r = math.sqrt(tv[0] ** 2 + tv[1] ** 2 + tv[2] ** 2)
    pt = p.p1 * tv[0] + p.p2 * tv[1] + p.p3 * tv[2]
    return CharFnValue(complex(math.cos(r), pt * sinc(r)), t, CharFnKind.WIGNER_WEYL)


def wigner_weyl_cf_matrix(p, t, *, series: bool = False) -> complex:
    """Tr(rho exp(i t.sigma)) through the matrix exponential.

    With ``series=True`` the exponential is taken by scaling and squaring
    instead of the closed form inside ``mat_exp_i``.
    """
    p, t = _state(p), ProbePoint.of(t)
    h = pauli_dot(t.as_tuple())
    u = mat_exp_i_series(h) if series else mat_exp_i(h)
    return trace(mat_mul(density_from_bloch(p).m, u))


def mh_cf_oracle(p, t) -> CharFnValue:
    """(1/3!) Tr(rho sum_{abc} exp(i s_a t_a) exp(i s_b t_b) exp(i s_c t_c)).

    Brute force: all six ordered products are formed explicitly.
    """
    p, t = _state(p), ProbePoint.of(t)
    tv = t.as_tuple()
    total = Matrix2.zero()
    for a, b, c in itertools.permutations((1, 2, 3)):
        lam = mat_mul(
            mat_mul(pauli_exp(a, tv[a - 1]), pauli_exp(b, tv[b - 1])), pauli_exp(c, tv[c - 1])
        )
        total = total + lam
    rho = density_from_bloch(p).m
    value = trace(mat_mul(rho, total)) / 6
    return CharFnValue(value, t, CharFnKind.MH_ORACLE)


def mh_cf_closed(p, t) -> CharFnValue:
    p, t = _state(p), ProbePoint.of(t)
    c1, c2, c3 = (math.cos(x) for x in t.as_tuple())
    s1, s2, s3 = (math.sin(x) for x in t.as_tuple())
    value = complex(c1 * c2 * c3, p.p1 * s1 * c2 * c3 + p.p2 * c1 * s2 * c3 + p.p3 * c1 * c2 * s3)
    return CharFnValue(value, t, CharFnKind.MARGENAU_HILL)


def pmf_fourier(pmf: SpinPMF, t) -> CharFnValue:
    """E[exp(i t.X)] as an explicit sum over the eight outcomes."""
    t = ProbePoint.of(t)
    value = pmf_fourier_array(pmf.masses, np.array(t.as_tuple()))
    return CharFnValue(complex(value), t, CharFnKind.PMF_FOURIER)


# vectorized evaluation


def wigner_weyl_array(p, t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    r = np.linalg.norm(t, axis=-1)
    safe = np.where(r < 1e-12, 1.0, r)
    s = np.where(r < 1e-12, 1.0, np.sin(r) / safe)
    return np.cos(r) + 1j * (t @ np.asarray(tuple(p), dtype=float)) * s


def mh_array(p, t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    c, s = np.cos(t), np.sin(t)
    c1, c2, c3 = c[..., 0], c[..., 1], c[..., 2]
    s1, s2, s3 = s[..., 0], s[..., 1], s[..., 2]
    p1, p2, p3 = (float(x) for x in p)
    return c1 * c2 * c3 + 1j * (p1 * s1 * c2 * c3 + p2 * c1 * s2 * c3 + p3 * c1 * c2 * s3)


def pmf_fourier_array(masses: Sequence[float], t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    phases = np.exp(1j * (t @ OUTCOME_ARRAY.T))
    return phases @ np.asarray(masses, dtype=float)


def cf_handle(kind: CharFnKind | str, source) -> CharFn:
    """An evaluation callable over (..., 3) arrays with the state captured.

    ``source`` is a Bloch vector for the quantum kinds and a mass function
    (anything with ``.masses``) for PMF_FOURIER.
    """
    kind = CharFnKind(kind)
    if kind is CharFnKind.PMF_FOURIER:
        masses = tuple(source.masses)
        return lambda t: pmf_fourier_array(masses, t)
    p = _state(source)
    if kind is CharFnKind.WIGNER_WEYL:
        return lambda t: wigner_weyl_array(p, t)
    if kind is CharFnKind.MARGENAU_HILL:
        return lambda t: mh_array(p, t)

    def oracle(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        flat = t.reshape(-1, 3)
        out = np.array([mh_cf_oracle(p, tuple(row)).value for row in flat], dtype=complex)
        return out.reshape(t.shape[:-1])

    return oracle


# Bochner positive-definiteness probe


@dataclass(frozen=True)
class GramResult:
    gram: np.ndarray
    min_eigenvalue: float


def bochner_gram(cf: CharFn, points) -> GramResult:
    """Gram matrix G_jk = cf(t_j - t_k) and its smallest eigenvalue.

    A characteristic function makes every such G positive semidefinite, so a
    negative eigenvalue certifies that no probability distribution has cf as
    its Fourier transform.
    """
    pts = np.array([ProbePoint.of(q).as_tuple() for q in points], dtype=float)
    if len(pts) < 2:
        raise ValueError("need at least two probe points")
    g = np.asarray(cf(pts[:, None, :] - pts[None, :, :]), dtype=complex)
    g = 0.5 * (g + g.conj().T)
    return GramResult(g, float(np.linalg.eigvalsh(g)[0]))


@dataclass(frozen=True)
class BochnerSearchConfig:
    restarts: int = 10_000
    min_points: int = 3
    max_points: int = 8
    grid: tuple[float, ...] = (0.0, np.pi / 2, -np.pi / 2, np.pi, -np.pi)
    jitter: float = 0.05
    seed: int = 0


@dataclass(frozen=True)
class BochnerWitness:
    min_eigenvalue: float
    points: np.ndarray = field(repr=False)
    restart: int


def _restart_points(cfg: BochnerSearchConfig, r: int) -> np.ndarray:
    rng = np.random.default_rng((cfg.seed, r))
    n = int(rng.integers(cfg.min_points, cfg.max_points + 1))
    base = rng.choice(np.asarray(cfg.grid), size=(n, 3))
    return base + rng.uniform(-cfg.jitter, cfg.jitter, size=(n, 3))


def bochner_search(cf: CharFn, cfg: BochnerSearchConfig = BochnerSearchConfig()) -> BochnerWitness:
    """Random search for the point set with the most negative Gram eigenvalue.

    Each restart draws its own generator from (seed, restart index), so the
    result does not depend on how restarts are batched.
    """
    by_size: dict[int, list[tuple[int, np.ndarray]]] = {}
    for r in range(cfg.restarts):
        pts = _restart_points(cfg, r)
        by_size.setdefault(len(pts), []).append((r, pts))

    best = BochnerWitness(math.inf, np.empty((0, 3)), -1)
    for n in sorted(by_size):
        idx = np.array([r for r, _ in by_size[n]])
        batch = np.stack([pts for _, pts in by_size[n]])
        g = np.asarray(cf(batch[:, :, None, :] - batch[:, None, :, :]), dtype=complex)
        g = 0.5 * (g + np.conj(np.swapaxes(g, -1, -2)))
        eig = np.linalg.eigvalsh(g)[:, 0]
        j = int(np.argmin(eig))
        if eig[j] < best.min_eigenvalue or (
            eig[j] == best.min_eigenvalue and idx[j] < best.restart
        ):
            best = BochnerWitness(float(eig[j]), batch[j], int(idx[j]))
    return best
