"""Bloch-vector states, ensembles and the octahedron/sphere geometry."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from spinpmf.pauli import Matrix2, Vector3, mat_mul, pauli, pauli_dot, trace

BALL_TOL = 1e-12
STATE_TOL = 1e-12
DEFAULT_DOMAIN_TOL = 1e-9

VERTICES: tuple[Vector3, ...] = (
    (1.0, 0.0, 0.0),
    (-1.0, 0.0, 0.0),
    (0.0, 1.0, 0.0),
    (0.0, -1.0, 0.0),
    (0.0, 0.0, 1.0),
    (0.0, 0.0, -1.0),
)


class BlochOutOfBall(ValueError):
    """Raised when a Bloch vector with norm above 1 is turned into a state."""

    def __init__(self, p: BlochVector):
        self.p = p
        super().__init__(f"Bloch vector {tuple(p)} has norm {p.l2:.12g} > 1")


@dataclass(frozen=True)
class BlochVector:
    """A real 3-vector. May lie outside the unit ball (for geometry queries)."""

    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        for name in ("p1", "p2", "p3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"non-finite Bloch component {name}={v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def of(cls, p: BlochVector | Sequence[float]) -> BlochVector:
        if isinstance(p, BlochVector):
            return p
        p1, p2, p3 = p
        return cls(p1, p2, p3)

    def __iter__(self) -> Iterator[float]:
        return iter((self.p1, self.p2, self.p3))

    def __getitem__(self, k: int) -> float:
        return (self.p1, self.p2, self.p3)[k]

    def as_tuple(self) -> Vector3:
        return (self.p1, self.p2, self.p3)

    @property
    def l1(self) -> float:
        return abs(self.p1) + abs(self.p2) + abs(self.p3)

    @property
    def l2(self) -> float:
        return math.sqrt(self.p1**2 + self.p2**2 + self.p3**2)

    def in_ball(self, tol: float = BALL_TOL) -> bool:
        return self.l2 <= 1 + tol


def _require_ball(p: BlochVector) -> None:
    if not p.in_ball(BALL_TOL):
        raise BlochOutOfBall(p)


@dataclass(frozen=True)
class DensityMatrix2:
    """Hermitian, unit-trace, positive semidefinite 2x2 matrix."""

    m: Matrix2

    def __post_init__(self):
        m = self.m
        if not m.is_hermitian(STATE_TOL):
            raise ValueError("density matrix is not Hermitian")
        if abs(trace(m) - 1) > STATE_TOL:
            raise ValueError(f"density matrix trace {trace(m)} != 1")
        # trace and determinant suffice for PSD in the 2x2 Hermitian case
        if m.det().real < -STATE_TOL or m.a.real < -STATE_TOL or m.d.real < -STATE_TOL:
            raise ValueError("density matrix is not positive semidefinite")


@dataclass(frozen=True)
class PureState:
    """a|1/2> + b|-1/2>."""

    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1) > STATE_TOL:
            raise ValueError(f"amplitudes not normalized: |a|^2+|b|^2 = {abs(a)**2 + abs(b)**2}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def projector(self) -> Matrix2:
        a, b = self.a, self.b
        return Matrix2(a * a.conjugate(), a * b.conjugate(), b * a.conjugate(), b * b.conjugate())


@dataclass(frozen=True)
class Ensemble:
    """Weighted mixture of pure states; weights are the fractions N_k / N."""

    members: tuple[tuple[float, PureState], ...]

    def __post_init__(self):
        members = tuple((float(w), s) for w, s in self.members)
        if not members:
            raise ValueError("ensemble has no members")
        if any(w < 0 or w > 1 for w, _ in members):
            raise ValueError("ensemble weights must lie in [0, 1]")
        total = math.fsum(w for w, _ in members)
        if abs(total - 1) > STATE_TOL:
            raise ValueError(f"ensemble weights sum to {total}, not 1")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_counts(cls, counts: Sequence[tuple[int, PureState]]) -> Ensemble:
        n = sum(c for c, _ in counts)
        return cls(tuple((c / n, s) for c, s in counts))


class DomainClass(enum.Enum):
    OUTSIDE_SPHERE = "OUTSIDE_SPHERE"
    IN_SPHERE_OUTSIDE_OCTAHEDRON = "IN_SPHERE_OUTSIDE_OCTAHEDRON"
    OCTAHEDRON_INTERIOR = "OCTAHEDRON_INTERIOR"
    OCTAHEDRON_BOUNDARY = "OCTAHEDRON_BOUNDARY"
    VERTEX_PURE = "VERTEX_PURE"


def density_from_bloch(p: BlochVector | Sequence[float]) -> DensityMatrix2:
    """rho = (I + p.sigma) / 2."""
    p = BlochVector.of(p)
    _require_ball(p)
    return DensityMatrix2((Matrix2.identity() + pauli_dot(p.as_tuple())) * 0.5)


def bloch_from_density(rho: DensityMatrix2) -> BlochVector:
    """p_k = Re Tr(rho sigma_k)."""
    return BlochVector(*(trace(mat_mul(rho.m, pauli(k))).real for k in (1, 2, 3)))


def density_from_ensemble(e: Ensemble) -> DensityMatrix2:
    m = Matrix2.zero()
    for w, state in e.members:
        m = m + state.projector() * w
    return DensityMatrix2(m)


def purity(rho: DensityMatrix2) -> float:
    """Tr(rho^2); equals (1 + |p|^2) / 2."""
    return trace(mat_mul(rho.m, rho.m)).real


def spin_expectation(rho: DensityMatrix2) -> Vector3:
    """E_QM(S) = Tr(rho sigma) / 2 = p / 2."""
    return tuple(0.5 * trace(mat_mul(rho.m, pauli(k))).real for k in (1, 2, 3))


def octahedron_condition(p: BlochVector | Sequence[float]) -> bool:
    """True iff |+-p1 +- p2 +- p3| <= 1 for every choice of signs."""
    p1, p2, p3 = BlochVector.of(p)
    return all(
        abs(s1 * p1 + s2 * p2 + s3 * p3) <= 1
        for s1, s2, s3 in itertools.product((-1, 1), repeat=3)
    )


def classify_domain(p: BlochVector | Sequence[float], tol: float = DEFAULT_DOMAIN_TOL) -> DomainClass:
    """Place p relative to the unit sphere and the inscribed octahedron.

    Order of tests: outside sphere, vertex, octahedron face, interior, rest.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    p = BlochVector.of(p)
    if p.l2 > 1 + tol:
        return DomainClass.OUTSIDE_SPHERE
    if any(math.dist(p.as_tuple(), v) <= tol for v in VERTICES):
        return DomainClass.VERTEX_PURE
    l1 = p.l1
    if abs(l1 - 1) <= tol:
        return DomainClass.OCTAHEDRON_BOUNDARY
    if l1 < 1 - tol:
        return DomainClass.OCTAHEDRON_INTERIOR
    return DomainClass.IN_SPHERE_OUTSIDE_OCTAHEDRON


_DOMAIN_ORDER = tuple(DomainClass)


def classify_domain_array(points: np.ndarray, tol: float = DEFAULT_DOMAIN_TOL) -> np.ndarray:
    """Vectorized ``classify_domain`` over an (..., 3) array.

    Returns integer codes indexing ``tuple(DomainClass)``.
    """
    pts = np.asarray(points, dtype=float)
    l1 = np.abs(pts).sum(axis=-1)
    l2 = np.sqrt((pts**2).sum(axis=-1))
    verts = np.array(VERTICES)
    dist = np.sqrt(((pts[..., None, :] - verts) ** 2).sum(axis=-1)).min(axis=-1)

    code = np.full(l1.shape, _DOMAIN_ORDER.index(DomainClass.IN_SPHERE_OUTSIDE_OCTAHEDRON))
    code = np.where(l1 < 1 - tol, _DOMAIN_ORDER.index(DomainClass.OCTAHEDRON_INTERIOR), code)
    code = np.where(np.abs(l1 - 1) <= tol, _DOMAIN_ORDER.index(DomainClass.OCTAHEDRON_BOUNDARY), code)
    code = np.where(dist <= tol, _DOMAIN_ORDER.index(DomainClass.VERTEX_PURE), code)
    code = np.where(l2 > 1 + tol, _DOMAIN_ORDER.index(DomainClass.OUTSIDE_SPHERE), code)
    return code


def domain_from_code(code: int) -> DomainClass:
    return _DOMAIN_ORDER[int(code)]
